#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flexswim/controllability.hpp"
#include "flexswim/dynamics.hpp"
#include "flexswim/shapes.hpp"

namespace flexswim::app {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Bad or unreadable run configuration. `where` is "line L, column C" for
/// syntax errors and the dotted key path for semantic ones.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& where, const std::string& detail)
      : std::runtime_error(where.empty() ? detail : where + ": " + detail),
        where_(where),
        detail_(detail) {}
  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string where_;
  std::string detail_;
};

enum class ProgramKind { bump, purcell, tabulated };

struct SinusoidSpec {
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 0.0;  ///< Hz
  double phase = 0.0;      ///< radians
};

struct PurcellGait {
  SinusoidSpec alpha1{0.0, 0.8, 0.5, 0.0};
  SinusoidSpec alpha2{0.0, 0.8, 0.5, -1.5707963267948966};
  std::array<double, 3> fractions{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

struct GridAxis {
  double min = -2.5;
  double max = 2.5;
  int count = 21;

  std::vector<double> values() const;
};

struct ScanSpec {
  GridAxis alpha1{};
  GridAxis alpha2{};
  FiltrationOptions numerics{};
};

struct RunConfig {
  ModelParams model{};
  ProgramKind program = ProgramKind::bump;
  BumpParams bump{};
  int grid = 201;
  PurcellGait purcell{};
  std::string table_path;  ///< resolved against the config file's directory
  double t_end = 15.0;
  double dt = 0.01;
  Coupling coupling = Coupling::paper;
  Sampling sampling = Sampling::left;
  std::vector<double> snapshots{0.0, 3.0, 6.0, 9.0, 12.0, 15.0};
  ScanSpec scan{};
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::string output_dir = "out";
};

/// Parses the JSON config text (comments allowed). `base_dir` resolves relative file paths.
RunConfig parse_config(std::string_view text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

/// Echo of the fully resolved configuration in the config schema.
std::string config_json(const RunConfig& cfg);

ShapeProgram make_program(const RunConfig& cfg);

/// 17 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double v);

/// Shortest round-trip representation, used in file names.
std::string format_short(double v);

std::string trajectory_csv(const Trajectory& traj);
std::string snapshot_csv(const ShapeState& state, const Pose& pose);
std::string plots_svg(const Trajectory& traj);

/// File name -> contents, written together into one run directory.
using Artifacts = std::map<std::string, std::string>;

struct SimulationRun {
  Trajectory trajectory;
  Artifacts files;
};

SimulationRun run_simulate(const RunConfig& cfg);

Artifacts run_purcell_scan(const RunConfig& cfg);

struct SweepRow {
  double value;
  double net_abs_dx;
  double net_abs_dy;
  double net_dtheta;
};

/// Parameters a sweep may vary.
const std::vector<std::string>& sweep_parameters();

/// Sets one named parameter; throws ConfigError for unknown names.
void apply_parameter(RunConfig& cfg, const std::string& name, double value);

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& name,
                            const std::vector<double>& values);
Artifacts run_sweep(const RunConfig& cfg, const std::string& name, const std::vector<double>& values);

void write_artifacts(const std::string& dir, const Artifacts& files);

}  // namespace flexswim::app
