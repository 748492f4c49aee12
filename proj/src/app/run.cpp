#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "flexswim/app.hpp"

namespace flexswim::app {

using nlohmann::json;

namespace {

SimulationOptions simulation_options(const RunConfig& cfg) {
  SimulationOptions o;
  o.t_end = cfg.t_end;
  o.dt = cfg.dt;
  o.coupling = cfg.coupling;
  o.sampling = cfg.sampling;
  return o;
}

std::size_t nearest_step(const Trajectory& traj, double t) {
  const double k = std::round(t / traj.dt);
  return std::min(static_cast<std::size_t>(std::max(k, 0.0)), traj.samples.size() - 1);
}

}  // namespace

SimulationRun run_simulate(const RunConfig& cfg) {
  const ShapeProgram program = make_program(cfg);
  SimulationRun run;
  run.trajectory = simulate(program, cfg.model, simulation_options(cfg));
  const Trajectory& traj = run.trajectory;

  run.files["trajectory.csv"] = trajectory_csv(traj);
  for (double t : cfg.snapshots) {
    const auto& sample = traj.samples[nearest_step(traj, t)];
    run.files["shapes_" + format_short(t) + ".csv"] = snapshot_csv(program(sample.t), sample.pose);
  }
  run.files["plots.svg"] = plots_svg(traj);

  double max_residual = 0.0;
  for (const auto& s : traj.samples) max_residual = std::max(max_residual, s.residual);
  const auto& last = traj.back();
  json meta;
  meta["version"] = kVersion;
  meta["command"] = "simulate";
  meta["config"] = json::parse(config_json(cfg));
  meta["steps"] = traj.samples.size() - 1;
  meta["max_balance_residual"] = max_residual;
  meta["final_pose"] = {{"x", last.pose.x}, {"y", last.pose.y}, {"theta", last.pose.theta},
                        {"theta_unwrapped", last.theta_unwrapped}};
  run.files["run_meta.json"] = meta.dump(2) + "\n";
  return run;
}

Artifacts run_purcell_scan(const RunConfig& cfg) {
  const auto rows = controllability_report(cfg.scan.alpha1.values(), cfg.scan.alpha2.values(),
                                           cfg.model, cfg.scan.numerics);
  std::string csv = "alpha1,alpha2,rank_weak,rank_strong,weak,strong\n";
  std::size_t weak = 0, strong = 0, failed = 0;
  double min_gap = INFINITY;
  json failures = json::array();
  for (const auto& r : rows) {
    csv += format_number(r.alpha1) + "," + format_number(r.alpha2) + "," +
           std::to_string(r.rank_weak) + "," + std::to_string(r.rank_strong) + "," +
           (r.weak ? "true" : "false") + "," + (r.strong ? "true" : "false") + "\n";
    weak += r.weak;
    strong += r.strong;
    if (!r.error.empty()) {
      ++failed;
      failures.push_back({{"alpha1", r.alpha1}, {"alpha2", r.alpha2}, {"error", r.error}});
    } else {
      min_gap = std::min(min_gap, r.sigma3_strong);
    }
  }
  json summary;
  summary["version"] = kVersion;
  summary["points"] = rows.size();
  summary["weak"] = weak;
  summary["strong"] = strong;
  summary["failed"] = failed;
  summary["rank_tolerance"] = cfg.scan.numerics.rank_tolerance;
  summary["min_relative_sigma3_strong"] = std::isfinite(min_gap) ? json(min_gap) : json(nullptr);
  summary["failures"] = failures;
  return {{"rank_map.csv", csv}, {"summary.json", summary.dump(2) + "\n"}};
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"c1", "c2", "c3", "delta", "h", "beta", "dt", "t_end", "n_quad"};
  return names;
}

void apply_parameter(RunConfig& cfg, const std::string& name, double value) {
  const std::string where = "sweep." + name;
  if (name == "c1") {
    cfg.bump.c1 = value;
  } else if (name == "c2") {
    cfg.bump.c2 = value;
  } else if (name == "c3") {
    cfg.bump.c3 = value;
  } else if (name == "delta") {
    cfg.model.delta = value;
  } else if (name == "h") {
    cfg.model.h = value;
  } else if (name == "beta") {
    cfg.model.beta = value;
  } else if (name == "dt") {
    cfg.dt = value;
  } else if (name == "t_end") {
    cfg.t_end = value;
  } else if (name == "n_quad") {
    if (value != std::floor(value)) throw ConfigError(where, "n_quad must be an integer");
    cfg.model.n_quad = static_cast<int>(value);
  } else {
    throw ConfigError("sweep.param", "unknown sweep parameter '" + name + "'");
  }
  try {
    cfg.model.validate();
    cfg.bump.validate();
    step_count(cfg.t_end, cfg.dt);
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& name,
                            const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep.values", "no values to sweep");
  std::vector<SweepRow> rows;
  for (double v : values) {
    RunConfig c = cfg;
    apply_parameter(c, name, v);
    const Trajectory traj = simulate(make_program(c), c.model, simulation_options(c));
    const auto& a = traj.front();
    const auto& b = traj.back();
    rows.push_back({v, std::abs(b.pose.x - a.pose.x), std::abs(b.pose.y - a.pose.y),
                    b.theta_unwrapped - a.theta_unwrapped});
  }
  return rows;
}

Artifacts run_sweep(const RunConfig& cfg, const std::string& name, const std::vector<double>& values) {
  const auto rows = sweep(cfg, name, values);
  std::string csv = "value,net_abs_dx,net_abs_dy,net_dtheta\n";
  for (const auto& r : rows) {
    csv += format_number(r.value) + "," + format_number(r.net_abs_dx) + "," +
           format_number(r.net_abs_dy) + "," + format_number(r.net_dtheta) + "\n";
  }
  json meta;
  meta["version"] = kVersion;
  meta["command"] = "sweep";
  meta["param"] = name;
  meta["values"] = values;
  meta["config"] = json::parse(config_json(cfg));
  return {{"sweep.csv", csv}, {"run_meta.json", meta.dump(2) + "\n"}};
}

}  // namespace flexswim::app
