#pragma once

#include <functional>
#include <vector>

#include "flexswim/geometry.hpp"
#include "flexswim/solver.hpp"

namespace flexswim {

/// Planar placement of the head frame in the world frame; theta in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  static Pose identity() { return {}; }
};

double wrap_angle(double theta);

/// Group product a * b (apply b in a's frame).
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& g);

/// exp of the twist `xi * dt` on SE(2).
Pose se2_exp(const BodyVelocity& xi, double dt);

/// (vx, vy, omega) such that se2_exp(log, 1) == g.
BodyVelocity se2_log(const Pose& g);

/// Left-invariant update g * exp(dt xi).
Pose step_pose(const Pose& g, const BodyVelocity& xi, double dt);

/// Applies g to every sample position of a head-frame curve.
std::vector<Vec2> reconstruct_world(const ShapeCurve& curve, const Pose& g);

/// Head-frame shape at one instant: curve plus deformation velocity on its samples.
struct ShapeState {
  ShapeCurve curve;
  std::vector<Vec2> velocity;
  /// Heading of the head tangent in the program's native frame:
  /// native = rotation(frame_angle) * head-frame position.
  double frame_angle = 0.0;
};

/// Time-indexed provider of head-frame shapes. Must be a pure function of t.
using ShapeProgram = std::function<ShapeState(double t)>;

/// Plays `program` backwards over [0, period]: shape(T - t) with negated velocity.
ShapeProgram time_reversed(ShapeProgram program, double period);

enum class Sampling {
  left,      ///< shape queried at the start of each step
  midpoint,  ///< shape queried at the middle of each step
};

struct SimulationOptions {
  double t_end = 15.0;
  double dt = 0.01;
  Coupling coupling = Coupling::paper;
  Sampling sampling = Sampling::left;
  Pose initial = Pose::identity();
  SolveOptions solve{};
};

struct TrajectorySample {
  double t;
  Pose pose;
  double theta_unwrapped;
  BodyVelocity xi;    ///< body velocity evaluated at t
  double residual;    ///< balance residual of the solve at t
};

struct Trajectory {
  double dt = 0.0;
  std::vector<TrajectorySample> samples;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// Number of whole steps covering [0, t_end]; throws if t_end / dt is not integral.
std::size_t step_count(double t_end, double dt);

/// Integrates the head pose from `options.initial` over [0, t_end] with a
/// piecewise-frozen exponential update. Solver failures are rethrown as
/// SimulationError carrying the step time.
Trajectory simulate(const ShapeProgram& program, const ModelParams& params,
                    const SimulationOptions& options);

}  // namespace flexswim
