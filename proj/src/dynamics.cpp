#include "flexswim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flexswim/errors.hpp"

namespace flexswim {

namespace {

constexpr double kSeriesThreshold = 1e-8;

// sin(phi)/phi and (1 - cos(phi))/phi; the latter as 2 sin^2(phi/2)/phi to avoid cancellation
std::pair<double, double> v_coefficients(double phi) {
  if (std::abs(phi) < kSeriesThreshold) return {1.0 - phi * phi / 6.0, phi / 2.0};
  const double half = std::sin(0.5 * phi);
  return {std::sin(phi) / phi, 2.0 * half * half / phi};
}

}  // namespace

double wrap_angle(double theta) {
  double a = std::remainder(theta, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

Pose compose(const Pose& a, const Pose& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return {a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, wrap_angle(a.theta + b.theta)};
}

Pose inverse(const Pose& g) {
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  return {-(c * g.x + s * g.y), s * g.x - c * g.y, wrap_angle(-g.theta)};
}

Pose se2_exp(const BodyVelocity& xi, double dt) {
  const double phi = xi.omega0 * dt;
  const auto [a, b] = v_coefficients(phi);
  const double vx = xi.v0x * dt;
  const double vy = xi.v0y * dt;
  return {a * vx - b * vy, b * vx + a * vy, wrap_angle(phi)};
}

BodyVelocity se2_log(const Pose& g) {
  const double phi = g.theta;
  const auto [a, b] = v_coefficients(phi);
  const double det = a * a + b * b;
  return {(a * g.x + b * g.y) / det, (-b * g.x + a * g.y) / det, phi};
}

Pose step_pose(const Pose& g, const BodyVelocity& xi, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!std::isfinite(g.x) || !std::isfinite(g.y) || !std::isfinite(g.theta) ||
      !xi.vec().allFinite()) {
    throw std::invalid_argument("non-finite pose or body velocity");
  }
  return compose(g, se2_exp(xi, dt));
}

std::vector<Vec2> reconstruct_world(const ShapeCurve& curve, const Pose& g) {
  const Mat2 R = rotation(g.theta);
  const Vec2 p(g.x, g.y);
  std::vector<Vec2> out;
  out.reserve(curve.size());
  for (const auto& smp : curve.samples()) out.push_back(p + R * smp.r);
  return out;
}

ShapeProgram time_reversed(ShapeProgram program, double period) {
  return [program = std::move(program), period](double t) {
    ShapeState state = program(period - t);
    for (auto& u : state.velocity) u = -u;
    return state;
  };
}

std::size_t step_count(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("t_end and dt must be positive");
  }
  const double ratio = t_end / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("t_end / dt must be a whole number of steps");
  }
  return static_cast<std::size_t>(n);
}

Trajectory simulate(const ShapeProgram& program, const ModelParams& params,
                    const SimulationOptions& options) {
  params.validate();
  const std::size_t n = step_count(options.t_end, options.dt);
  const double dt = options.dt;

  auto solve_at = [&](double t) {
    try {
      const ShapeState state = program(t);
      return body_velocity(state.curve, state.velocity, params, options.coupling, options.solve);
    } catch (const SimulationError&) {
      throw;
    } catch (const std::exception& e) {
      throw SimulationError("at t = " + std::to_string(t) + ": " + e.what(), t);
    }
  };

  Trajectory traj;
  traj.dt = dt;
  traj.samples.reserve(n + 1);
  Pose pose = options.initial;
  pose.theta = wrap_angle(pose.theta);
  double unwrapped = options.initial.theta;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const BalanceSolution sol = solve_at(t);
    traj.samples.push_back({t, pose, unwrapped, sol.xi, sol.residual});
    if (k == n) break;
    const BodyVelocity xi =
        options.sampling == Sampling::left ? sol.xi : solve_at(t + 0.5 * dt).xi;
    pose = step_pose(pose, xi, dt);
    unwrapped += xi.omega0 * dt;
  }
  return traj;
}

}  // namespace flexswim
