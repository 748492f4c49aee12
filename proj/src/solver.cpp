#include "flexswim/solver.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "flexswim/errors.hpp"

namespace flexswim {

namespace {

// Row-pivoted LU of a 3x3 matrix, stored compactly.
struct Lu3 {
  Mat3 lu;
  std::array<int, 3> perm{0, 1, 2};
  bool singular = false;

  explicit Lu3(const Mat3& a) : lu(a) {
    for (int k = 0; k < 3; ++k) {
      int p = k;
      for (int i = k + 1; i < 3; ++i) {
        if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
      }
      if (lu(p, k) == 0.0) {
        singular = true;
        return;
      }
      if (p != k) {
        lu.row(p).swap(lu.row(k));
        std::swap(perm[p], perm[k]);
      }
      for (int i = k + 1; i < 3; ++i) {
        lu(i, k) /= lu(k, k);
        for (int j = k + 1; j < 3; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
      }
    }
  }

  Vec3 solve(const Vec3& b) const {
    Vec3 y;
    for (int i = 0; i < 3; ++i) {
      double acc = b(perm[i]);
      for (int j = 0; j < i; ++j) acc -= lu(i, j) * y(j);
      y(i) = acc;
    }
    Vec3 x;
    for (int i = 2; i >= 0; --i) {
      double acc = y(i);
      for (int j = i + 1; j < 3; ++j) acc -= lu(i, j) * x(j);
      x(i) = acc / lu(i, i);
    }
    return x;
  }
};

double norm1(const Mat3& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

double condition_number(const Mat3& A) {
  if (!A.allFinite()) return std::numeric_limits<double>::infinity();
  const Lu3 lu(A);
  if (lu.singular) return std::numeric_limits<double>::infinity();
  Mat3 inv;
  for (int j = 0; j < 3; ++j) inv.col(j) = lu.solve(Vec3::Unit(j));
  return norm1(A) * norm1(inv);
}

BodyVelocity solve_head_velocity(const Mat3& A, const Wrench2D& tail, const SolveOptions& options) {
  const double cond = condition_number(A);
  if (!(cond <= options.max_condition)) {
    std::ostringstream msg;
    msg << "balance matrix is singular or ill-conditioned (condition estimate " << cond << ")";
    throw SingularSystemError(msg.str(), cond);
  }
  const Vec3 rhs = options.convention == BalanceConvention::cancel_tail ? Vec3(-tail.stacked())
                                                                        : tail.stacked();
  return BodyVelocity::from(Lu3(A).solve(rhs));
}

double balance_residual(const Mat3& A, const BodyVelocity& xi, const Wrench2D& tail,
                        BalanceConvention convention) {
  const double sign = convention == BalanceConvention::cancel_tail ? 1.0 : -1.0;
  return (A * xi.vec() + sign * tail.stacked()).cwiseAbs().maxCoeff();
}

BalanceSolution body_velocity(const ShapeCurve& curve, std::span<const Vec2> shape_velocity,
                              const ModelParams& params, Coupling coupling,
                              const SolveOptions& options) {
  Mat3 A;
  Wrench2D tail;
  if (coupling == Coupling::paper) {
    A = head_resistance(curve.head_tangent(), params);
    tail = tail_wrench(curve, shape_velocity, params, params.delta);
  } else {
    A = full_resistance(curve, params);
    tail = tail_wrench(curve, shape_velocity, params, 0.0);
  }
  const BodyVelocity xi = solve_head_velocity(A, tail, options);
  return {xi, balance_residual(A, xi, tail, options.convention)};
}

BodyVelocity purcell_body_velocity(const ShapeCurve& curve, std::span<const Vec2> shape_velocity,
                                   const ModelParams& params, const SolveOptions& options) {
  return body_velocity(curve, shape_velocity, params, Coupling::full, options).xi;
}

}  // namespace flexswim
