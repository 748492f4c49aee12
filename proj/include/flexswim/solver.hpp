#pragma once

#include <span>

#include "flexswim/cox.hpp"
#include "flexswim/geometry.hpp"

namespace flexswim {

/// Head-frame rigid velocity of the head tip, an element of se(2).
struct BodyVelocity {
  double v0x = 0.0;
  double v0y = 0.0;
  double omega0 = 0.0;

  Vec3 vec() const { return {v0x, v0y, omega0}; }
  static BodyVelocity from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

/// Which body portion supplies the rigid drag that balances the deformation wrench.
enum class Coupling {
  paper,  ///< straight head [0, delta] against the tail's deformation wrench
  full,   ///< whole body moves rigidly; deformation wrench from all of [0, 1]
};

enum class BalanceConvention {
  cancel_tail,  ///< A xi + W = 0 (net wrench vanishes)
  equal_tail,   ///< A xi = W, taken literally from the matrix form
};

struct SolveOptions {
  double max_condition = 1e12;
  BalanceConvention convention = BalanceConvention::cancel_tail;
};

/// Solves the 3x3 balance for xi by partial-pivot elimination.
/// Throws SingularSystemError when the 1-norm condition exceeds the cap.
BodyVelocity solve_head_velocity(const Mat3& A, const Wrench2D& tail, const SolveOptions& options = {});

/// 1-norm condition number; +inf for an exactly singular matrix.
double condition_number(const Mat3& A);

/// Infinity norm of A xi + W (or A xi - W under `equal_tail`).
double balance_residual(const Mat3& A, const BodyVelocity& xi, const Wrench2D& tail,
                        BalanceConvention convention = BalanceConvention::cancel_tail);

struct BalanceSolution {
  BodyVelocity xi;
  double residual;
};

/// Assembles and solves the balance for a head-frame shape and deformation velocity.
BalanceSolution body_velocity(const ShapeCurve& curve, std::span<const Vec2> shape_velocity,
                              const ModelParams& params, Coupling coupling,
                              const SolveOptions& options = {});

/// Full-coupling solve used by the Purcell analysis:
/// full_resistance(curve) xi = -tail_wrench(curve, u, s_begin = 0).
BodyVelocity purcell_body_velocity(const ShapeCurve& curve, std::span<const Vec2> shape_velocity,
                                   const ModelParams& params, const SolveOptions& options = {});

}  // namespace flexswim
