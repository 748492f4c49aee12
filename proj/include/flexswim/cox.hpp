#pragma once

#include <span>

#include <Eigen/Core>

#include "flexswim/geometry.hpp"

namespace flexswim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Planar force and moment about the head-frame origin.
struct Wrench2D {
  Vec2 f = Vec2::Zero();
  double m = 0.0;

  Vec3 stacked() const { return {f.x(), f.y(), m}; }
};

/// Local linear map from a body point's velocity to the fluid force density on it.
struct DragOperator {
  Mat2 L;

  Vec2 apply(const Vec2& u) const { return L * u; }
};

/// Slender-body drag operator for a segment with unit tangent `t_hat`:
///
///   L = 2 pi [ (-c - log2 c^2 g) (T - 2I) + beta c^2 g (3T - 2I) ],  T = t t^T,
///
/// with g = 1 at order 2 and 0 at order 1. For c < 0 the force opposes the motion.
DragOperator drag_operator(const Vec2& t_hat, const ModelParams& params);

/// Force and moment exerted on the body portion [s_begin, 1] by the prescribed
/// deformation velocity `u_star` (sampled on the curve's samples).
Wrench2D tail_wrench(const ShapeCurve& curve, std::span<const Vec2> u_star,
                     const ModelParams& params, double s_begin);

/// Same, integrating from the head/tail split at params.delta.
Wrench2D tail_wrench(const ShapeCurve& curve, std::span<const Vec2> u_star,
                     const ModelParams& params);

/// Resistance of the straight rigid head [0, delta] with unit tangent `t0`:
/// maps xi = (v0x, v0y, omega0) to the head's wrench. Rigid transport of a
/// point r is v0 + omega0 z x r.
Mat3 head_resistance(const Vec2& t0, const ModelParams& params);

/// Resistance of the whole curve [0, 1] moving rigidly with xi.
Mat3 full_resistance(const ShapeCurve& curve, const ModelParams& params);

}  // namespace flexswim
