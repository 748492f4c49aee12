#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace flexswim {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Model constants shared by the force law, quadrature and solver.
///
/// Lengths are fractions of the body length. `c` is derived from the
/// slenderness ratio and is negative for every admissible `h`.
struct ModelParams {
  double h = 0.01;      ///< slenderness ratio b/l, in (0, 1)
  double delta = 0.05;  ///< head length, in (0, 1)
  double beta = 0.5;    ///< coefficient of the c^2 (3T - 2I) correction
  int order = 2;        ///< 1: O(c) drag only, 2: adds the O(c^2) terms
  int n_quad = 100;     ///< Simpson panels per unit body length

  double c() const;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

enum class CurveKind {
  smooth,    ///< tangent blended between samples
  polyline,  ///< tangent constant on each sample interval
};

struct CurveSample {
  double s;
  Vec2 r;
  Vec2 t_hat;
};

struct CurvePoint {
  Vec2 r;
  Vec2 t_hat;
};

/// Discretized planar body curve expressed in the head frame.
///
/// Invariants (checked on construction): s strictly increasing from exactly
/// 0 to exactly 1, r(0) = 0, and every tangent has unit length.
class ShapeCurve {
public:
  explicit ShapeCurve(std::vector<CurveSample> samples, CurveKind kind = CurveKind::smooth);

  const std::vector<CurveSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  CurveKind kind() const { return kind_; }
  const Vec2& head_tangent() const { return samples_.front().t_hat; }

  /// Interior material coordinates where the tangent may jump (polyline vertices).
  std::vector<double> kinks() const;

  /// Index i of the interval [s_i, s_{i+1}] that contains s.
  std::size_t interval(double s) const;

private:
  std::vector<CurveSample> samples_;
  CurveKind kind_;
};

/// Graph y(x) over x in [0, 1], translated so the head tip sits at the origin.
/// Slopes come from three-point differences (centred inside, one-sided at the ends).
ShapeCurve curve_from_graph(std::span<const double> x, std::span<const double> y);

/// Piecewise-linear polyline through `vertices`; `fractions` are the segment
/// lengths as fractions of the total material length and must sum to 1.
ShapeCurve polyline_curve(std::span<const Vec2> vertices, std::span<const double> fractions);

CurvePoint interpolate(const ShapeCurve& curve, double s);

/// Like `interpolate`, but at a polyline vertex returns the outgoing segment's
/// tangent instead of the stored (incoming) one.
CurvePoint interpolate_from_above(const ShapeCurve& curve, double s);

/// Piecewise-linear interpolation of a field sampled at the curve's samples.
Vec2 interpolate_field(const ShapeCurve& curve, std::span<const Vec2> field, double s);

/// Resample on `n` uniformly spaced material coordinates using `interpolate`.
ShapeCurve resample(const ShapeCurve& curve, std::size_t n);

/// Curve and shape-velocity field re-expressed in the frame attached to the
/// head tip and aligned with the head tangent.
struct HeadFrameShape {
  ShapeCurve curve;
  std::vector<Vec2> velocity;
  double frame_angle;  ///< heading of the head tangent in the input frame
};

/// Moves the origin to the head tip and rotates so the head tangent is (1, 0).
///
/// The velocity field is made relative to the moving head frame: the head-tip
/// velocity and the rotation rate of the head tangent are removed, so the
/// result is a pure deformation velocity with u(0) = 0.
HeadFrameShape align_to_head(const ShapeCurve& curve, std::span<const Vec2> velocity);

Mat2 rotation(double angle);

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Counter-clockwise quarter turn: z x v.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

}  // namespace flexswim
