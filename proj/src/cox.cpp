#include "flexswim/cox.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flexswim/quadrature.hpp"

namespace flexswim {

namespace {

constexpr double kTangentTolerance = 1e-9;

void require_unit(const Vec2& t, const char* what) {
  if (!t.allFinite() || std::abs(t.norm() - 1.0) > kTangentTolerance) {
    throw std::invalid_argument(std::string(what) + " is not a unit vector");
  }
}

// Rigid transport r -> [I | z x r], so that the point velocity is K * xi.
Eigen::Matrix<double, 2, 3> transport(const Vec2& r) {
  Eigen::Matrix<double, 2, 3> k;
  k << 1.0, 0.0, -r.y(),
       0.0, 1.0, r.x();
  return k;
}

Mat3 rigid_integrand(const Vec2& r, const Vec2& t_hat, const ModelParams& params) {
  const auto k = transport(r);
  // force = L K xi ; moment = (z x r) . force, so the stacked wrench is K^T L K xi
  return k.transpose() * drag_operator(t_hat, params).L * k;
}

}  // namespace

DragOperator drag_operator(const Vec2& t_hat, const ModelParams& params) {
  require_unit(t_hat, "tangent");
  const double c = params.c();
  const double g2 = params.order == 2 ? 1.0 : 0.0;
  const Mat2 T = t_hat * t_hat.transpose();
  const Mat2 I = Mat2::Identity();
  const double lead = -c - std::numbers::ln2 * c * c * g2;
  const double corr = params.beta * c * c * g2;
  return {2.0 * std::numbers::pi * (lead * (T - 2.0 * I) + corr * (3.0 * T - 2.0 * I))};
}

Wrench2D tail_wrench(const ShapeCurve& curve, std::span<const Vec2> u_star,
                     const ModelParams& params, double s_begin) {
  if (u_star.size() != curve.size()) {
    throw std::invalid_argument("shape velocity has " + std::to_string(u_star.size()) +
                                " samples, curve has " + std::to_string(curve.size()));
  }
  if (!(s_begin >= 0.0 && s_begin < 1.0)) {
    throw std::invalid_argument("tail must start inside [0, 1)");
  }
  if (panels_for(1.0 - s_begin, params.n_quad) < 2) {
    throw std::invalid_argument("tail quadrature needs at least two panels");
  }
  auto integrand = [&](double s, double lo) -> Vec3 {
    const CurvePoint p = s == lo ? interpolate_from_above(curve, s) : interpolate(curve, s);
    const Vec2 f = drag_operator(p.t_hat, params).apply(interpolate_field(curve, u_star, s));
    return {f.x(), f.y(), cross2(p.r, f)};
  };
  const Vec3 w = simpson_piecewise(integrand, s_begin, 1.0, curve.kinks(), params.n_quad);
  return {w.head<2>(), w.z()};
}

Wrench2D tail_wrench(const ShapeCurve& curve, std::span<const Vec2> u_star,
                     const ModelParams& params) {
  return tail_wrench(curve, u_star, params, params.delta);
}

Mat3 head_resistance(const Vec2& t0, const ModelParams& params) {
  require_unit(t0, "head tangent");
  if (!(params.delta > 0.0)) {
    throw std::invalid_argument("head length must be positive");
  }
  auto integrand = [&](double s) -> Mat3 { return rigid_integrand(s * t0, t0, params); };
  return simpson(integrand, 0.0, params.delta, panels_for(params.delta, params.n_quad));
}

Mat3 full_resistance(const ShapeCurve& curve, const ModelParams& params) {
  auto integrand = [&](double s, double lo) -> Mat3 {
    const CurvePoint p = s == lo ? interpolate_from_above(curve, s) : interpolate(curve, s);
    return rigid_integrand(p.r, p.t_hat, params);
  };
  return simpson_piecewise(integrand, 0.0, 1.0, curve.kinks(), params.n_quad);
}

}  // namespace flexswim
