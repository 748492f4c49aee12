#include "flexswim/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace flexswim {

namespace {

constexpr double kUnitTolerance = 1e-12;

Vec2 normalized(const Vec2& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite tangent");
  }
  return v / n;
}

// Weights of the derivative at `at` of the quadratic through (a, b, c); second order on any grid.
std::array<double, 3> derivative_weights(double a, double b, double c, double at) {
  return {(2.0 * at - b - c) / ((a - b) * (a - c)), (2.0 * at - a - c) / ((b - a) * (b - c)),
          (2.0 * at - a - b) / ((c - a) * (c - b))};
}

// Derivative stencil at sample i of n: centred inside, one-sided at the ends.
std::size_t stencil_start(std::size_t i, std::size_t n) {
  if (i == 0) return 0;
  if (i + 1 == n) return n - 3;
  return i - 1;
}

}  // namespace

double ModelParams::c() const { return 1.0 / std::log(h); }

void ModelParams::validate() const {
  if (!(h > 0.0 && h < 1.0)) {
    throw std::invalid_argument("slenderness h must lie in (0, 1), got " + std::to_string(h));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("head length delta must lie in (0, 1), got " + std::to_string(delta));
  }
  if (!std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite");
  }
  if (order != 1 && order != 2) {
    throw std::invalid_argument("order must be 1 or 2, got " + std::to_string(order));
  }
  if (n_quad < 8) {
    throw std::invalid_argument("n_quad must be at least 8, got " + std::to_string(n_quad));
  }
}

ShapeCurve::ShapeCurve(std::vector<CurveSample> samples, CurveKind kind)
    : samples_(std::move(samples)), kind_(kind) {
  if (samples_.size() < 2) {
    throw std::invalid_argument("a shape curve needs at least two samples");
  }
  if (samples_.front().s != 0.0 || samples_.back().s != 1.0) {
    throw std::invalid_argument("material coordinate must run from exactly 0 to exactly 1");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& smp = samples_[i];
    if (i > 0 && !(smp.s > samples_[i - 1].s)) {
      throw std::invalid_argument("material coordinate must be strictly increasing (sample " +
                                  std::to_string(i) + ")");
    }
    if (!smp.r.allFinite() || !smp.t_hat.allFinite()) {
      throw std::invalid_argument("non-finite curve sample " + std::to_string(i));
    }
    if (std::abs(smp.t_hat.norm() - 1.0) > kUnitTolerance) {
      throw std::invalid_argument("tangent at sample " + std::to_string(i) + " is not unit length");
    }
  }
  if (samples_.front().r.norm() > kUnitTolerance) {
    throw std::invalid_argument("head tip r(0) must be the frame origin");
  }
}

std::vector<double> ShapeCurve::kinks() const {
  std::vector<double> out;
  if (kind_ == CurveKind::polyline) {
    for (std::size_t i = 1; i + 1 < samples_.size(); ++i) out.push_back(samples_[i].s);
  }
  return out;
}

std::size_t ShapeCurve::interval(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("material coordinate " + std::to_string(s) + " outside [0, 1]");
  }
  auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                             [](double v, const CurveSample& smp) { return v < smp.s; });
  // it points past the last sample with s_i <= s
  auto idx = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, samples_.size() - 2);
}

ShapeCurve curve_from_graph(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("graph abscissae and ordinates differ in length");
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw std::invalid_argument("a graph curve needs at least three samples");
  }
  if (x.front() != 0.0 || x.back() != 1.0) {
    throw std::invalid_argument("graph abscissae must run from 0 to 1");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x[i] > x[i - 1])) {
      throw std::invalid_argument("graph abscissae must be strictly increasing");
    }
  }

  std::vector<CurveSample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = stencil_start(i, n);
    const auto w = derivative_weights(x[k], x[k + 1], x[k + 2], x[i]);
    const double slope = w[0] * y[k] + w[1] * y[k + 1] + w[2] * y[k + 2];
    samples[i] = {x[i], Vec2(x[i], y[i] - y[0]), normalized(Vec2(1.0, slope))};
  }
  return ShapeCurve(std::move(samples), CurveKind::smooth);
}

ShapeCurve polyline_curve(std::span<const Vec2> vertices, std::span<const double> fractions) {
  if (vertices.size() < 2 || fractions.size() + 1 != vertices.size()) {
    throw std::invalid_argument("polyline needs n+1 vertices for n segment fractions");
  }
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw std::invalid_argument("segment fractions must be positive");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("segment fractions must sum to 1");
  }

  double length = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) length += (vertices[i + 1] - vertices[i]).norm();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const double seg = (vertices[i + 1] - vertices[i]).norm();
    if (!(seg > 0.0)) throw std::invalid_argument("zero-length polyline segment");
    if (std::abs(seg / length - fractions[i]) > 1e-9) {
      throw std::invalid_argument("segment " + std::to_string(i) +
                                  " length does not match its arc-length fraction");
    }
  }

  std::vector<CurveSample> samples;
  samples.reserve(vertices.size());
  const Vec2 origin = vertices.front();
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    // incoming segment tangent at interior vertices, outgoing at the head
    const std::size_t seg = i == 0 ? 0 : i - 1;
    const Vec2 d = vertices[seg + 1] - vertices[seg];
    if (i > 0) s += fractions[i - 1];
    samples.push_back({i + 1 == vertices.size() ? 1.0 : s, vertices[i] - origin, d.normalized()});
  }
  return ShapeCurve(std::move(samples), CurveKind::polyline);
}

CurvePoint interpolate(const ShapeCurve& curve, double s) {
  const auto& smp = curve.samples();
  const std::size_t i = curve.interval(s);
  const auto& a = smp[i];
  const auto& b = smp[i + 1];
  if (s == a.s) return {a.r, a.t_hat};
  if (s == b.s) return {b.r, b.t_hat};
  const double w = (s - a.s) / (b.s - a.s);
  const Vec2 r = (1.0 - w) * a.r + w * b.r;
  if (curve.kind() == CurveKind::polyline) return {r, (b.r - a.r).normalized()};
  return {r, normalized((1.0 - w) * a.t_hat + w * b.t_hat)};
}

CurvePoint interpolate_from_above(const ShapeCurve& curve, double s) {
  CurvePoint p = interpolate(curve, s);
  if (curve.kind() != CurveKind::polyline || s >= 1.0) return p;
  const auto& smp = curve.samples();
  const std::size_t i = curve.interval(s);
  if (s == smp[i].s) p.t_hat = (smp[i + 1].r - smp[i].r).normalized();
  return p;
}

Vec2 interpolate_field(const ShapeCurve& curve, std::span<const Vec2> field, double s) {
  if (field.size() != curve.size()) {
    throw std::invalid_argument("field is not sampled on the curve's samples");
  }
  const auto& smp = curve.samples();
  const std::size_t i = curve.interval(s);
  if (s == smp[i].s) return field[i];
  if (s == smp[i + 1].s) return field[i + 1];
  const double w = (s - smp[i].s) / (smp[i + 1].s - smp[i].s);
  return (1.0 - w) * field[i] + w * field[i + 1];
}

ShapeCurve resample(const ShapeCurve& curve, std::size_t n) {
  if (n < 2) throw std::invalid_argument("resample needs at least two points");
  std::vector<CurveSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const CurvePoint p = interpolate(curve, s);
    out[i] = {s, p.r, p.t_hat};
  }
  return ShapeCurve(std::move(out), CurveKind::smooth);
}

Mat2 rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

HeadFrameShape align_to_head(const ShapeCurve& curve, std::span<const Vec2> velocity) {
  if (velocity.size() != curve.size()) {
    throw std::invalid_argument("velocity field is not sampled on the curve's samples");
  }
  const auto& smp = curve.samples();
  const Vec2 t0 = smp.front().t_hat;
  const double phi = std::atan2(t0.y(), t0.x());
  const Mat2 to_head = rotation(-phi);

  // Rotation rate of the head tangent, differentiated with the same stencil that
  // estimates tangents from samples (two-point when only two samples exist).
  Vec2 dr = smp[1].r - smp[0].r;
  Vec2 du = velocity[1] - velocity[0];
  if (smp.size() >= 3) {
    const auto w = derivative_weights(smp[0].s, smp[1].s, smp[2].s, smp[0].s);
    dr = w[0] * smp[0].r + w[1] * smp[1].r + w[2] * smp[2].r;
    du = w[0] * velocity[0] + w[1] * velocity[1] + w[2] * velocity[2];
  }
  const double phi_dot = cross2(dr, du) / dr.squaredNorm();
  const Vec2 u_tip = velocity[0];

  std::vector<CurveSample> rotated(smp.size());
  std::vector<Vec2> rel(smp.size());
  for (std::size_t i = 0; i < smp.size(); ++i) {
    const Vec2 r = smp[i].r - smp[0].r;
    rotated[i] = {smp[i].s, to_head * r, (to_head * smp[i].t_hat).normalized()};
    rel[i] = to_head * (velocity[i] - u_tip - phi_dot * perp(r));
  }
  rotated[0].t_hat = Vec2(1.0, 0.0);
  rotated[0].r = Vec2::Zero();
  rel[0] = Vec2::Zero();
  return {ShapeCurve(std::move(rotated), curve.kind()), std::move(rel), phi};
}

}  // namespace flexswim
