#include "flexswim/shapes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace flexswim {

namespace {

// Native graph shape -> head-frame state.
ShapeState graph_state(std::span<const double> x, std::span<const double> y,
                       std::span<const double> y_rate) {
  const ShapeCurve native = curve_from_graph(x, y);
  std::vector<Vec2> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = Vec2(0.0, y_rate[i]);
  HeadFrameShape aligned = align_to_head(native, u);
  return {std::move(aligned.curve), std::move(aligned.velocity), aligned.frame_angle};
}

std::vector<double> uniform_grid(std::size_t n) {
  if (n < 3) throw std::invalid_argument("graph grid needs at least 3 samples");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return x;
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": cannot parse number '" +
                                std::string(text) + "'");
  }
  return v;
}

}  // namespace

void BumpParams::validate() const {
  if (!(c1 >= 0.0) || !(c2 > 0.0) || !(c3 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c3)) {
    throw std::invalid_argument("bump parameters need c1 >= 0, c2 > 0, c3 >= 0");
  }
}

double bump(double x, double t, const BumpParams& p) {
  const double z = x - p.c3 * t;
  if (!(std::abs(z) < 1.0)) return 0.0;
  const double d = 1.0 - z * z;
  return p.c1 * std::exp(-p.c2 / d);
}

double bump_velocity(double x, double t, const BumpParams& p) {
  const double psi = bump(x, t, p);
  if (psi == 0.0) return 0.0;
  const double z = x - p.c3 * t;
  const double d = 1.0 - z * z;
  // d/dt of -c2 / (1 - z^2) with dz/dt = -c3
  return psi * (2.0 * p.c2 * p.c3 * z) / (d * d);
}

ShapeProgram bump_program(const BumpParams& p, std::size_t grid) {
  p.validate();
  auto x = uniform_grid(grid);
  return [p, x = std::move(x)](double t) {
    std::vector<double> y(x.size());
    std::vector<double> y_rate(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = bump(x[i], t, p);
      y_rate[i] = bump_velocity(x[i], t, p);
    }
    return graph_state(x, y, y_rate);
  };
}

void PurcellShape::validate() const {
  for (double a : {alpha1, alpha2}) {
    if (!(std::abs(a) < std::numbers::pi)) {
      throw std::invalid_argument("joint angle " + std::to_string(a) + " outside (-pi, pi)");
    }
  }
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw std::invalid_argument("link fractions must be positive");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("link fractions must sum to 1");
}

namespace {

std::array<Vec2, 4> purcell_vertices(const PurcellShape& shape) {
  const auto& l = shape.fractions;
  const double a12 = shape.alpha1 + shape.alpha2;
  std::array<Vec2, 4> v;
  v[0] = Vec2::Zero();
  v[1] = Vec2(l[0], 0.0);
  v[2] = v[1] + l[1] * Vec2(std::cos(shape.alpha1), std::sin(shape.alpha1));
  v[3] = v[2] + l[2] * Vec2(std::cos(a12), std::sin(a12));
  return v;
}

}  // namespace

ShapeCurve purcell_curve(const PurcellShape& shape) {
  shape.validate();
  const auto v = purcell_vertices(shape);
  return polyline_curve(v, shape.fractions);
}

std::vector<Vec2> purcell_velocity(const PurcellShape& shape, double rate1, double rate2) {
  shape.validate();
  const auto v = purcell_vertices(shape);
  // joint 1 spins links 2 and 3 about v1; joint 2 spins link 3 about v2
  return {Vec2::Zero(), Vec2::Zero(), rate1 * perp(v[2] - v[1]),
          rate1 * perp(v[3] - v[1]) + rate2 * perp(v[3] - v[2])};
}

AnglePath AnglePath::constant(double value) {
  return {[value](double) { return value; }, [](double) { return 0.0; }};
}

AnglePath AnglePath::sinusoid(double offset, double amplitude, double frequency, double phase) {
  const double w = 2.0 * std::numbers::pi * frequency;
  return {[=](double t) { return offset + amplitude * std::sin(w * t + phase); },
          [=](double t) { return amplitude * w * std::cos(w * t + phase); }};
}

ShapeProgram purcell_program(AnglePath alpha1, AnglePath alpha2, std::array<double, 3> fractions) {
  return [alpha1 = std::move(alpha1), alpha2 = std::move(alpha2), fractions](double t) {
    const PurcellShape shape{alpha1.angle(t), alpha2.angle(t), fractions};
    return ShapeState{purcell_curve(shape),
                      purcell_velocity(shape, alpha1.rate(t), alpha2.rate(t)), 0.0};
  };
}

ShapeProgram purcell_square_stroke(double a1, double a2, double side, double period,
                                   bool clockwise) {
  if (!(period > 0.0)) throw std::invalid_argument("stroke period must be positive");
  std::array<Vec2, 5> corners{Vec2(a1, a2), Vec2(a1 + side, a2), Vec2(a1 + side, a2 + side),
                              Vec2(a1, a2 + side), Vec2(a1, a2)};
  if (clockwise) std::swap(corners[1], corners[3]);
  auto locate = [corners, period](double t) {
    const double leg = period / 4.0;
    const double u = std::clamp(t / leg, 0.0, 4.0);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(u), 3);
    const double w = u - static_cast<double>(k);
    const Vec2 dir = corners[k + 1] - corners[k];
    return std::pair<Vec2, Vec2>{corners[k] + w * dir, dir / leg};
  };
  AnglePath p1{[locate](double t) { return locate(t).first.x(); },
               [locate](double t) { return locate(t).second.x(); }};
  AnglePath p2{[locate](double t) { return locate(t).first.y(); },
               [locate](double t) { return locate(t).second.y(); }};
  return purcell_program(std::move(p1), std::move(p2));
}

GraphTable load_graph_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open shape table '" + path + "'");
  GraphTable table;
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> frame_x;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty() || line == "\r") continue;
    std::array<double, 3> vals{};
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t comma = k < 2 ? line.find(',', start) : line.size();
      if (comma == std::string::npos) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected t,x,y");
      }
      vals[k] = parse_double(std::string_view(line).substr(start, comma - start), lineno);
      start = comma + 1;
    }
    const auto [t, x, y] = vals;
    if (table.times.empty() || t != table.times.back()) {
      if (!table.times.empty() && !(t > table.times.back())) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": frame times must increase");
      }
      if (table.times.size() == 1) table.x = frame_x;
      if (table.times.size() > 1 && frame_x != table.x) {
        throw std::invalid_argument("frames of '" + path + "' do not share an x grid");
      }
      table.times.push_back(t);
      table.y.emplace_back();
      frame_x.clear();
    }
    frame_x.push_back(x);
    table.y.back().push_back(y);
  }
  if (table.times.size() < 2) throw std::invalid_argument("shape table needs at least two frames");
  if (frame_x != table.x) throw std::invalid_argument("frames of '" + path + "' do not share an x grid");
  return table;
}

ShapeProgram tabulated_program(GraphTable table) {
  if (table.times.size() < 2) throw std::invalid_argument("shape table needs at least two frames");
  for (const auto& frame : table.y) {
    if (frame.size() != table.x.size()) throw std::invalid_argument("ragged shape table");
  }
  // validates the grid once up front
  curve_from_graph(table.x, table.y.front());
  return [table = std::move(table)](double t) {
    const auto& ts = table.times;
    if (t < ts.front() - 1e-12 || t > ts.back() + 1e-12) {
      throw std::invalid_argument("time " + std::to_string(t) + " outside the shape table");
    }
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t k = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
    k = std::min(k, ts.size() - 2);
    const double span = ts[k + 1] - ts[k];
    const double w = std::clamp((t - ts[k]) / span, 0.0, 1.0);
    std::vector<double> y(table.x.size());
    std::vector<double> rate(table.x.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = (1.0 - w) * table.y[k][i] + w * table.y[k + 1][i];
      rate[i] = (table.y[k + 1][i] - table.y[k][i]) / span;
    }
    return graph_state(table.x, y, rate);
  };
}

}  // namespace flexswim
