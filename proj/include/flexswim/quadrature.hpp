#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace flexswim {

/// Composite Simpson rule with `panels` panels (2 * panels subintervals).
///
/// `Value` is anything closed under + and scalar *, e.g. double or a fixed-size
/// Eigen type. Nodes are a + (b - a) * k / (2 * panels).
template <class Func>
auto simpson(const Func& f, double a, double b, std::size_t panels) {
  if (panels == 0) throw std::invalid_argument("simpson: need at least one panel");
  const std::size_t n = 2 * panels;
  const double width = b - a;
  const double h = width / static_cast<double>(n);
  auto node = [&](std::size_t k) {
    return k == n ? b : a + width * (static_cast<double>(k) / static_cast<double>(n));
  };
  using Value = std::decay_t<decltype(f(a))>;
  Value odd = f(node(1));
  for (std::size_t k = 3; k < n; k += 2) odd += f(node(k));
  Value even = f(a) * 0.0;
  for (std::size_t k = 2; k < n; k += 2) even += f(node(k));
  Value total = f(a) + f(b);
  total += 4.0 * odd;
  total += 2.0 * even;
  return Value(total * (h / 3.0));
}

/// Panels allotted to an interval of length `length` at `per_unit` panels per unit length.
inline std::size_t panels_for(double length, int per_unit) {
  const double p = std::ceil(length * static_cast<double>(per_unit) - 1e-9);
  return p < 1.0 ? 1 : static_cast<std::size_t>(p);
}

/// Simpson over [a, b] split at `breaks` (ascending; those outside (a, b) are
/// ignored), so the integrand may jump or kink at the break points.
///
/// `f(s, lo)` is evaluated knowing the left end `lo` of the current piece, which
/// lets it take one-sided limits at a break.
template <class Func>
auto simpson_piecewise(const Func& f, double a, double b, const std::vector<double>& breaks,
                       int per_unit) {
  using Value = std::decay_t<decltype(f(a, a))>;
  double lo = a;
  Value total = f(a, a) * 0.0;
  auto piece = [&](double from, double to) {
    total += simpson([&](double s) { return f(s, from); }, from, to, panels_for(to - from, per_unit));
  };
  for (double br : breaks) {
    if (br <= lo || br >= b) continue;
    piece(lo, br);
    lo = br;
  }
  piece(lo, b);
  return total;
}

}  // namespace flexswim
