#pragma once

// Independent reference computations used only by the tests. Nothing here is
// shared with the library's assembly paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "flexswim/cox.hpp"
#include "flexswim/geometry.hpp"

namespace oracle {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

/// Portable uniform draws: std distributions are implementation-defined, the engine is not.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vector2d unit_vector() {
    const double a = uniform(-kPi, kPi);
    return {std::cos(a), std::sin(a)};
  }

private:
  std::mt19937_64 engine_;
};

inline double rel_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

template <class A, class B>
double rel_error(const A& got, const B& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

/// Drag matrix written out component by component.
inline Eigen::Matrix2d drag(const Vector2d& t, double c, double beta, int order) {
  const double g = order == 2 ? 1.0 : 0.0;
  const double lead = -c - kLog2 * c * c * g;
  const double corr = beta * c * c * g;
  Eigen::Matrix2d m;
  m(0, 0) = lead * (t.x() * t.x() - 2.0) + corr * (3.0 * t.x() * t.x() - 2.0);
  m(1, 1) = lead * (t.y() * t.y() - 2.0) + corr * (3.0 * t.y() * t.y() - 2.0);
  m(0, 1) = m(1, 0) = (lead + 3.0 * corr) * t.x() * t.y();
  return 2.0 * kPi * m;
}

/// Plain composite Simpson with `n` (even) subintervals.
template <class F>
auto simpson(const F& f, double a, double b, int n) {
  using Value = std::decay_t<decltype(f(a))>;
  const double h = (b - a) / n;
  Value sum = f(a);
  sum += f(b);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + h * k);
  return Value(sum * (h / 3.0));
}

/// Head resistance by brute-force quadrature with explicit 3D cross products.
inline Matrix3d brute_head_resistance(const Vector2d& t0, const flexswim::ModelParams& p, int panels = 4096) {
  const Eigen::Matrix2d L = drag(t0, p.c(), p.beta, p.order);
  Matrix3d A;
  for (int j = 0; j < 3; ++j) {
    const Vector3d xi = Vector3d::Unit(j);
    auto column = [&](double s) {
      const Vector3d r(s * t0.x(), s * t0.y(), 0.0);
      const Vector3d v = Vector3d(xi.x(), xi.y(), 0.0) + Vector3d(0.0, 0.0, xi.z()).cross(r);
      const Vector2d f = L * Vector2d(v.x(), v.y());
      const Vector3d m = r.cross(Vector3d(f.x(), f.y(), 0.0));
      return Vector3d(f.x(), f.y(), m.z());
    };
    A.col(j) = simpson(column, 0.0, p.delta, 2 * panels);
  }
  return A;
}

/// Closed form for the straight head: moments of s over [0, delta].
inline Matrix3d analytic_head_resistance(const Vector2d& t0, const flexswim::ModelParams& p) {
  const Eigen::Matrix2d L = drag(t0, p.c(), p.beta, p.order);
  const Vector2d n(-t0.y(), t0.x());
  const double d = p.delta;
  Matrix3d A;
  A.topLeftCorner<2, 2>() = d * L;
  A.topRightCorner<2, 1>() = 0.5 * d * d * L * n;
  A.bottomLeftCorner<1, 2>() = 0.5 * d * d * (n.transpose() * L);
  A(2, 2) = d * d * d / 3.0 * n.dot(L * n);
  return A;
}

/// The closed-form head coefficients exactly as printed in the source derivation.
inline Matrix3d printed_head_coefficients(const Vector2d& t, double delta, double c) {
  const double tx = t.x(), ty = t.y(), d = delta, c2 = c * c, l2 = kLog2;
  Matrix3d a;
  a(0, 0) = -c * d - c2 * d * l2 * (tx * tx + 1.0) - c2 * d * (3.0 * tx * tx - 2.0);
  a(0, 1) = 0.0;
  a(0, 2) = d * d / 2.0 * (-ty - c2 * l2 * ty * tx * tx - c2 * l2 + 3.0 * c2 * ty * tx * tx - c2 * ty);
  a(1, 0) = 0.0;
  a(1, 1) = -c * d - c2 * d * l2 * (ty * ty + 1.0) - c2 * d * (3.0 * ty * ty - 2.0);
  a(1, 2) = d * d / 2.0 *
            (-tx - c2 * l2 * tx * ty * ty + l2 * c2 * tx - 3.0 * c2 * tx * ty * ty - 2.0 * c2 * tx);
  a(2, 0) = c * d * d / 2.0 - (2.0 * l2 - 2.0) * d * d / 2.0 * ty;
  a(2, 1) = -d * d / 2.0 * c * tx + (2.0 * l2 - 2.0) * d * d / 2.0 * tx;
  a(2, 2) = -d * d * d / 3.0 * tx * tx - 2.0 * d * d * d / 3.0 * ty * ty - (2.0 * l2 - 2.0) * d * d / 2.0 * tx;
  return a;
}

/// Quadrature of the integrand the printed coefficients were derived from:
/// f = -c v - log2 c^2 (T - 2I) v - c^2 (3T - 2I) v, with rigid transport
/// v = v0 + omega (t_y, -t_x) s and no 2 pi prefactor.
inline Matrix3d literal_head_integral(const Vector2d& t, double delta, double c, int panels = 4096) {
  const Eigen::Matrix2d T = t * t.transpose();
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d L = -c * I - kLog2 * c * c * (T - 2.0 * I) - c * c * (3.0 * T - 2.0 * I);
  Matrix3d A;
  for (int j = 0; j < 3; ++j) {
    const Vector3d xi = Vector3d::Unit(j);
    auto column = [&](double s) {
      const Vector2d r = s * t;
      const Vector2d v = xi.head<2>() + xi.z() * s * Vector2d(t.y(), -t.x());
      const Vector2d f = L * v;
      return Vector3d(f.x(), f.y(), r.x() * f.y() - r.y() * f.x());
    };
    A.col(j) = simpson(column, 0.0, delta, 2 * panels);
  }
  return A;
}

struct Discrepancy {
  std::vector<std::string> mismatched;  ///< "a11" ... "a33", row-major
  std::string report;
};

/// Compares printed coefficients against their literal integrand on seeded random cases.
inline Discrepancy head_coefficient_discrepancies(int cases = 20, std::uint64_t seed = 20240611,
                                                  double tolerance = 1e-8) {
  Rng rng(seed);
  Matrix3d worst = Matrix3d::Zero();
  for (int k = 0; k < cases; ++k) {
    const Vector2d t = rng.unit_vector();
    const double delta = rng.uniform(0.01, 0.2);
    const double c = 1.0 / std::log(rng.uniform(1e-3, 0.1));
    const Matrix3d printed = printed_head_coefficients(t, delta, c);
    const Matrix3d literal = literal_head_integral(t, delta, c);
    const double scale = literal.cwiseAbs().maxCoeff();
    worst = worst.cwiseMax((printed - literal).cwiseAbs() / scale);
  }
  Discrepancy out;
  std::ostringstream os;
  os << "# head coefficient discrepancy report\n";
  os << "# printed closed form vs quadrature of its own integrand, " << cases << " seeded cases\n";
  os << "# entry, status (tolerance " << tolerance << " relative to max |A|)\n";
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const std::string name = "a" + std::to_string(i + 1) + std::to_string(j + 1);
      const bool bad = worst(i, j) > tolerance;
      if (bad) out.mismatched.push_back(name);
      os << name << ", " << (bad ? "MISMATCH" : "ok") << "\n";
    }
  }
  out.report = os.str();
  return out;
}

}  // namespace oracle
