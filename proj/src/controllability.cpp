#include "flexswim/controllability.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "flexswim/solver.hpp"

namespace flexswim {

namespace {

PurcellShape shifted(const PurcellShape& shape, const Eigen::Vector2d& d) {
  PurcellShape out = shape;
  out.alpha1 += d.x();
  out.alpha2 += d.y();
  return out;
}

void require_step(const PurcellShape& shape, const Eigen::Vector2d& d, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  const Eigen::Vector2d h = step * d;
  if ((shape.alpha1 + h.x() == shape.alpha1) && (shape.alpha2 + h.y() == shape.alpha2)) {
    throw std::invalid_argument("finite-difference step underflows at this shape");
  }
}

// Central difference of f along d.
template <class F>
Se2Vector directional(const F& f, const PurcellShape& shape, const Eigen::Vector2d& d, double step) {
  require_step(shape, d, step);
  return (f(shifted(shape, step * d)) - f(shifted(shape, -step * d))) / (2.0 * step);
}

}  // namespace

Se2Vector se2_bracket(const Se2Vector& a, const Se2Vector& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), 0.0};
}

Se2Vector connection_along(const PurcellShape& shape, const ModelParams& params,
                           const Eigen::Vector2d& direction) {
  const ShapeCurve curve = purcell_curve(shape);
  const auto u = purcell_velocity(shape, direction.x(), direction.y());
  return -purcell_body_velocity(curve, u, params).vec();
}

LocalConnection local_connection(const PurcellShape& shape, const ModelParams& params) {
  LocalConnection a;
  a.matrix.col(0) = connection_along(shape, params, Eigen::Vector2d::UnitX());
  a.matrix.col(1) = connection_along(shape, params, Eigen::Vector2d::UnitY());
  return a;
}

Se2Vector connection_curvature(const PurcellShape& shape, const ModelParams& params,
                               const Eigen::Vector2d& X, const Eigen::Vector2d& Y,
                               const CurvatureOptions& options) {
  auto a_of = [&](const Eigen::Vector2d& dir) {
    return [&params, dir](const PurcellShape& s) { return connection_along(s, params, dir); };
  };
  const Se2Vector dx_ay = directional(a_of(Y), shape, X, options.step);
  const Se2Vector dy_ax = directional(a_of(X), shape, Y, options.step);
  return dx_ay - dy_ax -
         se2_bracket(connection_along(shape, params, X), connection_along(shape, params, Y));
}

Se2Vector connection_curvature(const PurcellShape& shape, const ModelParams& params,
                               const CurvatureOptions& options) {
  return connection_curvature(shape, params, Eigen::Vector2d::UnitX(), Eigen::Vector2d::UnitY(),
                              options);
}

SpanRank numerical_rank(const std::vector<Se2Vector>& vectors, double relative_tolerance) {
  SpanRank out;
  if (vectors.empty()) return out;
  Eigen::MatrixXd m(3, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size() && i < 3; ++i) out.singular_values(i) = sv(i);
  const double top = out.singular_values(0);
  if (!(top > 0.0)) return out;
  for (int i = 0; i < 3; ++i) {
    if (out.singular_values(i) > relative_tolerance * top) ++out.rank;
  }
  return out;
}

Filtration filtration(const PurcellShape& shape, const ModelParams& params, int depth,
                      const FiltrationOptions& options) {
  if (depth < 1 || depth > 3) throw std::invalid_argument("filtration depth must be 1, 2 or 3");
  const Eigen::Vector2d X = options.basis.col(0);
  const Eigen::Vector2d Y = options.basis.col(1);
  if (std::abs(options.basis.determinant()) == 0.0) {
    throw std::invalid_argument("filtration basis is singular");
  }
  const CurvatureOptions curv{options.curvature_step};

  Filtration out;
  out.depth = depth;
  out.rank_tolerance = options.rank_tolerance;
  out.h1 = {connection_along(shape, params, X), connection_along(shape, params, Y)};

  if (depth >= 2) {
    const Se2Vector da = connection_curvature(shape, params, X, Y, curv);
    out.h2 = {da};
    if (depth >= 3) {
      auto da_of = [&](const PurcellShape& s) { return connection_curvature(s, params, X, Y, curv); };
      for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2d Z = k == 0 ? X : Y;
        const Se2Vector lie = directional(da_of, shape, Z, options.lie_step);
        out.h3_lie.push_back(lie - se2_bracket(out.h1[static_cast<std::size_t>(k)], da));
      }
      // only one curvature generator exists in a 2-dimensional shape space
      out.h3_bracket = {se2_bracket(da, da)};
    }
  }

  std::vector<Se2Vector> strong = out.h2;
  strong.insert(strong.end(), out.h3_lie.begin(), out.h3_lie.end());
  strong.insert(strong.end(), out.h3_bracket.begin(), out.h3_bracket.end());
  std::vector<Se2Vector> weak = out.h1;
  weak.insert(weak.end(), strong.begin(), strong.end());

  out.h1_rank = numerical_rank(out.h1, options.rank_tolerance);
  out.strong = numerical_rank(strong, options.rank_tolerance);
  out.weak = numerical_rank(weak, options.rank_tolerance);
  return out;
}

std::vector<ControllabilityRow> controllability_report(const std::vector<double>& alpha1,
                                                       const std::vector<double>& alpha2,
                                                       const ModelParams& params,
                                                       const FiltrationOptions& options) {
  std::vector<ControllabilityRow> rows;
  rows.reserve(alpha1.size() * alpha2.size());
  for (double a1 : alpha1) {
    for (double a2 : alpha2) {
      ControllabilityRow row;
      row.alpha1 = a1;
      row.alpha2 = a2;
      try {
        const Filtration f = filtration(PurcellShape{a1, a2}, params, 3, options);
        row.rank_weak = f.weak.rank;
        row.rank_strong = f.strong.rank;
        row.weak = f.weak.rank == 3;
        row.strong = f.strong.rank == 3;
        const double top = f.strong.singular_values(0);
        row.sigma3_strong = top > 0.0 ? f.strong.singular_values(2) / top : 0.0;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace flexswim
