#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "flexswim/cox.hpp"
#include "flexswim/shapes.hpp"

namespace flexswim {

/// Lie-algebra element in the basis (x-translation, y-translation, rotation).
using Se2Vector = Eigen::Vector3d;

/// Local connection: xi = -A(x) * (alpha1_dot, alpha2_dot).
struct LocalConnection {
  Eigen::Matrix<double, 3, 2> matrix;

  Se2Vector column(int j) const { return matrix.col(j); }
  Se2Vector apply(const Eigen::Vector2d& shape_velocity) const { return matrix * shape_velocity; }
};

/// Matrix commutator on se(2): [e3, e1] = e2, [e3, e2] = -e1, [e1, e2] = 0.
Se2Vector se2_bracket(const Se2Vector& a, const Se2Vector& b);

LocalConnection local_connection(const PurcellShape& shape, const ModelParams& params);

/// A(x) applied to an arbitrary joint-space direction.
Se2Vector connection_along(const PurcellShape& shape, const ModelParams& params,
                           const Eigen::Vector2d& direction);

struct CurvatureOptions {
  double step = 1e-5;  ///< central-difference step in joint space, radians
};

/// DA(X, Y) = d_X A(Y) - d_Y A(X) - [A(X), A(Y)] for constant joint-space fields X, Y.
Se2Vector connection_curvature(const PurcellShape& shape, const ModelParams& params,
                               const Eigen::Vector2d& X, const Eigen::Vector2d& Y,
                               const CurvatureOptions& options = {});

/// DA(e1, e2).
Se2Vector connection_curvature(const PurcellShape& shape, const ModelParams& params,
                               const CurvatureOptions& options = {});

struct FiltrationOptions {
  double curvature_step = 1e-5;
  double lie_step = 1e-3;         ///< step for Lie derivatives of the curvature
  double rank_tolerance = 1e-8;   ///< singular values below tol * sigma_max do not count
  /// Columns are the joint-space directions used as the tangent basis.
  Eigen::Matrix2d basis = Eigen::Matrix2d::Identity();
};

/// Numerical rank of a set of se(2) vectors plus the singular values behind it.
struct SpanRank {
  int rank = 0;
  Eigen::Vector3d singular_values = Eigen::Vector3d::Zero();
};

SpanRank numerical_rank(const std::vector<Se2Vector>& vectors, double relative_tolerance);

struct Filtration {
  int depth = 0;
  std::vector<Se2Vector> h1;          ///< A(X) for the basis directions
  std::vector<Se2Vector> h2;          ///< DA(X, Y)
  std::vector<Se2Vector> h3_lie;      ///< L_Z DA - [A(Z), DA]
  std::vector<Se2Vector> h3_bracket;  ///< [DA, DA]
  SpanRank h1_rank;
  SpanRank strong;  ///< h2 + h3
  SpanRank weak;    ///< h1 + h2 + h3
  double rank_tolerance = 0.0;
};

Filtration filtration(const PurcellShape& shape, const ModelParams& params, int depth = 3,
                      const FiltrationOptions& options = {});

struct ControllabilityRow {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int rank_weak = -1;
  int rank_strong = -1;
  bool weak = false;
  bool strong = false;
  double sigma3_strong = 0.0;  ///< smallest singular value of h2 + h3, relative to the largest
  std::string error;           ///< empty unless this point failed
};

/// Evaluates both rank conditions at every (alpha1, alpha2) pair of the grid.
/// Failures at a point are recorded in its row.
std::vector<ControllabilityRow> controllability_report(const std::vector<double>& alpha1,
                                                       const std::vector<double>& alpha2,
                                                       const ModelParams& params,
                                                       const FiltrationOptions& options = {});

}  // namespace flexswim
