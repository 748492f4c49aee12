#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "flexswim/dynamics.hpp"
#include "flexswim/geometry.hpp"

namespace flexswim {

/// Traveling bump c1 exp(-c2 / (1 - z^2)), z = x - c3 t, supported on |z| < 1.
struct BumpParams {
  double c1 = 1e6;
  double c2 = 15.0;
  double c3 = 1.0 / 15.0;  ///< travel speed, 1/s

  void validate() const;
};

double bump(double x, double t, const BumpParams& p);

/// Partial time derivative of `bump`.
double bump_velocity(double x, double t, const BumpParams& p);

/// Transverse traveling-bump program on `grid` uniform samples of x in [0, 1].
ShapeProgram bump_program(const BumpParams& p, std::size_t grid = 201);

/// Three-link swimmer; link 1 is the head, alpha1/alpha2 are the relative joint angles.
struct PurcellShape {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::array<double, 3> fractions{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  void validate() const;
};

/// Head-frame polyline of the three links (4 vertices).
ShapeCurve purcell_curve(const PurcellShape& shape);

/// Deformation velocity at the 4 vertices for joint rates (rate1, rate2), head link fixed.
std::vector<Vec2> purcell_velocity(const PurcellShape& shape, double rate1, double rate2);

/// A joint-angle path with its time derivative.
struct AnglePath {
  std::function<double(double)> angle;
  std::function<double(double)> rate;

  static AnglePath constant(double value);
  static AnglePath sinusoid(double offset, double amplitude, double frequency, double phase);
};

ShapeProgram purcell_program(AnglePath alpha1, AnglePath alpha2,
                             std::array<double, 3> fractions = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});

/// Closed square loop in joint space, traversed at constant speed over `period`:
/// corner (a1, a2) -> (a1 + side, a2) -> (a1 + side, a2 + side) -> (a1, a2 + side) -> back.
/// With `clockwise` the two middle corners are swapped.
ShapeProgram purcell_square_stroke(double a1, double a2, double side, double period,
                                   bool clockwise = false);

/// Frames of a tabulated graph y(x, t): every frame shares one x grid.
struct GraphTable {
  std::vector<double> times;
  std::vector<double> x;
  std::vector<std::vector<double>> y;  ///< y[frame][sample]
};

/// Reads `t,x,y` CSV rows grouped by frame (header line required).
GraphTable load_graph_table(const std::string& path);

/// Linear interpolation in time between frames; velocity is the frame-to-frame slope.
ShapeProgram tabulated_program(GraphTable table);

}  // namespace flexswim
