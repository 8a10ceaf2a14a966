#pragma once

#include <Eigen/Core>
#include <functional>

namespace patgal {

/// Uniform radii r_n = n * step, n = 0 .. count-1.
struct RadialGrid {
  double step = 0.0;
  int count = 0;
  double r(int n) const { return n * step; }
};

/// Smallest uniform grid with the given step whose last node is >= r_max.
RadialGrid radial_grid_covering(double r_max, double step);

/// int_0^t r g(r) / sqrt(t^2 - r^2) dr via r = sqrt(t^2 - u^2) and an n_u node
/// trapezoid rule in u.
double abel_transform(const std::function<double(double)>& g, double t, int n_u);

/// Product-integration weights: row j maps samples of g on the radial grid to
/// the Abel transform at times[j] of the piecewise linear interpolant of g.
Eigen::MatrixXd abel_matrix(const RadialGrid& grid, const Eigen::VectorXd& times);

/// d/dt along each column (rows are uniformly spaced time samples): central
/// differences inside, one-sided second-order stencils at both ends.
Eigen::MatrixXd time_derivative(const Eigen::MatrixXd& a, double dt);

/// Transpose of time_derivative.
Eigen::MatrixXd time_derivative_adjoint(const Eigen::MatrixXd& a, double dt);

}  // namespace patgal
