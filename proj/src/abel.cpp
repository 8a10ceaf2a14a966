#include "patgal/abel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace patgal {

RadialGrid radial_grid_covering(double r_max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("radial grid step must be positive");
  RadialGrid g;
  g.step = step;
  g.count = static_cast<int>(std::ceil(r_max / step - 1e-12)) + 1;
  return g;
}

double abel_transform(const std::function<double(double)>& g, double t, int n_u) {
  if (t < 0.0) throw std::invalid_argument("abel_transform: t must be nonnegative");
  if (n_u < 2) throw std::invalid_argument("abel_transform: n_u must be at least 2");
  if (t == 0.0) return 0.0;
  const double h = t / (n_u - 1);
  double sum = 0.0;
  for (int q = 0; q < n_u; ++q) {
    const double u = h * q;
    const double w = (q == 0 || q == n_u - 1) ? 0.5 : 1.0;
    sum += w * g(std::sqrt(std::max(0.0, t * t - u * u)));
  }
  return h * sum;
}

Eigen::MatrixXd abel_matrix(const RadialGrid& grid, const Eigen::VectorXd& times) {
  const double h = grid.step;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(times.size(), grid.count);
  for (Eigen::Index j = 0; j < times.size(); ++j) {
    const double t = times[j];
    const double t2 = t * t;
    for (int n = 0; n + 1 < grid.count; ++n) {
      const double a = grid.r(n);
      if (a >= t) break;
      const double b_full = grid.r(n + 1);
      const double b = std::min(b_full, t);
      const double ua = std::sqrt(t2 - a * a);
      const double ub = b < t ? std::sqrt(t2 - b * b) : 0.0;
      // J0 = int r/sqrt(t^2-r^2), J1 = int r^2/sqrt(t^2-r^2) over [a, b]
      const double j0 = (b - a) * (b + a) / (ua + ub);
      const double dtheta = std::atan2((b - a) * ua + a * j0, ua * ub + a * b);
      const double j1 = 0.5 * t2 * dtheta - 0.5 * ((b - a) * ub - a * j0);
      P(j, n + 1) += (j1 - a * j0) / h;
      P(j, n) += (b_full * j0 - j1) / h;
    }
  }
  return P;
}

Eigen::MatrixXd time_derivative(const Eigen::MatrixXd& a, double dt) {
  const Eigen::Index n = a.rows();
  if (n < 3) throw std::invalid_argument("time_derivative: need at least 3 samples");
  Eigen::MatrixXd out(n, a.cols());
  const double c = 0.5 / dt;
  out.row(0) = c * (-3.0 * a.row(0) + 4.0 * a.row(1) - a.row(2));
  out.middleRows(1, n - 2) = c * (a.bottomRows(n - 2) - a.topRows(n - 2));
  out.row(n - 1) = c * (3.0 * a.row(n - 1) - 4.0 * a.row(n - 2) + a.row(n - 3));
  return out;
}

Eigen::MatrixXd time_derivative_adjoint(const Eigen::MatrixXd& a, double dt) {
  const Eigen::Index n = a.rows();
  if (n < 3) throw std::invalid_argument("time_derivative_adjoint: need at least 3 samples");
  const double c = 0.5 / dt;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, a.cols());
  out.row(0) += -3.0 * c * a.row(0);
  out.row(1) += 4.0 * c * a.row(0);
  out.row(2) += -c * a.row(0);
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    out.row(j + 1) += c * a.row(j);
    out.row(j - 1) -= c * a.row(j);
  }
  out.row(n - 1) += 3.0 * c * a.row(n - 1);
  out.row(n - 2) += -4.0 * c * a.row(n - 1);
  out.row(n - 3) += c * a.row(n - 1);
  return out;
}

}  // namespace patgal
