#include "patgal/baselines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "patgal/errors.hpp"
#include "patgal/parallel.hpp"

namespace patgal {

Eigen::MatrixXd fbp_filtered(const Sinogram& g, double rho_step, int n_rho) {
  const TimeGrid& tg = g.time;
  const int n_t = tg.n_t;
  // h = d/dt (t g) on the samples, with h(0) = 0 prepended
  Eigen::MatrixXd tg_values(n_t, g.geometry.n_det);
  for (int j = 0; j < n_t; ++j) tg_values.row(j) = tg.t(j) * g.values.col(j).transpose();
  const Eigen::MatrixXd h = time_derivative(tg_values, tg.dt());
  std::vector<double> nodes(n_t + 1);
  nodes[0] = 0.0;
  for (int j = 0; j < n_t; ++j) nodes[j + 1] = tg.t(j);

  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n_rho, g.geometry.n_det);
  parallel_for(g.geometry.n_det, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto hv = [&](int q) { return q == 0 ? 0.0 : h(q - 1, static_cast<Eigen::Index>(i)); };
      for (int n = 0; n < n_rho; ++n) {
        const double rho = rho_step * n;
        double sum = 0.0;
        // exact integral of the piecewise linear interpolant of h against the kernel
        for (int q = 0; q < n_t; ++q) {
          const double ta = nodes[q];
          const double tb = nodes[q + 1];
          if (tb <= rho) continue;
          const double beta = (hv(q + 1) - hv(q)) / (tb - ta);
          const double alpha = hv(q) - beta * ta;
          const double lo = std::max(ta, rho);
          const double s_lo = std::sqrt(std::max(0.0, lo * lo - rho * rho));
          const double s_hi = std::sqrt(tb * tb - rho * rho);
          double log_part;
          if (rho > 0.0) {
            log_part = std::log((tb + s_hi) / (lo + s_lo));
          } else {
            if (lo == 0.0) continue;  // h vanishes at t = 0
            log_part = std::log(tb / lo);
          }
          sum += alpha * log_part + beta * (s_hi - s_lo);
        }
        Q(n, static_cast<Eigen::Index>(i)) = sum;
      }
    }
  });
  return Q;
}

Eigen::MatrixXd fbp_reconstruct(const Sinogram& g, const Raster& raster, const FbpOptions& options) {
  const DetectorGeometry& geo = g.geometry;
  const double step = options.rho_step > 0.0 ? options.rho_step : 0.25 * g.time.dt();
  const int n_rho = static_cast<int>(std::ceil(2.0 * geo.R / step)) + 2;
  const Eigen::MatrixXd Q = fbp_filtered(g, step, n_rho);
  const double scale = -geo.weight() / (std::numbers::pi * geo.R);

  Eigen::MatrixXd img = Eigen::MatrixXd::Zero(raster.ys.size(), raster.xs.size());
  std::vector<Eigen::Vector2d> det(geo.n_det);
  for (int i = 0; i < geo.n_det; ++i) det[i] = geo.detector(i);
  parallel_for(raster.ys.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t iy = begin; iy < end; ++iy) {
      for (std::size_t ix = 0; ix < raster.xs.size(); ++ix) {
        const Eigen::Vector2d x = raster.point(static_cast<int>(ix), static_cast<int>(iy));
        if (x.norm() >= geo.R) continue;
        double sum = 0.0;
        for (int i = 0; i < geo.n_det; ++i) {
          const double u = (x - det[i]).norm() / step;
          const int n = std::min(static_cast<int>(u), n_rho - 2);
          const double lam = u - n;
          sum += (1.0 - lam) * Q(n, i) + lam * Q(n + 1, i);
        }
        img(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) = scale * sum;
      }
    }
  });
  return img;
}

DdResult dd_reconstruct(const BasisWaveOperator& op, const Sinogram& g, int max_iter, double tol) {
  if (g.geometry.n_det != op.geometry().n_det || g.time.n_t != op.time().n_t)
    throw std::invalid_argument("dd_reconstruct: sinogram does not match the forward operator");
  DdResult res;
  res.coefficients = Eigen::VectorXd::Zero(op.grid().size());
  RowMatrix r = g.values;
  Eigen::VectorXd s = op.adjoint(r);
  Eigen::VectorXd p = s;
  double gamma = s.squaredNorm();
  const double s0 = std::sqrt(gamma);
  res.data_residuals.push_back(r.norm());
  res.normal_residuals.push_back(s0);
  if (s0 == 0.0) return res;
  for (int it = 0; it < max_iter; ++it) {
    const RowMatrix q = op.apply(p);
    const double qq = q.squaredNorm();
    if (!std::isfinite(qq)) throw NumericalError("dd_reconstruct: NaN in forward application");
    if (qq <= 0.0) break;
    const double alpha = gamma / qq;
    res.coefficients += alpha * p;
    r -= alpha * q;
    s = op.adjoint(r);
    const double gamma_new = s.squaredNorm();
    res.iterations = it + 1;
    res.data_residuals.push_back(r.norm());
    res.normal_residuals.push_back(std::sqrt(gamma_new));
    if (std::sqrt(gamma_new) <= tol * s0) break;
    p = s + (gamma_new / gamma) * p;
    gamma = gamma_new;
  }
  return res;
}

}  // namespace patgal
