#include "patgal/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "patgal/galerkin.hpp"

namespace patgal {

double relative_l2_error(const Eigen::MatrixXd& recon, const Eigen::MatrixXd& truth) {
  if (recon.rows() != truth.rows() || recon.cols() != truth.cols())
    throw std::invalid_argument("relative_l2_error: images differ in shape");
  const double denom = truth.squaredNorm();
  if (denom == 0.0) throw std::invalid_argument("relative_l2_error: truth image is zero");
  return (recon - truth).squaredNorm() / denom;
}

StabilityGap stability_gap(const Eigen::VectorXd& c_noisy, const Eigen::VectorXd& c_clean,
                           const BasisGrid& grid, const GramKernel& kernel, double delta) {
  if (c_noisy.size() != c_clean.size())
    throw std::invalid_argument("stability_gap: coefficient vectors differ in size");
  const Eigen::VectorXd diff = c_noisy - c_clean;
  StabilityGap gap;
  gap.lhs = std::sqrt(std::max(0.0, diff.dot(apply_gram(grid, kernel, diff))));
  gap.rhs = std::sqrt(2.0 / grid.R) * delta;
  return gap;
}

}  // namespace patgal
