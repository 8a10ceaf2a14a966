#pragma once

#include <Eigen/Core>
#include <string>

#include "patgal/basis.hpp"

namespace patgal {

struct ErrorReport {
  std::string method;
  double noise = 0.0;
  double relative_l2 = 0.0;
  int iterations = 0;
  int raster_size = 0;
};

/// sum |recon - truth|^2 / sum |truth|^2 (squared-norm ratio, no root).
double relative_l2_error(const Eigen::MatrixXd& recon, const Eigen::MatrixXd& truth);

struct StabilityGap {
  double lhs = 0.0;  // L2 distance of the two expansions (Gram norm)
  double rhs = 0.0;  // sqrt(2/R) delta
};

StabilityGap stability_gap(const Eigen::VectorXd& c_noisy, const Eigen::VectorXd& c_clean,
                           const BasisGrid& grid, const GramKernel& kernel, double delta);

}  // namespace patgal
