#pragma once

#include <Eigen/Core>
#include <vector>

#include "patgal/galerkin.hpp"
#include "patgal/wave.hpp"
#include "patgal/wave_operator.hpp"

namespace patgal {

struct FbpOptions {
  double rho_step = 0.0;  // radial table step of the filtered data, <= 0 selects dt/4
};

/// Backprojection formula f = (2/R) W^*(t W f) for the circular geometry, with
/// h = d/dt (t g) and the t-integral truncated at t_final. Zero outside the
/// detection disc.
Eigen::MatrixXd fbp_reconstruct(const Sinogram& g, const Raster& raster,
                                const FbpOptions& options = {});

/// Filtered data Q_i(rho) = int_rho^{t_final} h_i(t) / sqrt(t^2 - rho^2) dt on a
/// uniform rho grid (rows) for every detector (columns).
Eigen::MatrixXd fbp_filtered(const Sinogram& g, double rho_step, int n_rho);

struct DdResult {
  Eigen::VectorXd coefficients;
  std::vector<double> data_residuals;    // ||B c_k - g||
  std::vector<double> normal_residuals;  // ||B'(B c_k - g)||
  int iterations = 0;
};

/// Least-squares fit of B c to the samples by CG on the normal equations
/// (CGLS form, never forming B'B).
DdResult dd_reconstruct(const BasisWaveOperator& op, const Sinogram& g, int max_iter = 40,
                        double tol = 1e-12);

}  // namespace patgal
