#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patgal/config.hpp"
#include "patgal/galerkin.hpp"
#include "patgal/metrics.hpp"
#include "patgal/wave.hpp"
#include "patgal/wave_operator.hpp"

namespace patgal {

/// Noise-free data of the configured phantom.
Sinogram simulate_clean(const ExperimentConfig& config);

/// Data with the configured noise level and seed.
Sinogram simulate(const ExperimentConfig& config);

/// Evaluation raster {s T k} intersected with [-R, R]^2.
Raster evaluation_raster(const ExperimentConfig& config);

struct MethodResult {
  std::string method;
  Eigen::MatrixXd image;
  std::optional<BasisGrid> grid;
  Eigen::VectorXd coefficients;
  int iterations = 0;
  double error = 0.0;
};

/// Runs the reconstruction methods for one configuration, caching forward
/// operators and Gram kernels across calls.
class Reconstructor {
 public:
  explicit Reconstructor(ExperimentConfig config);

  const Raster& raster() const { return raster_; }
  const Eigen::MatrixXd& truth() const { return truth_; }

  MethodResult run(const std::string& method, const Sinogram& g);

  /// Basis-method pieces, built on first use.
  const BasisWaveOperator& basis_operator();
  const GramKernel& basis_kernel();
  const BasisWaveOperator& pixel_operator();

 private:
  ExperimentConfig config_;
  Raster raster_;
  Eigen::MatrixXd truth_;
  std::unique_ptr<BasisWaveOperator> basis_op_;
  std::optional<GramKernel> basis_kernel_;
  std::unique_ptr<BasisWaveOperator> pixel_op_;
};

struct SweepRow {
  double s = 0.0;
  double T = 0.0;
  double error = 0.0;
};

/// One Galerkin reconstruction per s with T = 2/(s (N - 1)).
std::vector<SweepRow> sweep_s(const ExperimentConfig& config, const std::vector<double>& s_values,
                              const Sinogram& g);

struct CompareRow {
  double noise = 0.0;
  std::string method;
  double error = 0.0;
};

/// Errors of every configured method at every configured noise level.
std::vector<CompareRow> compare(const ExperimentConfig& config);

struct BasisRow {
  double s = 0.0;
  double riesz_lower = 0.0;
  double riesz_upper = 0.0;
  double saturation = 0.0;
  double pou_defect = 0.0;
};

std::vector<BasisRow> analyze_basis(const ExperimentConfig& config);

}  // namespace patgal
