#pragma once

#include <Eigen/Core>
#include <memory>

#include "patgal/basis.hpp"
#include "patgal/wave.hpp"

namespace patgal {

/// Matrix-free B with B(ij, k) = W phi_N^k(z_i, t_j).
class BasisWaveOperator {
 public:
  virtual ~BasisWaveOperator() = default;

  virtual const BasisGrid& grid() const = 0;
  virtual const DetectorGeometry& geometry() const = 0;
  virtual const TimeGrid& time() const = 0;

  /// (B c)(i, j) as an n_det x n_t array.
  virtual RowMatrix apply(const Eigen::VectorXd& c) const = 0;

  /// sum_ij B(ij, k) y(i, j).
  virtual Eigen::VectorXd adjoint(const RowMatrix& y) const = 0;
};

/// Radial generators: one wave table, interpolated in the detector distance.
class RadialTableOperator final : public BasisWaveOperator {
 public:
  RadialTableOperator(const GeneratingFunction& gf, BasisGrid grid, DetectorGeometry geometry,
                      TimeGrid time, const WaveOptions& options = {});

  const BasisGrid& grid() const override { return grid_; }
  const DetectorGeometry& geometry() const override { return geometry_; }
  const TimeGrid& time() const override { return time_; }
  const RadialWaveTable& table() const { return table_; }

  RowMatrix apply(const Eigen::VectorXd& c) const override;
  Eigen::VectorXd adjoint(const RowMatrix& y) const override;

 private:
  struct Node {
    int row;
    double lam;
  };
  BasisGrid grid_;
  DetectorGeometry geometry_;
  TimeGrid time_;
  RadialWaveTable table_;
  std::vector<Node> nodes_;  // (k, i) -> interpolation node, k-major
};

/// Pixel generator: analytic square spherical means on the Abel grid.
class PixelWaveOperator final : public BasisWaveOperator {
 public:
  PixelWaveOperator(BasisGrid grid, DetectorGeometry geometry, TimeGrid time,
                    const WaveOptions& options = {});

  const BasisGrid& grid() const override { return grid_; }
  const DetectorGeometry& geometry() const override { return geometry_; }
  const TimeGrid& time() const override { return time_; }

  RowMatrix apply(const Eigen::VectorXd& c) const override;
  Eigen::VectorXd adjoint(const RowMatrix& y) const override;

 private:
  BasisGrid grid_;
  DetectorGeometry geometry_;
  TimeGrid time_;
  RadialGrid rgrid_;
  Eigen::MatrixXd wave_;  // n_t x rgrid.count
};

std::unique_ptr<BasisWaveOperator> make_wave_operator(const GeneratingFunction& gf,
                                                      const BasisGrid& grid,
                                                      const DetectorGeometry& geometry,
                                                      const TimeGrid& time,
                                                      const WaveOptions& options = {});

/// Data-side weights of the inner product, y(i, j) = t_weight * g(i, j).
RowMatrix weighted_data(const Sinogram& g);

}  // namespace patgal
