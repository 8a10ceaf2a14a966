#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>

#include "patgal/abel.hpp"
#include "patgal/basis.hpp"
#include "patgal/phantom.hpp"

namespace patgal {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Equispaced detectors on the circle of radius R. Detector i (0-based) sits at
/// angle 2 pi (i + 1) / n_det.
struct DetectorGeometry {
  double R = 1.0;
  int n_det = 100;

  Eigen::Vector2d detector(int i) const;
  /// Arc-length quadrature weight, the same for every detector.
  double weight() const;
};

/// Samples t_j = (j + 1) t_final / n_t, j = 0 .. n_t - 1.
struct TimeGrid {
  double t_final = 3.0;
  int n_t = 376;

  double dt() const { return t_final / n_t; }
  double t(int j) const { return (j + 1) * dt(); }
  Eigen::VectorXd times() const;
};

/// Pressure samples, values(i, j) = g(z_i, t_j).
struct Sinogram {
  DetectorGeometry geometry;
  TimeGrid time;
  RowMatrix values;
};

Sinogram zero_sinogram(const DetectorGeometry& geometry, const TimeGrid& time);

/// (1/2pi) int f(z + r w) dw by the n_phi-node periodic trapezoid rule.
double spherical_mean_numeric(const std::function<double(const Eigen::Vector2d&)>& f,
                              const Eigen::Vector2d& z, double r, int n_phi);

/// Fraction of the circle {z + r w} inside the square center + [-h, h)^2.
double square_spherical_mean(const Eigen::Vector2d& center, double half_side,
                             const Eigen::Vector2d& z, double r);

/// Linear map from spherical means on the Abel grid to data samples: product
/// integrated Abel transform and central differences on a time grid refined
/// by `oversample`, then restricted to the samples of `time`.
Eigen::MatrixXd wave_matrix(const RadialGrid& rgrid, const TimeGrid& time, int oversample);

/// Wave data of a disc phantom from exact spherical means. r_step <= 0
/// selects dt/2.
Sinogram forward_phantom(const Phantom& phantom, const DetectorGeometry& geometry,
                         const TimeGrid& time, double r_step = 0.0, int oversample = 1);

/// Discretization parameters of the basis-function forward paths.
struct WaveOptions {
  int n_r = 1200;       // radial wave table rows over [0, 2R]
  int n_phi = 64;       // Gauss-Legendre nodes on the arc of a spherical mean
  double r_step = 0.0;  // Abel grid step, <= 0 selects a default
  int time_oversample = 1;  // time refinement of the derivative
};

/// Samples of W phi_N^0((r_n, 0), t_j) for a radial generator at scale T,
/// radii r_n = 2 R n / (n_r - 1).
struct RadialWaveTable {
  double R = 1.0;
  double T = 1.0;
  double r_spacing = 0.0;
  TimeGrid time;
  RowMatrix values;  // n_r x n_t

  int rows() const { return static_cast<int>(values.rows()); }
  /// Linear interpolation in the radius; zero beyond the last radius.
  double interpolate(double rho, int j) const;
};

RadialWaveTable forward_basis_radial(const GeneratingFunction& gf, const BasisGrid& grid,
                                     const DetectorGeometry& geometry, const TimeGrid& time,
                                     const WaveOptions& options = {});

/// Abel grid step used for a generator at scale T when options.r_step <= 0.
double default_basis_r_step(const GeneratingFunction& gf, double T, const TimeGrid& time);

/// W phi_N^k(z_i, t_j) from the radial table.
double basis_wave_at(const RadialWaveTable& table, const BasisGrid& grid, const Eigen::Vector2i& k,
                     const DetectorGeometry& geometry, int i, int j);

/// Spherical means of the pixel basis function k seen from z on the Abel grid.
/// Returns the index of the first node and the values on the nonzero range.
std::pair<int, Eigen::VectorXd> pixel_mean_profile(const BasisGrid& grid, const Eigen::Vector2i& k,
                                                   const Eigen::Vector2d& z,
                                                   const RadialGrid& rgrid);

/// Time series W chi_N^k(z_i, t_j), j = 0 .. n_t - 1, of a pixel basis function.
Eigen::VectorXd forward_pixel_series(const BasisGrid& grid, const Eigen::Vector2i& k,
                                     const DetectorGeometry& geometry, const TimeGrid& time,
                                     int i, double r_step = 0.0, int oversample = 1);

double forward_pixel(const BasisGrid& grid, const Eigen::Vector2i& k,
                     const DetectorGeometry& geometry, const TimeGrid& time, int i, int j,
                     double r_step = 0.0, int oversample = 1);

/// Quadrature weight of sample (i, j) in the data inner product.
double t_weight(const Sinogram& g, int i, int j);

/// Discrete <g1, g2>_t = t_final/(n_t - 1) sum_ij w_i g1 g2 t_j.
double t_inner(const Sinogram& g1, const Sinogram& g2);

/// L2 norm of the data on the detection circle times [0, t_final], with the
/// detector weights and the time step of t_inner but no t factor.
double data_l2_norm(const Sinogram& g);

enum class NoiseModel {
  Variance,    // sample variance of e equals level * data_l2_norm(g)
  RelativeL2,  // ||e||_2 = level * ||g||_2
};

/// Noise realization: standard normal draws from a seeded mt19937_64 stream,
/// rescaled so the magnitude is exact for the chosen model.
RowMatrix noise_realization(const Sinogram& g, double level, std::uint64_t seed,
                            NoiseModel model = NoiseModel::Variance);

Sinogram add_noise(const Sinogram& g, double level, std::uint64_t seed,
                   NoiseModel model = NoiseModel::Variance);

}  // namespace patgal
