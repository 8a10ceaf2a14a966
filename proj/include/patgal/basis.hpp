#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace patgal {

/// Indicator of [-1/2, 1/2)^2.
struct Pixel {};

/// Generalized Kaiser-Bessel window of order m, taper gamma, support radius a.
struct KaiserBessel {
  int m = 1;
  double gamma = 2.0;
  double a = 2.0;
};

/// Tensor-product hat (1-|x1|)(1-|x2|) on [-1,1]^2.
struct BilinearFE {};

using GeneratingFunction = std::variant<Pixel, KaiserBessel, BilinearFE>;

std::string name(const GeneratingFunction& gf);

/// True for generators that depend on ||x|| only.
bool is_radial(const GeneratingFunction& gf);

/// Half-width of the smallest centered square containing the support.
double support_half_width(const GeneratingFunction& gf);

/// True if the translates phi(x) and phi(x - offset) can overlap on a set of
/// positive measure.
bool supports_overlap(const GeneratingFunction& gf, const Eigen::Vector2d& offset);

double eval(const GeneratingFunction& gf, const Eigen::Vector2d& x);

/// Fourier transform with the (2pi)^{-1} convention in two dimensions.
double eval_hat(const GeneratingFunction& gf, const Eigen::Vector2d& xi);

/// KB profile as a function of the radius.
double kb_profile(const KaiserBessel& kb, double rho);

/// Reconstruction lattice: centers T s k for k with ||T s k|| < R.
struct BasisGrid {
  double T = 1.0;
  double s = 1.0;
  double R = 1.0;
  int kmax = 0;                           // bounding box is [-kmax, kmax]^2
  std::vector<Eigen::Vector2i> indices;   // row-major over the bounding box
  std::vector<int> lookup;                // (2 kmax + 1)^2 -> position or -1

  std::size_t size() const { return indices.size(); }
  Eigen::Vector2d center(const Eigen::Vector2i& k) const { return T * s * k.cast<double>(); }
  Eigen::Vector2d center(std::size_t pos) const { return center(indices[pos]); }
  /// Position of k in `indices`, or -1 if k is not in the index set.
  int find(const Eigen::Vector2i& k) const;
};

BasisGrid make_grid(double T, double s, double R = 1.0);

/// Grid with s T = 2 / (N - 1).
BasisGrid make_grid_for_count(int N, double s, double R = 1.0);

/// T^{-1} phi(x/T - s k).
double eval_basis(const GeneratingFunction& gf, const BasisGrid& grid, const Eigen::Vector2i& k,
                  const Eigen::Vector2d& x);

/// Unit-scale Gram values G[n] = <phi(.), phi(. - s n)> for n in [-K, K]^2.
struct GramKernel {
  int K = 0;
  double s = 1.0;
  Eigen::MatrixXd table;  // (2K+1) x (2K+1), entry (n1 + K, n2 + K)

  double operator()(int n1, int n2) const {
    if (std::abs(n1) > K || std::abs(n2) > K) return 0.0;
    return table(n1 + K, n2 + K);
  }
};

/// Gram kernel by the rectangle rule on an M x M grid over the support box.
/// Pixel entries are computed in closed form.
GramKernel gram_kernel(const GeneratingFunction& gf, double s, int M = 401);

/// Gram kernel for a radial generator by Gauss-Legendre quadrature in polar
/// coordinates, split at the support boundaries of the shifted copy.
GramKernel gram_kernel_polar(const KaiserBessel& kb, double s, int n_nodes = 48);

/// <phi, phi(. - d e1)> for a KB window, by polar Gauss-Legendre quadrature.
double kb_overlap(const KaiserBessel& kb, double d, int n_nodes = 48);

/// Spherical mean of a radial function with support radius `support` centered
/// at distance D from the circle center, at circle radius r. `profile` takes
/// the squared distance.
double radial_spherical_mean(const std::function<double(double)>& profile_sq, double support,
                             double D, double r, int n_nodes);

/// sum_k |phi_hat(eta + 2 pi k / s)|^2 over k in Z^2.
/// KB windows go through the Poisson dual (a finite sum over the autocorrelation).
double lattice_sum(const GeneratingFunction& gf, double s, const Eigen::Vector2d& eta);

/// Direct truncated sum over k for a KB window. Throws
/// std::runtime_error if the analytic tail bound is not met by |k| <= 64.
double kb_lattice_sum_direct(const KaiserBessel& kb, double s, const Eigen::Vector2d& eta);

/// 1 - |phi_hat(T xi)|^2 / lattice_sum(T xi).
double error_kernel(const GeneratingFunction& gf, double s, double T, const Eigen::Vector2d& xi);

/// Main term of the approximation error, [int |f_hat|^2 E dxi]^{1/2} over the
/// Nyquist box, by tensor trapezoid with `resolution` nodes per axis.
double approx_error_main(const GeneratingFunction& gf, double s, double T,
                         const std::function<double(const Eigen::Vector2d&)>& fhat_sq,
                         int resolution = 129);

/// Riesz bound estimates from the lattice sum sampled on [0, 2pi/s]^2.
std::pair<double, double> riesz_bounds(const GeneratingFunction& gf, double s,
                                       int sample_resolution = 33);

/// Fourier transform of the orthonormalized generator.
double orthonormalized_hat(const GeneratingFunction& gf, double s, const Eigen::Vector2d& xi);

/// Max relative deviation of sum_m phi(x - m s) from 2 pi phi_hat(0) / s^2.
double partition_of_unity_defect(const GeneratingFunction& gf, double s,
                                 int sample_resolution = 41);

/// Asymptotic saturation error sum_{k != 0} |phi_hat(2 pi k/s)|^2 / sum_k.
double saturation_error(const GeneratingFunction& gf, double s);

}  // namespace patgal
