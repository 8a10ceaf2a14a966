#pragma once

#include <cmath>
#include <vector>

namespace patgal {

/// sin(x)/x with the removable singularity filled in.
template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) < Scalar(1e-4)) {
    const Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120);
  }
  return sin(x) / x;
}

/// Modified Bessel function of the first kind I_nu(x), nu >= 0, x >= 0.
///
/// Power series for x <= 50 (all terms positive, so no cancellation), Hankel
/// asymptotic expansion beyond. Throws std::domain_error on negative input.
double bessel_i(double nu, double x);

/// Bessel function of the first kind J_nu(x) of real order, nu >= 0, x >= 0.
///
/// Power series for small x, Miller backward recurrence normalized with the
/// Neumann sum (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x) in the
/// transition zone, Hankel asymptotics for large x.
double bessel_j(double nu, double x);

/// I_nu(x) / x^nu. Entire in x; equals 1/(2^nu Gamma(nu+1)) at x = 0.
double bessel_i_scaled(double nu, double x);

/// J_nu(x) / x^nu. Entire in x; equals 1/(2^nu Gamma(nu+1)) at x = 0.
double bessel_j_scaled(double nu, double x);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

}  // namespace patgal
