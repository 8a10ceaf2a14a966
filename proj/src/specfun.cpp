#include "patgal/specfun.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace patgal {
namespace {

constexpr double kSeriesEps = 1e-17;

void check_domain(double nu, double x, const char* name) {
  if (!(nu >= 0.0) || !(x >= 0.0)) {
    throw std::domain_error(std::string(name) + ": order and argument must be nonnegative");
  }
}

// sum_k sign^k (x^2/4)^k / (2^nu k! Gamma(k+nu+1))
double scaled_series(double nu, double x, double sign) {
  const double q = 0.25 * x * x;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= sign * q / (k * (k + nu));
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) break;
  }
  return sum;
}

double bessel_i_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > std::abs(prev) && k > 2) break;
    sum += term;
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) break;
    prev = term;
  }
  return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
}

double bessel_j_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > std::abs(prev) && k > 2) break;
    const bool flip = ((k + 1) / 2) % 2 == 0;  // k=1,2 -> +/-, k=3,4 -> -/+
    if (k % 2 == 1) {
      q += flip ? -term : term;
    } else {
      p += flip ? term : -term;
    }
    if (std::abs(term) <= kSeriesEps) break;
    prev = term;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j_miller(double nu, double x) {
  const int n_start = 2 * static_cast<int>((x + 20.0 + std::sqrt(40.0 * x)) / 2.0) + 2;
  const int n_half = n_start / 2;

  // Neumann normalization weights w_k = (nu+2k) Gamma(nu+k)/k!.
  std::vector<double> weight(n_half + 1);
  if (nu == 0.0) {
    weight[0] = 1.0;
    std::fill(weight.begin() + 1, weight.end(), 2.0);
  } else {
    const double g = std::tgamma(nu + 1.0);
    weight[0] = g;
    double c = g;  // Gamma(nu+k)/k! at k = 1
    for (int k = 1; k <= n_half; ++k) {
      if (k > 1) c *= (nu + k - 1.0) / k;
      weight[k] = (nu + 2.0 * k) * c;
    }
  }

  double j_above = 0.0;
  double j = 1e-30;
  double norm = weight[n_half] * j;
  for (int n = n_start; n > 0; --n) {
    const double j_below = 2.0 * (nu + n) / x * j - j_above;
    j_above = j;
    j = j_below;
    if ((n - 1) % 2 == 0) norm += weight[(n - 1) / 2] * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      j_above *= 1e-250;
      norm *= 1e-250;
    }
  }
  return j * std::pow(0.5 * x, nu) / norm;
}

bool use_hankel(double nu, double x) { return x >= 25.0 + 2.0 * nu; }

}  // namespace

double bessel_i(double nu, double x) {
  check_domain(nu, x, "bessel_i");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 50.0) return std::pow(x, nu) * scaled_series(nu, x, 1.0);
  return bessel_i_asymptotic(nu, x);
}

double bessel_i_scaled(double nu, double x) {
  check_domain(nu, x, "bessel_i_scaled");
  if (x <= 50.0) return scaled_series(nu, x, 1.0);
  return bessel_i_asymptotic(nu, x) / std::pow(x, nu);
}

double bessel_j(double nu, double x) {
  check_domain(nu, x, "bessel_j");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 8.0) return std::pow(x, nu) * scaled_series(nu, x, -1.0);
  if (use_hankel(nu, x)) return bessel_j_hankel(nu, x);
  return bessel_j_miller(nu, x);
}

double bessel_j_scaled(double nu, double x) {
  check_domain(nu, x, "bessel_j_scaled");
  if (x <= 8.0) return scaled_series(nu, x, -1.0);
  return bessel_j(nu, x) / std::pow(x, nu);
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

}  // namespace patgal
