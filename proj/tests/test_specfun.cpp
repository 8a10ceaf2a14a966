#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "patgal/specfun.hpp"

using namespace patgal;

TEST_CASE("sinc values and symmetry") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(std::numbers::pi)) < 1e-15);
  CHECK(sinc(std::numbers::pi / 2) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  double worst = 0.0;
  for (int q = 0; q < 10000; ++q) {
    const double x = -100.0 + 200.0 * q / 9999.0;
    CHECK(std::abs(sinc(x)) <= 1.0);
    worst = std::max(worst, std::abs(sinc(x) - sinc(-x)));
  }
  CHECK(worst == 0.0);
  // continuity across the small-argument branch
  CHECK(sinc(0.99e-4) == doctest::Approx(std::sin(0.99e-4) / 0.99e-4).epsilon(1e-15));
}

TEST_CASE("bessel_i special values") {
  CHECK(bessel_i(0, 0) == 1.0);
  CHECK(bessel_i(1, 0) == 0.0);
  CHECK(bessel_i(0, 1) == doctest::Approx(1.2660658777520082).epsilon(1e-14));
  CHECK_THROWS_AS(bessel_i(-1, 1), std::domain_error);
  CHECK_THROWS_AS(bessel_i(1, -1), std::domain_error);
}

TEST_CASE("bessel_i against extended precision series") {
  for (double nu : {0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 5.5, 10.0}) {
    for (double x : {1e-3, 0.1, 0.7, 2.0, 5.0, 12.0, 20.0, 35.0, 50.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(bessel_i(nu, x) == doctest::Approx(oracle::bessel_i(nu, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel_i asymptotic branch agrees with the library") {
  for (double nu : {0.0, 1.0, 2.0, 3.5}) {
    for (double x : {50.5, 60.0, 100.0, 200.0}) {
      CHECK(bessel_i(nu, x) == doctest::Approx(std::cyl_bessel_i(nu, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel_i scaled small-argument limit and recurrence") {
  for (double nu : {0.0, 1.0, 2.0, 3.5}) {
    const double limit = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
    CHECK(bessel_i_scaled(nu, 1e-6) == doctest::Approx(limit).epsilon(1e-6));
    CHECK(bessel_i_scaled(nu, 0.0) == doctest::Approx(limit).epsilon(1e-15));
  }
  for (int m : {1, 2, 3, 5}) {
    for (double x : {0.5, 2.0, 10.0}) {
      const double lhs = bessel_i(m - 1, x) - bessel_i(m + 1, x);
      const double rhs = 2.0 * m / x * bessel_i(m, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("bessel_j special values") {
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(2, 0) == 0.0);
  CHECK_THROWS_AS(bessel_j(0, -1), std::domain_error);
  for (double x : {1.0, 2.0, 5.0}) {
    CHECK(bessel_j(0.5, x) ==
          doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x)).epsilon(1e-10));
  }
}

TEST_CASE("first zero of J0 by bisection") {
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(0, mid) > 0 ? lo : hi) = mid;
  }
  CHECK(lo == doctest::Approx(2.404825557695773).epsilon(1e-12));
}

// Relative accuracy near a zero of J is meaningless; measure the error
// against the local amplitude max(|J|, sqrt(2/(pi x))).
static double j_error(double nu, double x, double ref) {
  const double scale = std::max(std::abs(ref), std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * x))));
  return std::abs(bessel_j(nu, x) - ref) / scale;
}

TEST_CASE("bessel_j against series in the small and transition range") {
  for (double nu : {0.0, 1.0, 1.5, 2.0, 3.0, 4.5, 10.0}) {
    for (double x : {0.01, 0.5, 3.0, 7.9, 8.1, 12.0, 16.0, 20.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(j_error(nu, x, oracle::bessel_j(nu, x)) < 1e-10);
    }
  }
}

TEST_CASE("bessel_j half-integer closed forms up to x = 200") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.2, 200.0);
  for (int q = 0; q < 300; ++q) {
    const double x = ux(rng);
    for (int n = 0; n < 3; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(j_error(n + 0.5, x, oracle::bessel_j_half(n, x)) < 1e-10);
    }
  }
}

TEST_CASE("bessel_j integer orders agree with the library across branches") {
  for (double nu : {0.0, 1.0, 2.0, 3.0, 7.0}) {
    for (double x = 0.3; x < 200.0; x *= 1.37) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(j_error(nu, x, std::cyl_bessel_j(nu, x)) < 1e-10);
    }
  }
}

TEST_CASE("bessel_j scaled is continuous at the origin") {
  for (double nu : {2.0, 3.0}) {
    const double limit = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
    CHECK(bessel_j_scaled(nu, 0.0) == doctest::Approx(limit).epsilon(1e-15));
    CHECK(bessel_j_scaled(nu, 1e-5) == doctest::Approx(limit).epsilon(1e-9));
  }
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto rule = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double sum = 0.0;
      for (int q = 0; q < n; ++q) sum += rule.weights[q] * std::pow(rule.nodes[q], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
  CHECK_THROWS(gauss_legendre(0));
}
