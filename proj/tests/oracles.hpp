#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "patgal/basis.hpp"
#include "patgal/phantom.hpp"
#include "patgal/specfun.hpp"

namespace oracle {

// sum_k sign^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) in extended precision.
inline long double bessel_series(long double nu, long double x, int sign, int terms = 400) {
  const long double q = x * x / 4.0L;
  long double term = std::pow(x / 2.0L, nu) / std::tgamma(nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= sign * q / (k * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

inline double bessel_i(double nu, double x) { return static_cast<double>(bessel_series(nu, x, 1)); }
inline double bessel_j(double nu, double x) { return static_cast<double>(bessel_series(nu, x, -1)); }

// J_{n+1/2} in closed form via spherical Bessel functions, n = 0, 1, 2.
inline double bessel_j_half(int n, double x) {
  const double pre = std::sqrt(2.0 * x / M_PI);
  const double s = std::sin(x), c = std::cos(x);
  switch (n) {
    case 0: return pre * s / x;
    case 1: return pre * (s / (x * x) - c / x);
    default: return pre * ((3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x));
  }
}

// Disjoint random discs inside the disc of radius 0.9.
inline patgal::Phantom random_disjoint_phantom(std::mt19937_64& rng, int min_discs = 2,
                                               int max_discs = 4) {
  std::uniform_int_distribution<int> count(min_discs, max_discs);
  std::uniform_real_distribution<double> radius(0.08, 0.3);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> coord(-0.9, 0.9);
  patgal::Phantom p;
  const int n = count(rng);
  while (static_cast<int>(p.discs.size()) < n) {
    patgal::Disc d;
    d.radius = radius(rng);
    d.center = Eigen::Vector2d(coord(rng), coord(rng));
    d.amplitude = amp(rng);
    if (d.center.norm() + d.radius >= 0.9) continue;
    bool ok = true;
    for (const auto& e : p.discs)
      if ((e.center - d.center).norm() <= e.radius + d.radius + 0.02) ok = false;
    if (ok) p.discs.push_back(d);
  }
  return p;
}

// (1/2pi) int f(z + r w) dw by the n-node trapezoid rule.
template <class F>
double circle_mean(const F& f, const Eigen::Vector2d& z, double r, int n) {
  double sum = 0.0;
  for (int q = 0; q < n; ++q) {
    const double th = 2.0 * M_PI * (q + 0.5) / n;
    sum += f(Eigen::Vector2d(z.x() + r * std::cos(th), z.y() + r * std::sin(th)));
  }
  return sum / n;
}

// (2pi)^{-1} int f(x) cos(xi.x) dx over [-h, h]^2, tensor trapezoid with n
// nodes per axis. f must be even and vanish on the box boundary.
template <class F>
double fourier2d(const F& f, double h, int n, const Eigen::Vector2d& xi) {
  const double dx = 2.0 * h / (n - 1);
  double sum = 0.0;
  for (int i = 1; i < n - 1; ++i) {
    const double x = -h + dx * i;
    for (int j = 1; j < n - 1; ++j) {
      const double y = -h + dx * j;
      sum += f(Eigen::Vector2d(x, y)) * std::cos(xi.x() * x + xi.y() * y);
    }
  }
  return sum * dx * dx / (2.0 * M_PI);
}

// Composite Gauss-Legendre of g on [lo, hi] with `panels` panels whose nodes
// cluster at both panel ends (smoothstep map), for integrands with endpoint
// kinks of the form (x - lo)^p.
template <class G>
double clustered_integral(const G& g, double lo, double hi, int panels, int nodes) {
  const patgal::GaussLegendre gl = patgal::gauss_legendre(nodes);
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (int q = 0; q < nodes; ++q) {
      const double v = 0.5 * (1.0 + gl.nodes[q]);
      const double x = v * v * (3.0 - 2.0 * v);
      const double jac = 6.0 * v * (1.0 - v);
      sum += 0.5 * gl.weights[q] * jac * width * g(a + width * x);
    }
  }
  return sum;
}

// <phi, phi(. - d e1)> for a KB window, integrating along rays from the
// first center: for each angle the second support cuts the ray in a chord
// with analytic end points. Breakpoints in the angle sit where the chord
// touches r = a (cos th = d / 2a) and where the ray is tangent to the second
// support (sin th = a / d).
inline double kb_overlap_rays(const patgal::KaiserBessel& kb, double d) {
  const double a = kb.a;
  if (d >= 2.0 * a) return 0.0;
  auto chord = [&](double th) {
    const double c = std::cos(th);
    const double sn = std::sin(th);
    const double disc = a * a - d * d * sn * sn;
    if (disc <= 0.0) return 0.0;
    const double root = std::sqrt(disc);
    const double lo = std::max(0.0, d * c - root);
    const double hi = std::min(a, d * c + root);
    if (hi <= lo) return 0.0;
    auto integrand = [&](double r) {
      const double r2 = std::hypot(r * c - d, r * sn);
      return r * patgal::kb_profile(kb, r) * patgal::kb_profile(kb, r2);
    };
    return clustered_integral(integrand, lo, hi, 2, 40);
  };
  std::vector<double> breaks = {0.0, M_PI};
  if (d > 0.0) breaks.push_back(std::acos(std::min(1.0, d / (2.0 * a))));
  if (d > a) breaks.push_back(std::asin(a / d));
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
    if (breaks[b + 1] > breaks[b]) total += clustered_integral(chord, breaks[b], breaks[b + 1], 8, 40);
  return 2.0 * total;
}

}  // namespace oracle
