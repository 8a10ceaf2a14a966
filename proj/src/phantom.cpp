#include "patgal/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace patgal {

double eval(const Phantom& phantom, const Eigen::Vector2d& x) {
  double value = 0.0;
  for (const auto& d : phantom.discs) {
    if ((x - d.center).norm() <= d.radius) value += d.amplitude;
  }
  return value;
}

double disc_circle_fraction(const Disc& disc, const Eigen::Vector2d& z, double r) {
  const double dist = (z - disc.center).norm();
  const double rho = disc.radius;
  if (r <= rho - dist) return 1.0;
  if (r >= dist + rho || r <= dist - rho) return 0.0;
  const double c = (dist * dist + r * r - rho * rho) / (2.0 * dist * r);
  return std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi;
}

double exact_spherical_mean(const Phantom& phantom, const Eigen::Vector2d& z, double r) {
  if (r <= 0.0) return eval(phantom, z);
  double value = 0.0;
  for (const auto& d : phantom.discs) value += d.amplitude * disc_circle_fraction(d, z, r);
  return value;
}

double disc_overlap_area(const Disc& a, const Disc& b) {
  const double d = (a.center - b.center).norm();
  const double r1 = a.radius;
  const double r2 = b.radius;
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return std::numbers::pi * r * r;
  }
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(k, 0.0));
}

double inner_product(const Phantom& f1, const Phantom& f2) {
  double sum = 0.0;
  for (const auto& a : f1.discs)
    for (const auto& b : f2.discs) sum += a.amplitude * b.amplitude * disc_overlap_area(a, b);
  return sum;
}

bool contained_in(const Phantom& phantom, double R) {
  return std::all_of(phantom.discs.begin(), phantom.discs.end(),
                     [R](const Disc& d) { return d.center.norm() + d.radius < R; });
}

Phantom default_phantom() {
  Phantom p;
  p.discs.push_back({Eigen::Vector2d(-0.35, 0.2), 0.25, 1.0});
  p.discs.push_back({Eigen::Vector2d(0.3, -0.25), 0.18, 0.8});
  p.discs.push_back({Eigen::Vector2d(0.1, 0.35), 0.12, 1.2});
  return p;
}

}  // namespace patgal
