#pragma once

#include <Eigen/Core>
#include <vector>

namespace patgal {

struct Disc {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  double amplitude = 1.0;
};

/// Superposition of scaled disc indicators.
struct Phantom {
  std::vector<Disc> discs;
};

/// Sum of amplitudes of all discs with ||x - c|| <= radius.
double eval(const Phantom& phantom, const Eigen::Vector2d& x);

/// Fraction of the circle {z + r w} lying inside the disc.
double disc_circle_fraction(const Disc& disc, const Eigen::Vector2d& z, double r);

/// (1/2pi) int_{S^1} f(z + r w) dw in closed form.
double exact_spherical_mean(const Phantom& phantom, const Eigen::Vector2d& z, double r);

/// Area of the intersection of two discs.
double disc_overlap_area(const Disc& a, const Disc& b);

/// L2 inner product of two phantoms, exact (pairwise overlap areas).
double inner_product(const Phantom& f1, const Phantom& f2);

/// True when every disc lies in the open disc of radius R around the origin.
bool contained_in(const Phantom& phantom, double R);

Phantom default_phantom();

}  // namespace patgal
