#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "patgal/phantom.hpp"

using namespace patgal;
using Eigen::Vector2d;

TEST_CASE("eval of indicator superpositions") {
  const Phantom empty;
  CHECK(eval(empty, Vector2d(0.1, 0.2)) == 0.0);

  Phantom one;
  one.discs.push_back({Vector2d(0, 0), 0.5, 1.0});
  CHECK(eval(one, Vector2d(0.3, 0)) == 1.0);
  CHECK(eval(one, Vector2d(0.6, 0)) == 0.0);
  CHECK(eval(one, Vector2d(0.5, 0)) == 1.0);  // boundary counts as inside

  Phantom two = one;
  two.discs.push_back({Vector2d(0.4, 0), 0.5, 1.0});
  CHECK(eval(two, Vector2d(0.2, 0)) == 2.0);
}

TEST_CASE("default phantom") {
  const Phantom f = default_phantom();
  REQUIRE(f.discs.size() == 3);
  CHECK(eval(f, Vector2d(-0.35, 0.2)) == 1.0);
  CHECK(eval(f, Vector2d(0.9, 0.9)) == 0.0);
  CHECK(contained_in(f, 1.0));
  double mass = 0.0;
  for (const auto& d : f.discs) mass += d.amplitude * std::numbers::pi * d.radius * d.radius;
  CHECK(mass == doctest::Approx(std::numbers::pi * 0.1057).epsilon(1e-12));
}

TEST_CASE("exact spherical mean special cases") {
  Phantom f;
  f.discs.push_back({Vector2d(0, 0), 0.5, 1.0});
  CHECK(exact_spherical_mean(f, Vector2d(0, 0), 0.3) == 1.0);
  CHECK(exact_spherical_mean(f, Vector2d(1, 0), 0.4) == 0.0);
  CHECK(exact_spherical_mean(f, Vector2d(1, 0), 1.6) == 0.0);
  CHECK(exact_spherical_mean(f, Vector2d(0.1, 0), 0.0) == 1.0);

  Phantom g;
  g.discs.push_back({Vector2d(0.2, 0), 0.3, 1.0});
  const Vector2d z(1, 0);
  auto fe = [&](const Vector2d& x) { return eval(g, x); };
  CHECK(std::abs(exact_spherical_mean(g, z, 0.8) - oracle::circle_mean(fe, z, 0.8, 100000)) < 1e-5);
}

TEST_CASE("exact spherical mean matches angular quadrature at random circles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Phantom f = default_phantom();
  auto fe = [&](const Vector2d& x) { return eval(f, x); };
  double worst = 0.0;
  for (int q = 0; q < 50; ++q) {
    const double th = 2.0 * std::numbers::pi * u(rng);
    const Vector2d z(std::cos(th), std::sin(th));
    const double r = 2.0 * u(rng);
    worst = std::max(worst, std::abs(exact_spherical_mean(f, z, r) - oracle::circle_mean(fe, z, r, 10000)));
  }
  CHECK(worst < 5e-4);
}

TEST_CASE("spherical mean is linear in the components") {
  const Phantom f = default_phantom();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int q = 0; q < 20; ++q) {
    const Vector2d z(u(rng) - 1.0, u(rng) - 1.0);
    const double r = u(rng);
    double parts = 0.0;
    for (const auto& d : f.discs) {
      Phantom single;
      single.discs.push_back(d);
      parts += exact_spherical_mean(single, z, r);
    }
    CHECK(exact_spherical_mean(f, z, r) == doctest::Approx(parts).epsilon(1e-14));
  }
}

TEST_CASE("disc overlap areas and inner products") {
  const Disc a{Vector2d(0, 0), 0.5, 1.0};
  CHECK(disc_overlap_area(a, a) == doctest::Approx(std::numbers::pi * 0.25).epsilon(1e-14));
  CHECK(disc_overlap_area(a, Disc{Vector2d(1.2, 0), 0.5, 1.0}) == 0.0);
  CHECK(disc_overlap_area(a, Disc{Vector2d(0.1, 0), 0.2, 1.0}) ==
        doctest::Approx(std::numbers::pi * 0.04).epsilon(1e-14));

  // lens area against a fine midpoint grid
  const Disc b{Vector2d(0.4, 0.1), 0.3, 1.0};
  const int n = 4000;
  const double h = 2.0 / n;
  long inside = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vector2d x(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h);
      if ((x - a.center).norm() <= a.radius && (x - b.center).norm() <= b.radius) ++inside;
    }
  CHECK(disc_overlap_area(a, b) == doctest::Approx(inside * h * h).epsilon(2e-3));

  const Phantom f = default_phantom();
  double disjoint = 0.0;
  for (const auto& d : f.discs)
    disjoint += d.amplitude * d.amplitude * std::numbers::pi * d.radius * d.radius;
  CHECK(inner_product(f, f) == doctest::Approx(disjoint).epsilon(1e-14));
}

TEST_CASE("containment") {
  Phantom f;
  f.discs.push_back({Vector2d(0.6, 0), 0.4, 1.0});
  CHECK_FALSE(contained_in(f, 1.0));
  f.discs[0].radius = 0.39;
  CHECK(contained_in(f, 1.0));
  CHECK(contained_in(Phantom{}, 1.0));
}
