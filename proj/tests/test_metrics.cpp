#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "patgal/errors.hpp"
#include "patgal/experiments.hpp"
#include "patgal/galerkin.hpp"
#include "patgal/metrics.hpp"

using namespace patgal;

TEST_CASE("relative error examples") {
  std::mt19937_64 rng(1);
  Eigen::MatrixXd f(7, 5);
  for (auto& v : f.reshaped()) v = std::normal_distribution<double>()(rng);
  CHECK(relative_l2_error(f, f) == 0.0);
  CHECK(relative_l2_error(Eigen::MatrixXd::Zero(7, 5), f) == doctest::Approx(1.0));
  CHECK(relative_l2_error(2.0 * f, f) == doctest::Approx(1.0));
  const Eigen::MatrixXd g = f + 0.1 * Eigen::MatrixXd::Ones(7, 5);
  CHECK(relative_l2_error(3.7 * g, 3.7 * f) == doctest::Approx(relative_l2_error(g, f)).epsilon(1e-14));
  CHECK_THROWS(relative_l2_error(f, Eigen::MatrixXd::Zero(7, 5)));
  CHECK_THROWS(relative_l2_error(f, Eigen::MatrixXd::Ones(5, 7)));
}

TEST_CASE("stability gap basics") {
  const BasisGrid grid = make_grid_for_count(20, 1.3265);
  const GramKernel kernel = system_kernel(KaiserBessel{}, 1.3265);
  std::mt19937_64 rng(2);
  Eigen::VectorXd a(grid.size()), b(grid.size());
  for (auto& v : a) v = std::normal_distribution<double>()(rng);
  for (auto& v : b) v = std::normal_distribution<double>()(rng);
  const StabilityGap same = stability_gap(a, a, grid, kernel, 0.3);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == doctest::Approx(std::sqrt(2.0) * 0.3));
  const StabilityGap ab = stability_gap(a, b, grid, kernel, 1.0);
  const StabilityGap ba = stability_gap(b, a, grid, kernel, 1.0);
  CHECK(ab.lhs == doctest::Approx(ba.lhs).epsilon(1e-14));
  const Eigen::VectorXd d = a - b;
  CHECK(ab.lhs == doctest::Approx(std::sqrt(d.dot(apply_gram(grid, kernel, d)))).epsilon(1e-14));
}

TEST_CASE("Galerkin reconstructions move by at most the data perturbation") {
  const ExperimentConfig c;
  Reconstructor rec(c);
  const BasisWaveOperator& op = rec.basis_operator();
  const GramKernel& kernel = rec.basis_kernel();
  const Sinogram clean = simulate_clean(c);
  for (SolverKind kind : {SolverKind::Direct, SolverKind::CG}) {
    SolverOptions opts;
    opts.kind = kind;
    const Eigen::VectorXd c0 = solve_system(build_system(kernel, op, clean), opts);
    // exact solves of identical data do not move
    CHECK(stability_gap(c0, solve_system(build_system(kernel, op, clean), opts), op.grid(), kernel, 0.0).lhs <= 1e-12);
    for (double p : {0.025, 0.05}) {
      const Sinogram noisy = add_noise(clean, p, c.seed);
      Sinogram e = noisy;
      e.values -= clean.values;
      const double delta = std::sqrt(t_inner(e, e));
      const Eigen::VectorXd cn = solve_system(build_system(kernel, op, noisy), opts);
      const StabilityGap gap = stability_gap(cn, c0, op.grid(), kernel, delta);
      CAPTURE(p);
      CHECK(gap.lhs <= 1.10 * gap.rhs);
    }
  }
}
