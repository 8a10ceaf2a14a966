#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "patgal/wave_operator.hpp"

using namespace patgal;

namespace {

const DetectorGeometry kGeo{1.0, 60};
const TimeGrid kTime{3.0, 240};

RowMatrix gaussian_data(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  RowMatrix y(kGeo.n_det, kTime.n_t);
  for (auto& v : y.reshaped()) v = normal(rng);
  return y;
}

void dot_test(const BasisWaveOperator& op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd c(op.grid().size());
    for (auto& v : c) v = normal(rng);
    const RowMatrix y = gaussian_data(rng);
    const double lhs = (op.apply(c).array() * y.array()).sum();
    const double rhs = c.dot(op.adjoint(y));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

}  // namespace

TEST_CASE("radial operator: adjoint and columns") {
  const BasisGrid grid = make_grid(0.1, 1.3);
  const auto op = make_wave_operator(KaiserBessel{}, grid, kGeo, kTime);
  const auto* radial = dynamic_cast<const RadialTableOperator*>(op.get());
  REQUIRE(radial != nullptr);
  dot_test(*op, 1);

  for (const Eigen::Vector2i k : {Eigen::Vector2i(0, 0), Eigen::Vector2i(3, -2), Eigen::Vector2i(-5, 1)}) {
    const int pos = grid.find(k);
    REQUIRE(pos >= 0);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(grid.size());
    e[pos] = 1.0;
    const RowMatrix col = op->apply(e);
    double worst = 0.0;
    for (int i = 0; i < kGeo.n_det; i += 7)
      for (int j = 0; j < kTime.n_t; ++j)
        worst = std::max(worst, std::abs(col(i, j) - basis_wave_at(radial->table(), grid, k, kGeo, i, j)));
    CHECK(worst < 1e-12);
  }
  CHECK(op->apply(Eigen::VectorXd::Zero(grid.size())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pixel operator: adjoint and columns") {
  const BasisGrid grid = make_grid(0.1, 1.0);
  const auto op = make_wave_operator(Pixel{}, grid, kGeo, kTime);
  dot_test(*op, 2);
  for (const Eigen::Vector2i k : {Eigen::Vector2i(0, 0), Eigen::Vector2i(4, 7)}) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(grid.size());
    e[grid.find(k)] = 1.0;
    const RowMatrix col = op->apply(e);
    for (int i : {0, 17, 59}) {
      const Eigen::VectorXd series = forward_pixel_series(grid, k, kGeo, kTime, i);
      CHECK((col.row(i).transpose() - series).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("weighted data carries the inner product weights") {
  std::mt19937_64 rng(3);
  Sinogram g = zero_sinogram(kGeo, kTime), h = zero_sinogram(kGeo, kTime);
  g.values = gaussian_data(rng);
  h.values = gaussian_data(rng);
  CHECK((weighted_data(g).array() * h.values.array()).sum() == doctest::Approx(t_inner(g, h)).epsilon(1e-12));
}
