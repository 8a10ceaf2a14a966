#include "patgal/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "patgal/parallel.hpp"

namespace patgal {

Eigen::Vector2d DetectorGeometry::detector(int i) const {
  const double angle = 2.0 * std::numbers::pi * (i + 1) / n_det;
  return R * Eigen::Vector2d(std::cos(angle), std::sin(angle));
}

double DetectorGeometry::weight() const { return 2.0 * std::numbers::pi * R / n_det; }

Eigen::VectorXd TimeGrid::times() const {
  Eigen::VectorXd t(n_t);
  for (int j = 0; j < n_t; ++j) t[j] = this->t(j);
  return t;
}

Sinogram zero_sinogram(const DetectorGeometry& geometry, const TimeGrid& time) {
  return Sinogram{geometry, time, RowMatrix::Zero(geometry.n_det, time.n_t)};
}

double spherical_mean_numeric(const std::function<double(const Eigen::Vector2d&)>& f,
                              const Eigen::Vector2d& z, double r, int n_phi) {
  if (r < 0.0) throw std::invalid_argument("spherical_mean_numeric: r must be nonnegative");
  if (n_phi < 4) throw std::invalid_argument("spherical_mean_numeric: n_phi must be >= 4");
  if (r == 0.0) return f(z);
  double sum = 0.0;
  for (int q = 0; q < n_phi; ++q) {
    const double theta = 2.0 * std::numbers::pi * q / n_phi;
    sum += f(z + r * Eigen::Vector2d(std::cos(theta), std::sin(theta)));
  }
  return sum / n_phi;
}

double square_spherical_mean(const Eigen::Vector2d& center, double half_side,
                             const Eigen::Vector2d& z, double r) {
  const Eigen::Vector2d p = z - center;
  const double h = half_side;
  auto inside = [&](const Eigen::Vector2d& q) {
    return q.x() >= -h && q.x() < h && q.y() >= -h && q.y() < h;
  };
  if (r <= 0.0) return inside(p) ? 1.0 : 0.0;

  const Eigen::Vector2d outside(std::max(std::abs(p.x()) - h, 0.0),
                                std::max(std::abs(p.y()) - h, 0.0));
  const double dmin = outside.norm();
  const double dmax = Eigen::Vector2d(std::abs(p.x()) + h, std::abs(p.y()) + h).norm();
  if (r >= dmax) return 0.0;
  if (dmin > 0.0 && r <= dmin) return 0.0;
  if (dmin == 0.0) {
    const double to_edge = std::min(h - std::abs(p.x()), h - std::abs(p.y()));
    if (r < to_edge) return 1.0;
  }

  // crossings of the circle with the four edge lines split it into arcs that
  // are either inside or outside
  double angles[10];
  int count = 0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto push = [&](double theta) {
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    angles[count++] = theta;
  };
  for (double edge : {-h, h}) {
    const double cx = (edge - p.x()) / r;
    if (std::abs(cx) <= 1.0) {
      const double a = std::acos(cx);
      push(a);
      push(-a);
    }
    const double cy = (edge - p.y()) / r;
    if (std::abs(cy) <= 1.0) {
      const double a = std::asin(cy);
      push(a);
      push(std::numbers::pi - a);
    }
  }
  if (count == 0) return inside(p + Eigen::Vector2d(r, 0.0)) ? 1.0 : 0.0;
  std::sort(angles, angles + count);
  double covered = 0.0;
  for (int q = 0; q < count; ++q) {
    const double lo = angles[q];
    const double hi = q + 1 < count ? angles[q + 1] : angles[0] + two_pi;
    if (hi - lo <= 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    if (inside(p + r * Eigen::Vector2d(std::cos(mid), std::sin(mid)))) covered += hi - lo;
  }
  return covered / two_pi;
}

Eigen::MatrixXd wave_matrix(const RadialGrid& rgrid, const TimeGrid& time, int oversample) {
  if (oversample < 1) throw std::invalid_argument("wave_matrix: oversample must be >= 1");
  const TimeGrid fine{time.t_final, time.n_t * oversample};
  const Eigen::MatrixXd full = time_derivative(abel_matrix(rgrid, fine.times()), fine.dt());
  // t_j of the coarse grid is fine sample oversample * (j + 1) - 1
  Eigen::MatrixXd out(time.n_t, rgrid.count);
  for (int j = 0; j < time.n_t; ++j) out.row(j) = full.row(oversample * (j + 1) - 1);
  return out;
}

Sinogram forward_phantom(const Phantom& phantom, const DetectorGeometry& geometry,
                         const TimeGrid& time, double r_step, int oversample) {
  if (!contained_in(phantom, geometry.R))
    throw std::invalid_argument("forward_phantom: phantom must lie inside the detection disc");
  const double step = r_step > 0.0 ? r_step : 0.5 * time.dt();
  const RadialGrid rgrid = radial_grid_covering(time.t_final, step);
  Eigen::MatrixXd means(rgrid.count, geometry.n_det);
  parallel_for(geometry.n_det, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Eigen::Vector2d z = geometry.detector(static_cast<int>(i));
      for (int n = 0; n < rgrid.count; ++n)
        means(n, static_cast<Eigen::Index>(i)) = exact_spherical_mean(phantom, z, rgrid.r(n));
    }
  });
  const Eigen::MatrixXd data = wave_matrix(rgrid, time, oversample) * means;
  Sinogram g = zero_sinogram(geometry, time);
  g.values = data.transpose();
  return g;
}

double RadialWaveTable::interpolate(double rho, int j) const {
  const double x = rho / r_spacing;
  const int last = rows() - 1;
  if (x >= last) return x <= last + 1e-9 ? values(last, j) : 0.0;
  const int n = static_cast<int>(x);
  const double lam = x - n;
  return (1.0 - lam) * values(n, j) + lam * values(n + 1, j);
}

double default_basis_r_step(const GeneratingFunction& gf, double T, const TimeGrid& time) {
  const double half = 0.5 * time.dt();
  if (const auto* kb = std::get_if<KaiserBessel>(&gf)) return std::min(half, kb->a * T / 10.0);
  return std::min(half, T / 8.0);
}

RadialWaveTable forward_basis_radial(const GeneratingFunction& gf, const BasisGrid& grid,
                                     const DetectorGeometry& geometry, const TimeGrid& time,
                                     const WaveOptions& options) {
  const auto* kb = std::get_if<KaiserBessel>(&gf);
  if (kb == nullptr) throw std::invalid_argument("forward_basis_radial: generator is not radial");
  if (options.n_r < 2) throw std::invalid_argument("forward_basis_radial: n_r must be >= 2");
  const double T = grid.T;
  const double support = kb->a * T;

  // profile of T^{-1} phi(x/T) tabulated in the squared radius
  constexpr int n_tab = 8193;
  Eigen::VectorXd tab(n_tab);
  for (int q = 0; q < n_tab; ++q)
    tab[q] = kb_profile(*kb, kb->a * std::sqrt(static_cast<double>(q) / (n_tab - 1))) / T;
  const double support_sq = support * support;
  auto profile_sq = [&](double rho_sq) {
    if (rho_sq >= support_sq) return 0.0;
    const double x = std::max(rho_sq, 0.0) / support_sq * (n_tab - 1);
    const int q = std::min(static_cast<int>(x), n_tab - 2);
    const double lam = x - q;
    return (1.0 - lam) * tab[q] + lam * tab[q + 1];
  };

  const double step = options.r_step > 0.0 ? options.r_step : default_basis_r_step(gf, T, time);
  const RadialGrid rgrid = radial_grid_covering(time.t_final, step);

  RadialWaveTable table;
  table.R = geometry.R;
  table.T = T;
  table.time = time;
  table.r_spacing = 2.0 * geometry.R / (options.n_r - 1);

  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(rgrid.count, options.n_r);
  parallel_for(options.n_r, [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const double D = table.r_spacing * static_cast<double>(n);
      const int lo = std::max(0, static_cast<int>(std::floor((D - support) / step)));
      const int hi = std::min(rgrid.count - 1, static_cast<int>(std::ceil((D + support) / step)));
      for (int q = lo; q <= hi; ++q)
        means(q, static_cast<Eigen::Index>(n)) =
            radial_spherical_mean(profile_sq, support, D, rgrid.r(q), options.n_phi);
    }
  });
  table.values = (wave_matrix(rgrid, time, options.time_oversample) * means).transpose();
  return table;
}

double basis_wave_at(const RadialWaveTable& table, const BasisGrid& grid, const Eigen::Vector2i& k,
                     const DetectorGeometry& geometry, int i, int j) {
  return table.interpolate((geometry.detector(i) - grid.center(k)).norm(), j);
}

std::pair<int, Eigen::VectorXd> pixel_mean_profile(const BasisGrid& grid, const Eigen::Vector2i& k,
                                                   const Eigen::Vector2d& z,
                                                   const RadialGrid& rgrid) {
  const Eigen::Vector2d c = grid.center(k);
  const double h = 0.5 * grid.T;
  const double rho = (z - c).norm();
  const double reach = h * std::numbers::sqrt2;
  const int lo = std::max(0, static_cast<int>(std::floor((rho - reach) / rgrid.step)));
  const int hi = std::min(rgrid.count - 1, static_cast<int>(std::ceil((rho + reach) / rgrid.step)));
  if (hi < lo) return {0, Eigen::VectorXd()};
  Eigen::VectorXd v(hi - lo + 1);
  // basis functions carry the L2 normalization 1/T
  for (int q = lo; q <= hi; ++q) v[q - lo] = square_spherical_mean(c, h, z, rgrid.r(q)) / grid.T;
  return {lo, v};
}

Eigen::VectorXd forward_pixel_series(const BasisGrid& grid, const Eigen::Vector2i& k,
                                     const DetectorGeometry& geometry, const TimeGrid& time,
                                     int i, double r_step, int oversample) {
  const double step = r_step > 0.0 ? r_step : default_basis_r_step(Pixel{}, grid.T, time);
  const RadialGrid rgrid = radial_grid_covering(time.t_final, step);
  const auto [lo, v] = pixel_mean_profile(grid, k, geometry.detector(i), rgrid);
  if (v.size() == 0) return Eigen::VectorXd::Zero(time.n_t);
  // the matrix only depends on the grids; consecutive calls usually share them
  thread_local std::tuple<double, int, double, int, int> key{-1.0, 0, 0.0, 0, 0};
  thread_local Eigen::MatrixXd wave;
  const std::tuple<double, int, double, int, int> now{rgrid.step, rgrid.count, time.t_final,
                                                      time.n_t, oversample};
  if (now != key) {
    wave = wave_matrix(rgrid, time, oversample);
    key = now;
  }
  return wave.middleCols(lo, v.size()) * v;
}

double forward_pixel(const BasisGrid& grid, const Eigen::Vector2i& k,
                     const DetectorGeometry& geometry, const TimeGrid& time, int i, int j,
                     double r_step, int oversample) {
  return forward_pixel_series(grid, k, geometry, time, i, r_step, oversample)[j];
}

double t_weight(const Sinogram& g, int /*i*/, int j) {
  return g.time.t_final / (g.time.n_t - 1) * g.geometry.weight() * g.time.t(j);
}

double t_inner(const Sinogram& g1, const Sinogram& g2) {
  if (g1.values.rows() != g2.values.rows() || g1.values.cols() != g2.values.cols() ||
      g1.geometry.n_det != g2.geometry.n_det || g1.time.n_t != g2.time.n_t)
    throw std::invalid_argument("t_inner: sinogram shapes differ");
  const Eigen::VectorXd t = g1.time.times();
  const Eigen::VectorXd per_time = (g1.values.cwiseProduct(g2.values)).colwise().sum().transpose();
  return g1.time.t_final / (g1.time.n_t - 1) * g1.geometry.weight() * per_time.dot(t);
}

double data_l2_norm(const Sinogram& g) {
  return std::sqrt(g.time.t_final / (g.time.n_t - 1) * g.geometry.weight() *
                   g.values.squaredNorm());
}

RowMatrix noise_realization(const Sinogram& g, double level, std::uint64_t seed,
                            NoiseModel model) {
  if (!(level >= 0.0)) throw std::invalid_argument("add_noise: level must be nonnegative");
  RowMatrix e = RowMatrix::Zero(g.values.rows(), g.values.cols());
  if (level == 0.0 || e.size() == 0) return e;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < e.size(); ++i) e.data()[i] = normal(rng);
  const double en = e.norm();
  if (en == 0.0) return e;
  const double target = model == NoiseModel::RelativeL2
                            ? level * g.values.norm()
                            : std::sqrt(level * data_l2_norm(g) * static_cast<double>(e.size()));
  return e * (target / en);
}

Sinogram add_noise(const Sinogram& g, double level, std::uint64_t seed, NoiseModel model) {
  Sinogram out = g;
  if (level == 0.0) return out;
  out.values += noise_realization(g, level, seed, model);
  return out;
}

}  // namespace patgal
