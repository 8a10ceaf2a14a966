#include "patgal/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "patgal/specfun.hpp"

namespace patgal {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double kb_hat_radial(const KaiserBessel& kb, double rho) {
  const double nu = 1.0 + kb.m;
  const double norm = kb.a * kb.a / bessel_i_scaled(kb.m, kb.gamma);
  const double q = kb.gamma * kb.gamma - kb.a * kb.a * rho * rho;
  // both scaled functions are entire, so the branch point needs no special case
  if (q >= 0.0) return norm * bessel_i_scaled(nu, std::sqrt(q));
  return norm * bessel_j_scaled(nu, std::sqrt(-q));
}

// Autocorrelation of the 1D factor of a separable generator.
double pixel_autocorr(double y) { return std::max(0.0, 1.0 - std::abs(y)); }

double hat_autocorr(double y) {
  const double u = std::abs(y);
  if (u >= 2.0) return 0.0;
  if (u <= 1.0) return 2.0 / 3.0 - u * u + 0.5 * u * u * u;
  const double v = 2.0 - u;
  return v * v * v / 6.0;
}

// 1D lattice sum via Poisson summation of the autocorrelation.
double separable_lattice_1d(double (*autocorr)(double), double reach, double s, double eta) {
  double sum = autocorr(0.0);
  for (int n = 1; s * n < reach; ++n) sum += 2.0 * autocorr(s * n) * std::cos(s * n * eta);
  return s / kTwoPi * sum;
}

struct KbLatticeSum {
  double total = 0.0;
  double center = 0.0;
};

KbLatticeSum kb_lattice_sum(const KaiserBessel& kb, double s, const Eigen::Vector2d& eta) {
  const double step = kTwoPi / s;
  const double nu = 1.0 + kb.m;
  const double envelope = 1.1 * std::sqrt(2.0 / std::numbers::pi) * kb.a * kb.a /
                          bessel_i_scaled(kb.m, kb.gamma);
  auto term = [&](int k1, int k2) {
    const double v = kb_hat_radial(kb, (eta + step * Eigen::Vector2d(k1, k2)).norm());
    return v * v;
  };
  KbLatticeSum out;
  out.center = term(0, 0);
  out.total = out.center;
  int done = 0;
  for (int K : {8, 16, 32, 64}) {
    for (int k1 = -K; k1 <= K; ++k1) {
      for (int k2 = -K; k2 <= K; ++k2) {
        if (std::max(std::abs(k1), std::abs(k2)) <= done) continue;
        out.total += term(k1, k2);
      }
    }
    done = K;
    const double rho0 = step * (K + 0.5) - eta.norm();
    if (rho0 <= 0.0) continue;
    const double tail = std::pow(s / kTwoPi, 2) * kTwoPi * envelope * envelope *
                        std::pow(kb.a, -(2.0 * nu + 1.0)) * std::pow(rho0, 1.0 - 2.0 * nu) /
                        (2.0 * nu - 1.0);
    if (tail <= 1e-8 * out.total) return out;
  }
  throw std::runtime_error("lattice_sum: truncation tail bound not met at |k| <= 64 (eta = " + std::to_string(eta.x()) + ", " + std::to_string(eta.y()) + ", sum = " + std::to_string(out.total) + ")");
}

// Poisson dual of the lattice sum: (s/2pi)^2 sum_n G(s n) cos(s n.eta), a
// finite sum because the autocorrelation G has support radius 2a.
struct DualTerms {
  KaiserBessel kb;
  double s = -1.0;
  std::vector<Eigen::Vector2d> shifts;
  std::vector<double> values;
};

double kb_lattice_sum_dual(const KaiserBessel& kb, double s, const Eigen::Vector2d& eta) {
  thread_local DualTerms cache;
  if (cache.s != s || cache.kb.m != kb.m || cache.kb.gamma != kb.gamma || cache.kb.a != kb.a) {
    cache = DualTerms{};
    cache.kb = kb;
    const int K = static_cast<int>(std::ceil(2.0 * kb.a / s));
    for (int n1 = -K; n1 <= K; ++n1) {
      for (int n2 = -K; n2 <= K; ++n2) {
        const Eigen::Vector2d shift = s * Eigen::Vector2d(n1, n2);
        if (shift.norm() >= 2.0 * kb.a) continue;
        cache.shifts.push_back(shift);
        cache.values.push_back(kb_overlap(kb, shift.norm(), 64));
      }
    }
    cache.s = s;
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < cache.shifts.size(); ++q)
    sum += cache.values[q] * std::cos(cache.shifts[q].dot(eta));
  return sum * (s / kTwoPi) * (s / kTwoPi);
}

}  // namespace

std::string name(const GeneratingFunction& gf) {
  return std::visit(overloaded{[](const Pixel&) { return std::string("pixel"); },
                               [](const KaiserBessel&) { return std::string("kb"); },
                               [](const BilinearFE&) { return std::string("bilinear"); }},
                    gf);
}

bool is_radial(const GeneratingFunction& gf) { return std::holds_alternative<KaiserBessel>(gf); }

double support_half_width(const GeneratingFunction& gf) {
  return std::visit(overloaded{[](const Pixel&) { return 0.5; },
                               [](const KaiserBessel& kb) { return kb.a; },
                               [](const BilinearFE&) { return 1.0; }},
                    gf);
}

bool supports_overlap(const GeneratingFunction& gf, const Eigen::Vector2d& offset) {
  if (const auto* kb = std::get_if<KaiserBessel>(&gf)) return offset.norm() < 2.0 * kb->a;
  const double h = support_half_width(gf);
  return std::abs(offset.x()) < 2.0 * h && std::abs(offset.y()) < 2.0 * h;
}

double kb_profile(const KaiserBessel& kb, double rho) {
  const double u = 1.0 - (rho * rho) / (kb.a * kb.a);
  if (u < 0.0) return 0.0;
  const double w = std::sqrt(u);
  return std::pow(u, kb.m) * bessel_i_scaled(kb.m, kb.gamma * w) / bessel_i_scaled(kb.m, kb.gamma);
}

double eval(const GeneratingFunction& gf, const Eigen::Vector2d& x) {
  return std::visit(
      overloaded{[&](const Pixel&) {
                   const bool in = x.x() >= -0.5 && x.x() < 0.5 && x.y() >= -0.5 && x.y() < 0.5;
                   return in ? 1.0 : 0.0;
                 },
                 [&](const KaiserBessel& kb) { return kb_profile(kb, x.norm()); },
                 [&](const BilinearFE&) {
                   return std::max(0.0, 1.0 - std::abs(x.x())) *
                          std::max(0.0, 1.0 - std::abs(x.y()));
                 }},
      gf);
}

double eval_hat(const GeneratingFunction& gf, const Eigen::Vector2d& xi) {
  return std::visit(
      overloaded{[&](const Pixel&) { return sinc(0.5 * xi.x()) * sinc(0.5 * xi.y()) / kTwoPi; },
                 [&](const KaiserBessel& kb) { return kb_hat_radial(kb, xi.norm()); },
                 [&](const BilinearFE&) {
                   const double a = sinc(0.5 * xi.x());
                   const double b = sinc(0.5 * xi.y());
                   return a * a * b * b / kTwoPi;
                 }},
      gf);
}

int BasisGrid::find(const Eigen::Vector2i& k) const {
  if (std::abs(k.x()) > kmax || std::abs(k.y()) > kmax) return -1;
  const int w = 2 * kmax + 1;
  return lookup[(k.y() + kmax) * w + (k.x() + kmax)];
}

BasisGrid make_grid(double T, double s, double R) {
  if (!(T > 0.0) || !(s > 0.0) || !(R > 0.0))
    throw std::invalid_argument("make_grid: T, s and R must be positive");
  BasisGrid grid;
  grid.T = T;
  grid.s = s;
  grid.R = R;
  const double h = T * s;
  grid.kmax = static_cast<int>(std::floor(R / h)) + 1;
  const int w = 2 * grid.kmax + 1;
  grid.lookup.assign(static_cast<std::size_t>(w) * w, -1);
  for (int k2 = -grid.kmax; k2 <= grid.kmax; ++k2) {
    for (int k1 = -grid.kmax; k1 <= grid.kmax; ++k1) {
      const Eigen::Vector2i k(k1, k2);
      if (grid.center(k).norm() < R) {
        grid.lookup[(k2 + grid.kmax) * w + (k1 + grid.kmax)] = static_cast<int>(grid.indices.size());
        grid.indices.push_back(k);
      }
    }
  }
  return grid;
}

BasisGrid make_grid_for_count(int N, double s, double R) {
  if (N < 2) throw std::invalid_argument("make_grid_for_count: N must be at least 2");
  return make_grid(2.0 / (s * (N - 1)), s, R);
}

double eval_basis(const GeneratingFunction& gf, const BasisGrid& grid, const Eigen::Vector2i& k,
                  const Eigen::Vector2d& x) {
  return eval(gf, x / grid.T - grid.s * k.cast<double>()) / grid.T;
}

GramKernel gram_kernel(const GeneratingFunction& gf, double s, int M) {
  if (M < 2) throw std::invalid_argument("gram_kernel: M must be at least 2");
  const double h = support_half_width(gf);
  GramKernel kernel;
  kernel.s = s;
  kernel.K = static_cast<int>(std::ceil(2.0 * h / s));
  const int K = kernel.K;
  kernel.table = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);

  if (std::holds_alternative<Pixel>(gf)) {
    for (int n1 = -K; n1 <= K; ++n1)
      for (int n2 = -K; n2 <= K; ++n2)
        kernel.table(n1 + K, n2 + K) = pixel_autocorr(s * n1) * pixel_autocorr(s * n2);
    return kernel;
  }

  const double step = 2.0 * h / (M - 1);
  Eigen::VectorXd nodes(M);
  for (int i = 0; i < M; ++i) nodes[i] = -h + step * i;
  Eigen::MatrixXd base(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) base(i, j) = eval(gf, Eigen::Vector2d(nodes[i], nodes[j]));
  const double weight = step * step;

  // the grid is symmetric under reflections and the swap of axes
  for (int n1 = 0; n1 <= K; ++n1) {
    for (int n2 = 0; n2 <= n1; ++n2) {
      const Eigen::Vector2d shift = s * Eigen::Vector2d(n1, n2);
      if (!supports_overlap(gf, shift)) continue;
      double sum = 0.0;
      for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
          const double b = base(i, j);
          if (b == 0.0) continue;
          sum += b * eval(gf, Eigen::Vector2d(nodes[i], nodes[j]) - shift);
        }
      }
      const double g = weight * sum;
      for (int a : {-1, 1})
        for (int b : {-1, 1}) {
          kernel.table(a * n1 + K, b * n2 + K) = g;
          kernel.table(a * n2 + K, b * n1 + K) = g;
        }
    }
  }
  return kernel;
}

double radial_spherical_mean(const std::function<double(double)>& profile_sq, double support,
                             double D, double r, int n_nodes) {
  if (D + r <= support && (D == 0.0 || r == 0.0)) return profile_sq(D * D + r * r);
  if (D == 0.0 || r == 0.0) return 0.0;
  const double c = (D * D + r * r - support * support) / (2.0 * D * r);
  if (c >= 1.0) return 0.0;
  const double theta_max = c <= -1.0 ? std::numbers::pi : std::acos(c);
  const GaussLegendre& gl = [&]() -> const GaussLegendre& {
    thread_local int cached_n = -1;
    thread_local GaussLegendre rule;
    if (cached_n != n_nodes) {
      rule = gauss_legendre(n_nodes);
      cached_n = n_nodes;
    }
    return rule;
  }();
  const double half = 0.5 * theta_max;
  double sum = 0.0;
  for (int q = 0; q < n_nodes; ++q) {
    const double theta = half * (1.0 + gl.nodes[q]);
    sum += gl.weights[q] * profile_sq(D * D + r * r - 2.0 * D * r * std::cos(theta));
  }
  return half * sum / std::numbers::pi;
}

double kb_overlap(const KaiserBessel& kb, double d, int n_nodes) {
  const double a = kb.a;
  if (d >= 2.0 * a) return 0.0;
  auto profile_sq = [&](double rho_sq) { return kb_profile(kb, std::sqrt(std::max(rho_sq, 0.0))); };
  const GaussLegendre gl = gauss_legendre(n_nodes);
  // integrand r phi(r) M(d, r) has a weak singularity where the circle of
  // radius r becomes tangent to the shifted support; split there and cluster
  // nodes with a quadratic map toward the break
  auto integrate = [&](double lo, double hi, bool cluster_lo, bool cluster_hi) {
    double sum = 0.0;
    for (int q = 0; q < n_nodes; ++q) {
      const double v = 0.5 * (1.0 + gl.nodes[q]);
      double x = v;
      double jac = 1.0;
      if (cluster_lo && cluster_hi) {
        x = v * v * (3.0 - 2.0 * v);
        jac = 6.0 * v * (1.0 - v);
      } else if (cluster_lo) {
        x = v * v;
        jac = 2.0 * v;
      } else if (cluster_hi) {
        x = 1.0 - (1.0 - v) * (1.0 - v);
        jac = 2.0 * (1.0 - v);
      }
      const double r = lo + (hi - lo) * x;
      sum += 0.5 * gl.weights[q] * jac * (hi - lo) * r * kb_profile(kb, r) *
             radial_spherical_mean(profile_sq, a, d, r, n_nodes);
    }
    return sum;
  };
  const double brk = std::abs(a - d);
  double total = 0.0;
  if (d == 0.0) {
    total = integrate(0.0, a, false, false);
  } else if (brk > 0.0 && brk < a) {
    if (d < a) {
      total = integrate(0.0, brk, false, true) + integrate(brk, a, true, false);
    } else {
      total = integrate(brk, a, true, false);
    }
  } else {
    total = integrate(0.0, a, false, false);
  }
  return 2.0 * std::numbers::pi * total;
}

GramKernel gram_kernel_polar(const KaiserBessel& kb, double s, int n_nodes) {
  GramKernel kernel;
  kernel.s = s;
  kernel.K = static_cast<int>(std::ceil(2.0 * kb.a / s));
  const int K = kernel.K;
  kernel.table = Eigen::MatrixXd::Zero(2 * K + 1, 2 * K + 1);
  for (int n1 = 0; n1 <= K; ++n1) {
    for (int n2 = 0; n2 <= n1; ++n2) {
      const double g = kb_overlap(kb, s * std::hypot(n1, n2), n_nodes);
      for (int a : {-1, 1})
        for (int b : {-1, 1}) {
          kernel.table(a * n1 + K, b * n2 + K) = g;
          kernel.table(a * n2 + K, b * n1 + K) = g;
        }
    }
  }
  return kernel;
}

double lattice_sum(const GeneratingFunction& gf, double s, const Eigen::Vector2d& eta) {
  if (!(s > 0.0)) throw std::invalid_argument("lattice_sum: s must be positive");
  return std::visit(
      overloaded{[&](const Pixel&) {
                   return separable_lattice_1d(pixel_autocorr, 1.0, s, eta.x()) *
                          separable_lattice_1d(pixel_autocorr, 1.0, s, eta.y());
                 },
                 [&](const KaiserBessel& kb) { return kb_lattice_sum_dual(kb, s, eta); },
                 [&](const BilinearFE&) {
                   return separable_lattice_1d(hat_autocorr, 2.0, s, eta.x()) *
                          separable_lattice_1d(hat_autocorr, 2.0, s, eta.y());
                 }},
      gf);
}

double kb_lattice_sum_direct(const KaiserBessel& kb, double s, const Eigen::Vector2d& eta) {
  return kb_lattice_sum(kb, s, eta).total;
}

double error_kernel(const GeneratingFunction& gf, double s, double T, const Eigen::Vector2d& xi) {
  if (!(s > 0.0) || !(T > 0.0)) throw std::invalid_argument("error_kernel: s and T must be positive");
  const Eigen::Vector2d eta = T * xi;
  const double denom = lattice_sum(gf, s, eta);
  if (!(denom >= 1e-300)) throw std::runtime_error("error_kernel: lattice sum vanishes");
  const double h = eval_hat(gf, eta);
  return std::clamp(1.0 - h * h / denom, 0.0, 1.0);
}

double approx_error_main(const GeneratingFunction& gf, double s, double T,
                         const std::function<double(const Eigen::Vector2d&)>& fhat_sq,
                         int resolution) {
  if (resolution < 2) throw std::invalid_argument("approx_error_main: resolution must be >= 2");
  const double half = std::numbers::pi / (T * s);
  const double h = 2.0 * half / (resolution - 1);
  double sum = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double wi = (i == 0 || i == resolution - 1) ? 0.5 : 1.0;
    for (int j = 0; j < resolution; ++j) {
      const double wj = (j == 0 || j == resolution - 1) ? 0.5 : 1.0;
      const Eigen::Vector2d xi(-half + h * i, -half + h * j);
      const double f2 = fhat_sq(xi);
      if (f2 == 0.0) continue;
      sum += wi * wj * f2 * error_kernel(gf, s, T, xi);
    }
  }
  return std::sqrt(std::max(0.0, sum * h * h));
}

std::pair<double, double> riesz_bounds(const GeneratingFunction& gf, double s,
                                       int sample_resolution) {
  if (sample_resolution < 2) throw std::invalid_argument("riesz_bounds: resolution must be >= 2");
  const double period = kTwoPi / s;
  const double h = period / (sample_resolution - 1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < sample_resolution; ++i) {
    for (int j = 0; j < sample_resolution; ++j) {
      const double v = lattice_sum(gf, s, Eigen::Vector2d(h * i, h * j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double scale = kTwoPi * kTwoPi / (s * s);
  return {scale * lo, scale * hi};
}

double orthonormalized_hat(const GeneratingFunction& gf, double s, const Eigen::Vector2d& xi) {
  const double denom = lattice_sum(gf, s, xi);
  if (!(denom >= 1e-300)) throw std::runtime_error("orthonormalized_hat: lattice sum vanishes");
  return s * eval_hat(gf, xi) / (kTwoPi * std::sqrt(denom));
}

double partition_of_unity_defect(const GeneratingFunction& gf, double s, int sample_resolution) {
  const double target = kTwoPi * eval_hat(gf, Eigen::Vector2d::Zero()) / (s * s);
  if (target == 0.0) throw std::runtime_error("partition_of_unity_defect: phi_hat(0) vanishes");
  const double h = support_half_width(gf);
  const double step = s / sample_resolution;
  double worst = 0.0;
  for (int i = 0; i < sample_resolution; ++i) {
    for (int j = 0; j < sample_resolution; ++j) {
      const Eigen::Vector2d x(step * i, step * j);
      double sum = 0.0;
      const int lo1 = static_cast<int>(std::floor((x.x() - h) / s)) - 1;
      const int hi1 = static_cast<int>(std::ceil((x.x() + h) / s)) + 1;
      const int lo2 = static_cast<int>(std::floor((x.y() - h) / s)) - 1;
      const int hi2 = static_cast<int>(std::ceil((x.y() + h) / s)) + 1;
      for (int m1 = lo1; m1 <= hi1; ++m1)
        for (int m2 = lo2; m2 <= hi2; ++m2) sum += eval(gf, x - s * Eigen::Vector2d(m1, m2));
      worst = std::max(worst, std::abs(sum - target) / std::abs(target));
    }
  }
  return worst;
}

double saturation_error(const GeneratingFunction& gf, double s) {
  if (const auto* kb = std::get_if<KaiserBessel>(&gf)) {
    const KbLatticeSum sums = kb_lattice_sum(*kb, s, Eigen::Vector2d::Zero());
    return (sums.total - sums.center) / sums.total;
  }
  const double total = lattice_sum(gf, s, Eigen::Vector2d::Zero());
  const double h0 = eval_hat(gf, Eigen::Vector2d::Zero());
  return std::max(0.0, (total - h0 * h0) / total);
}

}  // namespace patgal
