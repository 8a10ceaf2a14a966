#include "patgal/wave_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "patgal/parallel.hpp"

namespace patgal {

RadialTableOperator::RadialTableOperator(const GeneratingFunction& gf, BasisGrid grid,
                                         DetectorGeometry geometry, TimeGrid time,
                                         const WaveOptions& options)
    : grid_(std::move(grid)), geometry_(geometry), time_(time) {
  table_ = forward_basis_radial(gf, grid_, geometry_, time_, options);
  const int n_det = geometry_.n_det;
  nodes_.resize(grid_.size() * n_det);
  const int last = table_.rows() - 1;
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const Eigen::Vector2d c = grid_.center(k);
    for (int i = 0; i < n_det; ++i) {
      const double x = (geometry_.detector(i) - c).norm() / table_.r_spacing;
      Node node{-1, 0.0};
      if (x < last) {
        node.row = static_cast<int>(x);
        node.lam = x - node.row;
      } else if (x <= last + 1e-9) {
        node.row = last - 1;
        node.lam = 1.0;
      }
      nodes_[k * n_det + i] = node;
    }
  }
}

RowMatrix RadialTableOperator::apply(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != grid_.size())
    throw std::invalid_argument("apply: coefficient vector has the wrong size");
  const int n_det = geometry_.n_det;
  // S(n, i): coefficients scattered onto table rows
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(table_.rows(), n_det);
  parallel_for(n_det, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < grid_.size(); ++k) {
        const Node& node = nodes_[k * n_det + i];
        if (node.row < 0) continue;
        S(node.row, static_cast<Eigen::Index>(i)) += (1.0 - node.lam) * c[k];
        S(node.row + 1, static_cast<Eigen::Index>(i)) += node.lam * c[k];
      }
    }
  });
  return S.transpose() * table_.values;
}

Eigen::VectorXd RadialTableOperator::adjoint(const RowMatrix& y) const {
  const int n_det = geometry_.n_det;
  if (y.rows() != n_det || y.cols() != time_.n_t)
    throw std::invalid_argument("adjoint: data array has the wrong shape");
  const Eigen::MatrixXd H = table_.values * y.transpose();  // n_r x n_det
  Eigen::VectorXd out(grid_.size());
  parallel_for(grid_.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n_det; ++i) {
        const Node& node = nodes_[k * n_det + i];
        if (node.row < 0) continue;
        sum += (1.0 - node.lam) * H(node.row, i) + node.lam * H(node.row + 1, i);
      }
      out[static_cast<Eigen::Index>(k)] = sum;
    }
  });
  return out;
}

PixelWaveOperator::PixelWaveOperator(BasisGrid grid, DetectorGeometry geometry, TimeGrid time,
                                     const WaveOptions& options)
    : grid_(std::move(grid)), geometry_(geometry), time_(time) {
  const double step =
      options.r_step > 0.0 ? options.r_step : default_basis_r_step(Pixel{}, grid_.T, time_);
  rgrid_ = radial_grid_covering(time_.t_final, step);
  wave_ = wave_matrix(rgrid_, time_, options.time_oversample);
}

RowMatrix PixelWaveOperator::apply(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != grid_.size())
    throw std::invalid_argument("apply: coefficient vector has the wrong size");
  const int n_det = geometry_.n_det;
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(rgrid_.count, n_det);
  parallel_for(n_det, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Eigen::Vector2d z = geometry_.detector(static_cast<int>(i));
      for (std::size_t k = 0; k < grid_.size(); ++k) {
        if (c[static_cast<Eigen::Index>(k)] == 0.0) continue;
        const auto [lo, v] = pixel_mean_profile(grid_, grid_.indices[k], z, rgrid_);
        means.col(static_cast<Eigen::Index>(i)).segment(lo, v.size()) +=
            c[static_cast<Eigen::Index>(k)] * v;
      }
    }
  });
  return (wave_ * means).transpose();
}

Eigen::VectorXd PixelWaveOperator::adjoint(const RowMatrix& y) const {
  const int n_det = geometry_.n_det;
  if (y.rows() != n_det || y.cols() != time_.n_t)
    throw std::invalid_argument("adjoint: data array has the wrong shape");
  const Eigen::MatrixXd kappa = wave_.transpose() * y.transpose();  // rgrid.count x n_det
  Eigen::VectorXd out(grid_.size());
  parallel_for(grid_.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n_det; ++i) {
        const auto [lo, v] = pixel_mean_profile(grid_, grid_.indices[k], geometry_.detector(i), rgrid_);
        sum += v.dot(kappa.col(i).segment(lo, v.size()));
      }
      out[static_cast<Eigen::Index>(k)] = sum;
    }
  });
  return out;
}

std::unique_ptr<BasisWaveOperator> make_wave_operator(const GeneratingFunction& gf,
                                                      const BasisGrid& grid,
                                                      const DetectorGeometry& geometry,
                                                      const TimeGrid& time,
                                                      const WaveOptions& options) {
  if (is_radial(gf))
    return std::make_unique<RadialTableOperator>(gf, grid, geometry, time, options);
  if (std::holds_alternative<Pixel>(gf))
    return std::make_unique<PixelWaveOperator>(grid, geometry, time, options);
  throw std::invalid_argument("no wave forward path for generator '" + name(gf) + "'");
}

RowMatrix weighted_data(const Sinogram& g) {
  RowMatrix y = g.values;
  for (int j = 0; j < g.time.n_t; ++j) y.col(j) *= t_weight(g, 0, j);
  return y;
}

}  // namespace patgal
