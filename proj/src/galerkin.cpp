#include "patgal/galerkin.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "patgal/errors.hpp"
#include "patgal/parallel.hpp"

namespace patgal {

GramKernel system_kernel(const GeneratingFunction& gf, double s, int M) {
  if (const auto* kb = std::get_if<KaiserBessel>(&gf)) return gram_kernel_polar(*kb, s);
  return gram_kernel(gf, s, M);
}

Eigen::VectorXd apply_gram(const BasisGrid& grid, const GramKernel& kernel,
                           const Eigen::VectorXd& c) {
  if (static_cast<std::size_t>(c.size()) != grid.size())
    throw std::invalid_argument("apply_gram: coefficient vector has the wrong size");
  const int K = kernel.K;
  const int w = 2 * (grid.kmax + K) + 1;
  // coefficients on a zero-padded box, so the stencil never leaves the array
  Eigen::MatrixXd box = Eigen::MatrixXd::Zero(w, w);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Eigen::Vector2i& k = grid.indices[p];
    box(k.x() + grid.kmax + K, k.y() + grid.kmax + K) = c[static_cast<Eigen::Index>(p)];
  }
  Eigen::VectorXd out(grid.size());
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const Eigen::Vector2i& k = grid.indices[p];
      const int x0 = k.x() + grid.kmax;
      const int y0 = k.y() + grid.kmax;
      out[static_cast<Eigen::Index>(p)] =
          (kernel.table.array() * box.block(x0, y0, 2 * K + 1, 2 * K + 1).array()).sum();
    }
  });
  return out;
}

Eigen::VectorXd apply_system(const GalerkinSystem& system, const Eigen::VectorXd& c) {
  return 0.5 * system.grid.R * apply_gram(system.grid, system.kernel, c);
}

Eigen::SparseMatrix<double> assemble_system_sparse(const BasisGrid& grid, const GramKernel& kernel) {
  std::vector<Eigen::Triplet<double>> triplets;
  const int K = kernel.K;
  const double scale = 0.5 * grid.R;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Eigen::Vector2i& k = grid.indices[p];
    for (int n1 = -K; n1 <= K; ++n1) {
      for (int n2 = -K; n2 <= K; ++n2) {
        const double g = kernel(n1, n2);
        if (g == 0.0) continue;
        const int q = grid.find(k + Eigen::Vector2i(n1, n2));
        if (q >= 0) triplets.emplace_back(static_cast<int>(p), q, scale * g);
      }
    }
  }
  Eigen::SparseMatrix<double> A(grid.size(), grid.size());
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

Eigen::MatrixXd assemble_system_dense(const BasisGrid& grid, const GramKernel& kernel) {
  return Eigen::MatrixXd(assemble_system_sparse(grid, kernel));
}

Eigen::VectorXd assemble_rhs(const BasisWaveOperator& op, const Sinogram& g) {
  if (g.geometry.n_det != op.geometry().n_det || g.time.n_t != op.time().n_t)
    throw std::invalid_argument("assemble_rhs: sinogram does not match the forward operator");
  return op.adjoint(weighted_data(g));
}

CgResult cg_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, int max_iter, double tol) {
  CgResult res;
  res.x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double bnorm = std::sqrt(rr);
  double energy = 0.0;
  res.residuals.push_back(bnorm);
  res.energy.push_back(energy);
  if (!std::isfinite(bnorm)) throw NumericalError("cg_solve: right-hand side is not finite");
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd Ap = apply(p);
    const double pAp = p.dot(Ap);
    if (!std::isfinite(pAp)) throw NumericalError("cg_solve: NaN in operator application");
    if (pAp <= 0.0) throw NumericalError("cg_solve: operator is not positive definite");
    const double alpha = rr / pAp;
    res.x += alpha * p;
    r -= alpha * Ap;
    energy -= 0.5 * alpha * rr;
    const double rr_new = r.squaredNorm();
    res.iterations = it + 1;
    res.residuals.push_back(std::sqrt(rr_new));
    res.energy.push_back(energy);
    if (std::sqrt(rr_new) <= tol * bnorm) {
      res.converged = true;
      break;
    }
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return res;
}

Eigen::VectorXd direct_solve(const GalerkinSystem& system) {
  const Eigen::SparseMatrix<double> A = assemble_system_sparse(system.grid, system.kernel);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw NumericalError("direct_solve: factorization failed");
  Eigen::VectorXd c = ldlt.solve(system.rhs);
  if (ldlt.info() != Eigen::Success || !c.allFinite())
    throw NumericalError("direct_solve: solve failed");
  return c;
}

Eigen::VectorXd dense_solve(const GalerkinSystem& system) {
  if (system.grid.size() > 2500)
    throw std::invalid_argument("dense_solve: limited to 2500 unknowns");
  const Eigen::MatrixXd A = assemble_system_dense(system.grid, system.kernel);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw NumericalError("dense_solve: matrix is not positive definite");
  return llt.solve(system.rhs);
}

Raster center_raster(const BasisGrid& grid, double half) {
  const double h = grid.T * grid.s;
  const int kmax = static_cast<int>(std::floor(half / h + 1e-9));
  Raster raster;
  for (int k = -kmax; k <= kmax; ++k) raster.xs.push_back(h * k);
  raster.ys = raster.xs;
  return raster;
}

Eigen::MatrixXd rasterize(const Phantom& phantom, const Raster& raster) {
  Eigen::MatrixXd img(raster.ys.size(), raster.xs.size());
  for (std::size_t iy = 0; iy < raster.ys.size(); ++iy)
    for (std::size_t ix = 0; ix < raster.xs.size(); ++ix)
      img(iy, ix) = eval(phantom, raster.point(static_cast<int>(ix), static_cast<int>(iy)));
  return img;
}

namespace {
// Index range of sorted nodes inside [lo, hi].
std::pair<int, int> node_range(const std::vector<double>& nodes, double lo, double hi) {
  const auto b = std::lower_bound(nodes.begin(), nodes.end(), lo);
  const auto e = std::upper_bound(nodes.begin(), nodes.end(), hi);
  return {static_cast<int>(b - nodes.begin()), static_cast<int>(e - nodes.begin())};
}
}  // namespace

Eigen::MatrixXd reconstruct_image(const GeneratingFunction& gf, const BasisGrid& grid,
                                  const Eigen::VectorXd& c, const Raster& raster) {
  if (static_cast<std::size_t>(c.size()) != grid.size())
    throw std::invalid_argument("reconstruct_image: coefficient vector has the wrong size");
  Eigen::MatrixXd img = Eigen::MatrixXd::Zero(raster.ys.size(), raster.xs.size());
  const double reach = grid.T * support_half_width(gf);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double ck = c[static_cast<Eigen::Index>(p)];
    if (ck == 0.0) continue;
    const Eigen::Vector2i& k = grid.indices[p];
    const Eigen::Vector2d m = grid.center(k);
    const auto [x0, x1] = node_range(raster.xs, m.x() - reach, m.x() + reach);
    const auto [y0, y1] = node_range(raster.ys, m.y() - reach, m.y() + reach);
    for (int iy = y0; iy < y1; ++iy)
      for (int ix = x0; ix < x1; ++ix) img(iy, ix) += ck * eval_basis(gf, grid, k, raster.point(ix, iy));
  }
  return img;
}

GalerkinSystem build_system(const GramKernel& kernel, const BasisWaveOperator& op,
                            const Sinogram& g) {
  return GalerkinSystem{op.grid(), kernel, assemble_rhs(op, g)};
}

Eigen::VectorXd solve_system(const GalerkinSystem& system, const SolverOptions& options,
                             int* iterations, std::vector<double>* residuals) {
  switch (options.kind) {
    case SolverKind::Direct:
      if (iterations) *iterations = 0;
      return direct_solve(system);
    case SolverKind::Dense:
      if (iterations) *iterations = 0;
      return dense_solve(system);
    case SolverKind::CG: {
      CgResult res = cg_solve([&](const Eigen::VectorXd& v) { return apply_system(system, v); },
                              system.rhs, options.max_iter, options.tol);
      if (iterations) *iterations = res.iterations;
      if (residuals) *residuals = res.residuals;
      return res.x;
    }
  }
  throw std::invalid_argument("solve_system: unknown solver");
}

Reconstruction galerkin_reconstruct(const GeneratingFunction& gf, const GramKernel& kernel,
                                    const BasisWaveOperator& op, const Sinogram& g,
                                    const SolverOptions& options, const Raster& raster) {
  const GalerkinSystem system = build_system(kernel, op, g);
  Reconstruction rec;
  rec.grid = system.grid;
  rec.coefficients = solve_system(system, options, &rec.iterations, &rec.residuals);
  rec.image = reconstruct_image(gf, rec.grid, rec.coefficients, raster);
  return rec;
}

}  // namespace patgal
