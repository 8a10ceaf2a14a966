#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "patgal/basis.hpp"
#include "patgal/phantom.hpp"
#include "patgal/wave.hpp"
#include "patgal/wave_operator.hpp"

namespace patgal {

/// A_N = (R/2) Gram with Toeplitz kernel, and the right-hand side d_N.
struct GalerkinSystem {
  BasisGrid grid;
  GramKernel kernel;
  Eigen::VectorXd rhs;
};

/// Kernel used for system assembly: closed form for pixels, polar quadrature
/// for KB windows, the rectangle rule otherwise.
GramKernel system_kernel(const GeneratingFunction& gf, double s, int M = 401);

/// (G c)[k] = sum_l G[l - k] c[l] over the index set.
Eigen::VectorXd apply_gram(const BasisGrid& grid, const GramKernel& kernel, const Eigen::VectorXd& c);

/// (R/2) G c.
Eigen::VectorXd apply_system(const GalerkinSystem& system, const Eigen::VectorXd& c);

Eigen::SparseMatrix<double> assemble_system_sparse(const BasisGrid& grid, const GramKernel& kernel);
Eigen::MatrixXd assemble_system_dense(const BasisGrid& grid, const GramKernel& kernel);

/// d_N[k] = discrete <W phi_N^k, g>_t.
Eigen::VectorXd assemble_rhs(const BasisWaveOperator& op, const Sinogram& g);

struct CgResult {
  Eigen::VectorXd x;
  std::vector<double> residuals;  // ||b - A x_k||, k = 0 .. iterations
  std::vector<double> energy;     // x_k'A x_k / 2 - b'x_k, nonincreasing
  int iterations = 0;
  bool converged = false;
};

/// Conjugate gradients from zero; stops after max_iter steps or when
/// ||r_k|| <= tol ||b||. Throws NumericalError on NaN or breakdown.
CgResult cg_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                  const Eigen::VectorXd& b, int max_iter, double tol);

/// Sparse LDLT solve of A_N c = d_N.
Eigen::VectorXd direct_solve(const GalerkinSystem& system);

/// Dense Cholesky solve, limited to at most 2500 unknowns.
Eigen::VectorXd dense_solve(const GalerkinSystem& system);

/// Tensor raster; image(iy, ix) is the value at (xs[ix], ys[iy]).
struct Raster {
  std::vector<double> xs;
  std::vector<double> ys;
  Eigen::Vector2d point(int ix, int iy) const { return {xs[ix], ys[iy]}; }
};

/// {T s k : k in Z^2} intersected with [-half, half]^2.
Raster center_raster(const BasisGrid& grid, double half = 1.0);

Eigen::MatrixXd rasterize(const Phantom& phantom, const Raster& raster);

/// sum_k c[k] phi_N^k on the raster, visiting only supports that reach a node.
Eigen::MatrixXd reconstruct_image(const GeneratingFunction& gf, const BasisGrid& grid,
                                  const Eigen::VectorXd& c, const Raster& raster);

enum class SolverKind { Direct, CG, Dense };

struct SolverOptions {
  SolverKind kind = SolverKind::CG;
  int max_iter = 40;
  double tol = 1e-10;
};

struct Reconstruction {
  BasisGrid grid;
  Eigen::VectorXd coefficients;
  Eigen::MatrixXd image;
  int iterations = 0;
  std::vector<double> residuals;
};

GalerkinSystem build_system(const GramKernel& kernel, const BasisWaveOperator& op,
                            const Sinogram& g);

Eigen::VectorXd solve_system(const GalerkinSystem& system, const SolverOptions& options,
                             int* iterations = nullptr, std::vector<double>* residuals = nullptr);

Reconstruction galerkin_reconstruct(const GeneratingFunction& gf, const GramKernel& kernel,
                                    const BasisWaveOperator& op, const Sinogram& g,
                                    const SolverOptions& options, const Raster& raster);

}  // namespace patgal
