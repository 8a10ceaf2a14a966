#include "patgal/experiments.hpp"

#include <stdexcept>

#include "patgal/baselines.hpp"
#include "patgal/errors.hpp"

namespace patgal {

Sinogram simulate_clean(const ExperimentConfig& config) {
  return forward_phantom(config.phantom, config.geometry, config.time, config.sim_r_step,
                         config.sim_time_oversample);
}

Sinogram simulate(const ExperimentConfig& config) {
  return add_noise(simulate_clean(config), config.noise, config.seed, config.noise_model);
}

Raster evaluation_raster(const ExperimentConfig& config) {
  BasisGrid grid = make_grid(grid_scale(config), config.s, config.geometry.R);
  return center_raster(grid, config.geometry.R);
}

Reconstructor::Reconstructor(ExperimentConfig config) : config_(std::move(config)) {
  raster_ = evaluation_raster(config_);
  truth_ = rasterize(config_.phantom, raster_);
}

const BasisWaveOperator& Reconstructor::basis_operator() {
  if (!basis_op_) {
    const BasisGrid grid = make_grid(grid_scale(config_), config_.s, config_.geometry.R);
    basis_op_ = make_wave_operator(config_.generator, grid, config_.geometry, config_.time,
                                   config_.wave);
  }
  return *basis_op_;
}

const GramKernel& Reconstructor::basis_kernel() {
  if (!basis_kernel_) basis_kernel_ = system_kernel(config_.generator, config_.s, config_.gram_M);
  return *basis_kernel_;
}

const BasisWaveOperator& Reconstructor::pixel_operator() {
  if (!pixel_op_) {
    const BasisGrid grid = make_grid(raster_spacing(config_), 1.0, config_.geometry.R);
    pixel_op_ = make_wave_operator(Pixel{}, grid, config_.geometry, config_.time, config_.wave);
  }
  return *pixel_op_;
}

MethodResult Reconstructor::run(const std::string& method, const Sinogram& g) {
  MethodResult res;
  res.method = method;
  if (method == "galerkin" || method == "galerkin-cg") {
    SolverOptions opts;
    opts.kind = method == "galerkin" ? SolverKind::Direct : SolverKind::CG;
    opts.max_iter = config_.cg_max_iter;
    opts.tol = config_.cg_tol;
    Reconstruction rec =
        galerkin_reconstruct(config_.generator, basis_kernel(), basis_operator(), g, opts, raster_);
    res.image = std::move(rec.image);
    res.grid = rec.grid;
    res.coefficients = std::move(rec.coefficients);
    res.iterations = rec.iterations;
  } else if (method == "dd-cg") {
    const BasisWaveOperator& op = basis_operator();
    DdResult dd = dd_reconstruct(op, g, config_.cg_max_iter, 0.0);
    res.grid = op.grid();
    res.coefficients = std::move(dd.coefficients);
    res.iterations = dd.iterations;
    res.image = reconstruct_image(config_.generator, op.grid(), res.coefficients, raster_);
  } else if (method == "fbp") {
    FbpOptions opts;
    opts.rho_step = config_.fbp_rho_step;
    res.image = fbp_reconstruct(g, raster_, opts);
  } else if (method == "pixel") {
    const BasisWaveOperator& op = pixel_operator();
    const GramKernel kernel = system_kernel(Pixel{}, 1.0);
    SolverOptions opts;
    opts.kind = SolverKind::Direct;
    Reconstruction rec = galerkin_reconstruct(Pixel{}, kernel, op, g, opts, raster_);
    res.image = std::move(rec.image);
    res.grid = rec.grid;
    res.coefficients = std::move(rec.coefficients);
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  if (!res.image.allFinite()) throw NumericalError(method + ": reconstruction is not finite");
  res.error = relative_l2_error(res.image, truth_);
  return res;
}

std::vector<SweepRow> sweep_s(const ExperimentConfig& config, const std::vector<double>& s_values,
                              const Sinogram& g) {
  if (config.N < 2) throw ConfigError("sweep-s needs grid.N");
  std::vector<SweepRow> rows;
  for (double s : s_values) {
    ExperimentConfig c = config;
    c.s = s;
    c.T = 0.0;
    Reconstructor rec(c);
    const MethodResult r = rec.run(config.method == "galerkin" ? "galerkin" : "galerkin-cg", g);
    rows.push_back({s, grid_scale(c), r.error});
  }
  return rows;
}

std::vector<CompareRow> compare(const ExperimentConfig& config) {
  const Sinogram clean = simulate_clean(config);
  Reconstructor rec(config);
  std::vector<CompareRow> rows;
  for (double p : config.compare_noise) {
    const Sinogram g = add_noise(clean, p, config.seed, config.noise_model);
    for (const auto& m : config.compare_methods) rows.push_back({p, m, rec.run(m, g).error});
  }
  return rows;
}

std::vector<BasisRow> analyze_basis(const ExperimentConfig& config) {
  std::vector<BasisRow> rows;
  for (double s : config.analyze_s) {
    BasisRow row;
    row.s = s;
    std::tie(row.riesz_lower, row.riesz_upper) = riesz_bounds(config.generator, s);
    row.saturation = saturation_error(config.generator, s);
    row.pou_defect = partition_of_unity_defect(config.generator, s);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace patgal
