#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "patgal/basis.hpp"
#include "patgal/phantom.hpp"
#include "patgal/wave.hpp"

namespace patgal {

struct ExperimentConfig {
  Phantom phantom = default_phantom();
  GeneratingFunction generator = KaiserBessel{};
  int N = 50;        // basis functions per axis, 0 when T is given explicitly
  double s = 1.3265;
  double T = 0.0;    // derived from N and s unless given explicitly
  DetectorGeometry geometry;
  TimeGrid time;
  std::string method = "galerkin-cg";
  double noise = 0.0;
  NoiseModel noise_model = NoiseModel::Variance;
  std::uint64_t seed = 20240601;

  WaveOptions wave;
  double sim_r_step = 0.0;  // Abel grid step of the phantom simulation, <= 0 selects dt/2
  int sim_time_oversample = 1;
  double fbp_rho_step = 0.0;
  int gram_M = 401;
  int cg_max_iter = 40;
  double cg_tol = 1e-10;

  std::vector<double> sweep_s = {1.4286, 1.3776, 1.3265, 1.2755, 1.2245, 1.1735, 1.1224,
                                 1.0714, 1.0204, 0.9694, 0.9184, 0.8673, 0.8163, 0.7653};
  std::vector<double> compare_noise = {0.0, 0.025, 0.05};
  std::vector<std::string> compare_methods = {"galerkin-cg", "dd-cg", "fbp", "pixel"};
  std::vector<double> analyze_s = {1.5, 1.25, 1.0, 0.75, 0.5};

  std::string output_dir = "out";
};

const std::vector<std::string>& known_methods();

/// Scale T of the configured grid.
double grid_scale(const ExperimentConfig& config);

/// Spacing of the evaluation raster, s T.
double raster_spacing(const ExperimentConfig& config);

/// Throws ConfigError on inconsistent or out-of-range settings.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json generator_to_json(const GeneratingFunction& gf);
GeneratingFunction generator_from_json(const nlohmann::json& j);

}  // namespace patgal
