#include "patgal/config.hpp"

#include <algorithm>
#include <cmath>

#include "patgal/errors.hpp"
#include "patgal/io.hpp"

namespace patgal {
namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void require_object(const nlohmann::json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m = {"galerkin", "galerkin-cg", "dd-cg", "fbp", "pixel"};
  return m;
}

double grid_scale(const ExperimentConfig& config) {
  if (config.T > 0.0) return config.T;
  return 2.0 / (config.s * (config.N - 1));
}

double raster_spacing(const ExperimentConfig& config) { return config.s * grid_scale(config); }

void validate(const ExperimentConfig& c) {
  if (!(c.s > 0.0)) throw ConfigError("grid.s must be positive");
  if (c.N == 0 && !(c.T > 0.0)) throw ConfigError("grid needs N or T");
  if (c.N != 0 && c.N < 2) throw ConfigError("grid.N must be at least 2");
  if (c.N != 0 && c.T > 0.0) {
    const double want = 2.0 / (c.N - 1);
    if (std::abs(c.s * c.T - want) > 1e-9 * want)
      throw ConfigError("grid: s*T must equal 2/(N-1) when N is given");
  }
  if (c.T < 0.0) throw ConfigError("grid.T must be positive");
  if (!(c.geometry.R > 0.0)) throw ConfigError("geometry.R must be positive");
  if (c.geometry.n_det < 1) throw ConfigError("geometry.N_det must be positive");
  if (!(c.time.t_final > 0.0)) throw ConfigError("time.T_final must be positive");
  if (c.time.n_t < 3) throw ConfigError("time.N_t must be at least 3");
  if (std::find(known_methods().begin(), known_methods().end(), c.method) == known_methods().end())
    throw ConfigError("unknown method '" + c.method + "'");
  if (!(c.noise >= 0.0)) throw ConfigError("noise must be nonnegative");
  if (c.wave.n_r < 2 || c.wave.n_phi < 1) throw ConfigError("quadrature: N_r >= 2 and N_phi >= 1");
  if (c.wave.time_oversample < 1 || c.sim_time_oversample < 1)
    throw ConfigError("quadrature: time_oversample values must be >= 1");
  if (c.gram_M < 2) throw ConfigError("quadrature.gram_M must be at least 2");
  if (c.cg_max_iter < 0) throw ConfigError("solver.max_iter must be nonnegative");
  if (!contained_in(c.phantom, c.geometry.R))
    throw ConfigError("phantom discs must lie inside the detection disc");
  if (const auto* kb = std::get_if<KaiserBessel>(&c.generator)) {
    if (kb->m < 0 || !(kb->gamma >= 0.0) || !(kb->a > 0.0))
      throw ConfigError("generator: need m >= 0, gamma >= 0, a > 0");
  }
  for (double s : c.sweep_s)
    if (!(s > 0.0)) throw ConfigError("sweep.s_values must be positive");
  for (double p : c.compare_noise)
    if (!(p >= 0.0)) throw ConfigError("compare.noise_levels must be nonnegative");
  for (const auto& m : c.compare_methods)
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
      throw ConfigError("compare: unknown method '" + m + "'");
}

nlohmann::json generator_to_json(const GeneratingFunction& gf) {
  if (const auto* kb = std::get_if<KaiserBessel>(&gf))
    return {{"kind", "kb"}, {"m", kb->m}, {"gamma", kb->gamma}, {"a", kb->a}};
  return {{"kind", name(gf)}};
}

GeneratingFunction generator_from_json(const nlohmann::json& j) {
  require_object(j, "generator");
  std::string kind = "kb";
  read(j, "kind", kind);
  if (kind == "pixel") return Pixel{};
  if (kind == "bilinear") return BilinearFE{};
  if (kind == "kb") {
    KaiserBessel kb;
    read(j, "m", kb.m);
    read(j, "gamma", kb.gamma);
    read(j, "a", kb.a);
    return kb;
  }
  throw ConfigError("generator.kind must be kb, pixel or bilinear");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  require_object(j, "config");
  ExperimentConfig c;
  if (j.contains("phantom")) {
    const auto& arr = j.at("phantom");
    if (!arr.is_array()) throw ConfigError("phantom must be an array of discs");
    c.phantom.discs.clear();
    for (const auto& d : arr) {
      require_object(d, "phantom entry");
      Disc disc;
      double cx = 0.0, cy = 0.0;
      read(d, "cx", cx);
      read(d, "cy", cy);
      read(d, "radius", disc.radius);
      read(d, "amplitude", disc.amplitude);
      disc.center = Eigen::Vector2d(cx, cy);
      c.phantom.discs.push_back(disc);
    }
  }
  if (j.contains("generator")) c.generator = generator_from_json(j.at("generator"));
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    require_object(g, "grid");
    if (g.contains("T") && !g.contains("N")) c.N = 0;
    read(g, "N", c.N);
    read(g, "s", c.s);
    read(g, "T", c.T);
  }
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    require_object(g, "geometry");
    read(g, "R", c.geometry.R);
    read(g, "N_det", c.geometry.n_det);
  }
  if (j.contains("time")) {
    const auto& t = j.at("time");
    require_object(t, "time");
    read(t, "T_final", c.time.t_final);
    read(t, "N_t", c.time.n_t);
  }
  read(j, "method", c.method);
  read(j, "noise", c.noise);
  if (j.contains("noise_model")) {
    const std::string m = j.at("noise_model").get<std::string>();
    if (m == "variance") {
      c.noise_model = NoiseModel::Variance;
    } else if (m == "relative_l2") {
      c.noise_model = NoiseModel::RelativeL2;
    } else {
      throw ConfigError("noise_model must be 'variance' or 'relative_l2', got '" + m + "'");
    }
  }
  read(j, "seed", c.seed);
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    require_object(q, "quadrature");
    read(q, "N_r", c.wave.n_r);
    read(q, "N_phi", c.wave.n_phi);
    read(q, "r_step", c.wave.r_step);
    read(q, "sim_r_step", c.sim_r_step);
    read(q, "time_oversample", c.wave.time_oversample);
    read(q, "sim_time_oversample", c.sim_time_oversample);
    read(q, "fbp_rho_step", c.fbp_rho_step);
    read(q, "gram_M", c.gram_M);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    require_object(s, "solver");
    read(s, "max_iter", c.cg_max_iter);
    read(s, "tol", c.cg_tol);
  }
  if (j.contains("sweep")) read(j.at("sweep"), "s_values", c.sweep_s);
  if (j.contains("compare")) {
    read(j.at("compare"), "noise_levels", c.compare_noise);
    read(j.at("compare"), "methods", c.compare_methods);
  }
  if (j.contains("analyze")) read(j.at("analyze"), "s_values", c.analyze_s);
  read(j, "output_dir", c.output_dir);
  validate(c);
  return c;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["phantom"] = nlohmann::ordered_json::array();
  for (const auto& d : c.phantom.discs)
    j["phantom"].push_back({{"cx", d.center.x()},
                            {"cy", d.center.y()},
                            {"radius", d.radius},
                            {"amplitude", d.amplitude}});
  j["generator"] = generator_to_json(c.generator);
  nlohmann::ordered_json grid;
  if (c.N != 0) grid["N"] = c.N;
  grid["s"] = c.s;
  grid["T"] = grid_scale(c);
  j["grid"] = grid;
  j["geometry"] = {{"R", c.geometry.R}, {"N_det", c.geometry.n_det}};
  j["time"] = {{"T_final", c.time.t_final}, {"N_t", c.time.n_t}};
  j["method"] = c.method;
  j["noise"] = c.noise;
  j["noise_model"] = c.noise_model == NoiseModel::Variance ? "variance" : "relative_l2";
  j["seed"] = c.seed;
  j["quadrature"] = {{"N_r", c.wave.n_r},          {"N_phi", c.wave.n_phi},
                     {"r_step", c.wave.r_step},    {"sim_r_step", c.sim_r_step},
                     {"time_oversample", c.wave.time_oversample},
                     {"sim_time_oversample", c.sim_time_oversample},
                     {"fbp_rho_step", c.fbp_rho_step}, {"gram_M", c.gram_M}};
  j["solver"] = {{"max_iter", c.cg_max_iter}, {"tol", c.cg_tol}};
  j["sweep"] = {{"s_values", c.sweep_s}};
  j["compare"] = {{"noise_levels", c.compare_noise}, {"methods", c.compare_methods}};
  j["analyze"] = {{"s_values", c.analyze_s}};
  j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j);
}

}  // namespace patgal
