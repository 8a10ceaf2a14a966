#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "patgal/config.hpp"
#include "patgal/errors.hpp"
#include "patgal/experiments.hpp"
#include "patgal/io.hpp"
#include "patgal/parallel.hpp"

namespace fs = std::filesystem;
using namespace patgal;

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string method;
  std::optional<double> noise;
  int threads = 1;
  bool print_config = false;
  std::string data_path;
};

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig c = f.config_path.empty() ? config_from_json(nlohmann::json::object())
                                             : load_config(f.config_path);
  if (!f.out_dir.empty()) c.output_dir = f.out_dir;
  if (f.seed) c.seed = *f.seed;
  if (!f.method.empty()) c.method = f.method;
  if (f.noise) c.noise = *f.noise;
  validate(c);
  return c;
}

// where results go is not part of the experiment
nlohmann::ordered_json experiment_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j = to_json(c);
  j.erase("output_dir");
  return j;
}

std::string config_hash(const ExperimentConfig& c) { return hex64(fnv1a64(experiment_json(c).dump())); }

void write_provenance(const fs::path& path, const ExperimentConfig& c, const Sinogram& g) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash(c);
  j["seed"] = c.seed;
  j["noise"] = c.noise;
  j["N_det"] = g.geometry.n_det;
  j["N_t"] = g.time.n_t;
  j["R"] = g.geometry.R;
  j["T_final"] = g.time.t_final;
  j["config"] = experiment_json(c);
  write_text(path, j.dump(2) + "\n");
}

int cmd_simulate(const ExperimentConfig& c) {
  const Sinogram g = simulate(c);
  const fs::path out = c.output_dir;
  write_sinogram_csv(out / "sinogram.csv", g);
  write_sinogram_binary(out / "sinogram.bin", g);
  write_provenance(out / "sinogram.json", c, g);
  std::cout << "wrote " << (out / "sinogram.bin").string() << " (" << g.geometry.n_det << "x"
            << g.time.n_t << ")\n";
  return 0;
}

int cmd_reconstruct(const ExperimentConfig& c, const std::string& data_path) {
  const Sinogram g = data_path.empty() ? simulate(c)
                                       : read_sinogram_binary(data_path, c.geometry, c.time);
  if (c.method == "fbp") std::cerr << "warning: method fbp ignores the generator setting\n";
  Reconstructor rec(c);
  const MethodResult r = rec.run(c.method, g);
  const fs::path out = c.output_dir;
  write_pgm16(out / "image.pgm", r.image);
  if (r.grid) write_coefficients_csv(out / "coefficients.csv", *r.grid, r.coefficients);
  const double T = c.method == "pixel" ? raster_spacing(c) : grid_scale(c);
  const double s = c.method == "pixel" ? 1.0 : c.s;
  write_csv(out / "errors.csv", {"method", "noise", "N", "s", "T", "relative_l2", "iterations"},
            {{c.method, format_number(c.noise), std::to_string(c.N), format_number(s),
              format_number(T), format_number(r.error), std::to_string(r.iterations)}});
  std::cout << c.method << " relative_l2=" << format_number(r.error) << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& c) {
  std::vector<std::vector<std::string>> rows;
  if (!c.sweep_s.empty()) {
    const Sinogram g = simulate(c);
    for (const auto& r : sweep_s(c, c.sweep_s, g))
      rows.push_back({format_number(r.s), format_number(r.T), format_number(r.error)});
  }
  write_csv(fs::path(c.output_dir) / "sweep_s.csv", {"s", "T", "error"}, rows);
  for (const auto& r : rows) std::cout << r[0] << "  " << r[1] << "  " << r[2] << "\n";
  return 0;
}

int cmd_compare(const ExperimentConfig& c) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : compare(c)) rows.push_back({format_number(r.noise), r.method, format_number(r.error)});
  write_csv(fs::path(c.output_dir) / "compare.csv", {"noise", "method", "error"}, rows);
  for (const auto& r : rows) std::cout << r[0] << "  " << r[1] << "  " << r[2] << "\n";
  return 0;
}

int cmd_analyze(const ExperimentConfig& c) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : analyze_basis(c))
    rows.push_back({name(c.generator), format_number(r.s), format_number(r.riesz_lower),
                    format_number(r.riesz_upper), format_number(r.saturation),
                    format_number(r.pou_defect)});
  write_csv(fs::path(c.output_dir) / "analyze_basis.csv",
            {"generator", "s", "riesz_lower", "riesz_upper", "saturation", "pou_defect"}, rows);
  for (const auto& r : rows) std::cout << r[1] << "  " << r[2] << "  " << r[3] << "  " << r[4] << "  " << r[5] << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin least-squares reconstruction for 2D photoacoustic tomography"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", f.out_dir, "output directory");
  app.add_option("--seed", f.seed, "noise seed");
  app.add_option("--method", f.method, "galerkin | galerkin-cg | dd-cg | fbp | pixel");
  app.add_option("--noise", f.noise, "relative noise level p");
  app.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", f.print_config, "print the resolved config and exit");

  auto* sim = app.add_subcommand("simulate", "simulate wave data of the phantom");
  auto* rec = app.add_subcommand("reconstruct", "reconstruct with the selected method");
  rec->add_option("--data", f.data_path, "binary sinogram cache (simulated if omitted)");
  auto* sweep = app.add_subcommand("sweep-s", "Galerkin error over the configured s values");
  auto* cmp = app.add_subcommand("compare", "methods x noise levels error table");
  auto* ana = app.add_subcommand("analyze-basis", "Riesz bounds, saturation and partition of unity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(f.threads);
    const ExperimentConfig c = resolve(f);
    if (f.print_config) {
      std::cout << to_json(c).dump(2) << "\n";
      return 0;
    }
    if (*sim) return cmd_simulate(c);
    if (*rec) return cmd_reconstruct(c, f.data_path);
    if (*sweep) return cmd_sweep(c);
    if (*cmp) return cmd_compare(c);
    if (*ana) return cmd_analyze(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
