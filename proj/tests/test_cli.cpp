#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "patgal/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("patgal_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(PATGAL_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// small sampling so each command runs in well under a second
json small_config() {
  return json::parse(R"({
    "grid": {"N": 20, "s": 1.3265},
    "geometry": {"N_det": 40},
    "time": {"T_final": 3.0, "N_t": 120},
    "sweep": {"s_values": [1.3265, 1.0]},
    "compare": {"noise_levels": [0.0, 0.05], "methods": ["galerkin-cg", "fbp"]},
    "analyze": {"s_values": [1.0, 0.5]}
  })");
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  patgal::write_text(p, j.dump(2));
  return p;
}

}  // namespace

TEST_CASE("configuration errors exit with code 2") {
  const fs::path dir = fresh_dir("bad");
  json bad = small_config();
  bad["grid"]["N"] = 1;
  CHECK(run("--config " + write_config(dir, bad).string() + " simulate", dir / "log") == 2);
  patgal::write_text(dir / "broken.json", "{ not json");
  CHECK(run("--config " + (dir / "broken.json").string() + " simulate", dir / "log") == 2);
  CHECK(run("--method nope --out " + dir.string() + " simulate", dir / "log") == 2);
  CHECK(run("frobnicate", dir / "log") == 2);
  CHECK(run("", dir / "log") == 2);
}

TEST_CASE("simulate writes the sinogram, cache and provenance") {
  const fs::path dir = fresh_dir("sim");
  const fs::path cfg = write_config(dir, small_config());
  REQUIRE(run("--config " + cfg.string() + " --out " + (dir / "a").string() + " simulate", dir / "log") == 0);
  CHECK(fs::file_size(dir / "a" / "sinogram.bin") == 16 + 40 * 120 * 8);
  const json prov = json::parse(slurp(dir / "a" / "sinogram.json"));
  CHECK(prov["config_hash"].get<std::string>().size() == 16);
  CHECK(prov["seed"].get<std::uint64_t>() == 20240601);

  // default sampling: 100 x 376 values
  REQUIRE(run("--out " + (dir / "d").string() + " simulate", dir / "log") == 0);
  CHECK(fs::file_size(dir / "d" / "sinogram.bin") == 16 + 100 * 376 * 8);

  json empty = small_config();
  empty["phantom"] = json::array();
  const fs::path ecfg = dir / "empty.json";
  patgal::write_text(ecfg, empty.dump());
  REQUIRE(run("--config " + ecfg.string() + " --out " + (dir / "e").string() + " simulate", dir / "log") == 0);
  const std::string bin = slurp(dir / "e" / "sinogram.bin");
  CHECK(bin.find_first_not_of('\0', 16) == std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  const fs::path dir = fresh_dir("det");
  const fs::path cfg = write_config(dir, small_config());
  for (const char* sub : {"a", "b"}) {
    const std::string base = "--config " + cfg.string() + " --noise 0.05 --seed 11 --out " + (dir / sub).string();
    REQUIRE(run(base + " simulate", dir / "log") == 0);
    REQUIRE(run(base + " reconstruct", dir / "log") == 0);
    REQUIRE(run(base + " compare", dir / "log") == 0);
  }
  for (const char* f : {"sinogram.bin", "sinogram.csv", "errors.csv", "coefficients.csv", "compare.csv", "image.pgm"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  const fs::path other = dir / "c";
  REQUIRE(run("--config " + cfg.string() + " --noise 0.05 --seed 12 --out " + other.string() + " simulate", dir / "log") == 0);
  CHECK(slurp(other / "sinogram.bin") != slurp(dir / "a" / "sinogram.bin"));
}

TEST_CASE("reconstruct writes image, coefficients and an error row") {
  const fs::path dir = fresh_dir("rec");
  const fs::path cfg = write_config(dir, small_config());
  REQUIRE(run("--config " + cfg.string() + " --out " + dir.string() + " simulate", dir / "log") == 0);
  REQUIRE(run("--config " + cfg.string() + " --out " + dir.string() + " reconstruct --data " +
                  (dir / "sinogram.bin").string(),
              dir / "log") == 0);
  std::istringstream rows(slurp(dir / "errors.csv"));
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  CHECK(header == "method,noise,N,s,T,relative_l2,iterations");
  CHECK(row.rfind("galerkin-cg,", 0) == 0);
  const double err = std::stod(row.substr(row.find_last_of(',', row.rfind(',') - 1) + 1));
  CHECK(std::isfinite(err));
  CHECK(fs::exists(dir / "image.pgm"));
  CHECK(fs::exists(dir / "coefficients.csv"));

  REQUIRE(run("--config " + cfg.string() + " --method fbp --out " + (dir / "f").string() + " reconstruct", dir / "log") == 0);
  CHECK(slurp(dir / "log").find("warning") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "f" / "coefficients.csv"));
  REQUIRE(run("--config " + cfg.string() + " --method pixel --out " + (dir / "p").string() + " reconstruct", dir / "log") == 0);
  CHECK(slurp(dir / "p" / "errors.csv").find("pixel,") != std::string::npos);
}

TEST_CASE("sweep, compare and analyze tables") {
  const fs::path dir = fresh_dir("tables");
  const fs::path cfg = write_config(dir, small_config());
  const std::string base = "--config " + cfg.string() + " --out " + dir.string();
  REQUIRE(run(base + " sweep-s", dir / "log") == 0);
  CHECK(slurp(dir / "sweep_s.csv").rfind("s,T,error\n1.3265,", 0) == 0);
  REQUIRE(run(base + " compare", dir / "log") == 0);
  const std::string cmp = slurp(dir / "compare.csv");
  CHECK(std::count(cmp.begin(), cmp.end(), '\n') == 1 + 4);
  REQUIRE(run(base + " analyze-basis", dir / "log") == 0);
  CHECK(slurp(dir / "analyze_basis.csv").rfind("generator,s,riesz_lower,riesz_upper,saturation,pou_defect\nkb,1,", 0) == 0);

  json none = small_config();
  none["sweep"]["s_values"] = json::array();
  const fs::path ncfg = dir / "none.json";
  patgal::write_text(ncfg, none.dump());
  REQUIRE(run("--config " + ncfg.string() + " --out " + (dir / "n").string() + " sweep-s", dir / "log") == 0);
  CHECK(slurp(dir / "n" / "sweep_s.csv") == "s,T,error\n");
}

TEST_CASE("print-config dumps a loadable configuration") {
  const fs::path dir = fresh_dir("print");
  REQUIRE(run("--print-config --seed 5 simulate", dir / "out.json") == 0);
  const json j = json::parse(slurp(dir / "out.json"));
  CHECK(j["seed"].get<int>() == 5);
  CHECK(j["time"]["N_t"].get<int>() == 376);
  CHECK(run("--config " + (dir / "out.json").string() + " --print-config simulate", dir / "again.json") == 0);
  CHECK(slurp(dir / "again.json") == slurp(dir / "out.json"));
}
