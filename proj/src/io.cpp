#include "patgal/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace patgal {
namespace {

static_assert(std::endian::native == std::endian::little, "binary cache assumes little endian");

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << content;
  check_written(out, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) text += ',';
      text += row[c];
    }
    text += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width does not match the header");
    append_row(row);
  }
  write_text(path, text);
}

void write_sinogram_csv(const std::filesystem::path& path, const Sinogram& g) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << "i,j,t,z_x,z_y,value\n";
  for (int i = 0; i < g.geometry.n_det; ++i) {
    const Eigen::Vector2d z = g.geometry.detector(i);
    const std::string zx = format_number(z.x());
    const std::string zy = format_number(z.y());
    for (int j = 0; j < g.time.n_t; ++j) {
      out << (i + 1) << ',' << (j + 1) << ',' << format_number(g.time.t(j)) << ',' << zx << ','
          << zy << ',' << format_number(g.values(i, j)) << '\n';
    }
  }
  check_written(out, path);
}

void write_sinogram_binary(const std::filesystem::path& path, const Sinogram& g) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  const std::array<std::uint64_t, 2> header{static_cast<std::uint64_t>(g.values.rows()),
                                            static_cast<std::uint64_t>(g.values.cols())};
  out.write(reinterpret_cast<const char*>(header.data()), sizeof(header));
  out.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(sizeof(double) * g.values.size()));
  check_written(out, path);
}

Sinogram read_sinogram_binary(const std::filesystem::path& path, const DetectorGeometry& geometry,
                              const TimeGrid& time) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::array<std::uint64_t, 2> header{};
  in.read(reinterpret_cast<char*>(header.data()), sizeof(header));
  if (!in) throw std::runtime_error("'" + path.string() + "': truncated header");
  if (header[0] != static_cast<std::uint64_t>(geometry.n_det) ||
      header[1] != static_cast<std::uint64_t>(time.n_t))
    throw std::invalid_argument("'" + path.string() + "': sinogram shape " +
                                std::to_string(header[0]) + "x" + std::to_string(header[1]) +
                                " does not match the configured geometry");
  Sinogram g = zero_sinogram(geometry, time);
  in.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(sizeof(double) * g.values.size()));
  if (!in) throw std::runtime_error("'" + path.string() + "': truncated data");
  return g;
}

void write_pgm16(const std::filesystem::path& path, const Eigen::MatrixXd& image) {
  const double lo = image.size() ? image.minCoeff() : 0.0;
  const double hi = image.size() ? image.maxCoeff() : 0.0;
  const double scale = hi > lo ? (hi - lo) / 65535.0 : 1.0;
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n65535\n";
  for (Eigen::Index r = image.rows() - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      const double level = std::round((image(r, c) - lo) / scale);
      const auto v = static_cast<std::uint16_t>(std::clamp(level, 0.0, 65535.0));
      const unsigned char bytes[2] = {static_cast<unsigned char>(v >> 8),
                                      static_cast<unsigned char>(v & 0xff)};
      out.write(reinterpret_cast<const char*>(bytes), 2);
    }
  }
  check_written(out, path);
  nlohmann::ordered_json side;
  side["width"] = image.cols();
  side["height"] = image.rows();
  side["offset"] = lo;
  side["scale"] = scale;
  side["value_min"] = lo;
  side["value_max"] = hi;
  side["map"] = "value = offset + scale * level";
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".json");
  write_text(sidecar, side.dump(2) + "\n");
}

void write_coefficients_csv(const std::filesystem::path& path, const BasisGrid& grid,
                            const Eigen::VectorXd& c) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Eigen::Vector2i& k = grid.indices[p];
    const Eigen::Vector2d m = grid.center(k);
    rows.push_back({std::to_string(k.x()), std::to_string(k.y()), format_number(m.x()),
                    format_number(m.y()), format_number(c[static_cast<Eigen::Index>(p)])});
  }
  write_csv(path, {"k1", "k2", "x", "y", "c"}, rows);
}

}  // namespace patgal
