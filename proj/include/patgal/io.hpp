#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "patgal/basis.hpp"
#include "patgal/wave.hpp"

namespace patgal {

/// Six significant digits, locale independent.
std::string format_number(double v);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t v);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// CSV with a header row; every row must have as many fields as the header.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Columns i,j,t,z_x,z_y,value with 1-based detector and time indices.
void write_sinogram_csv(const std::filesystem::path& path, const Sinogram& g);

/// 16-byte header (uint64 n_det, uint64 n_t, little endian) then row-major
/// little-endian doubles.
void write_sinogram_binary(const std::filesystem::path& path, const Sinogram& g);
Sinogram read_sinogram_binary(const std::filesystem::path& path, const DetectorGeometry& geometry,
                              const TimeGrid& time);

/// 16-bit binary PGM (first row is the largest y) plus a JSON sidecar holding
/// the affine map value = offset + scale * level.
void write_pgm16(const std::filesystem::path& path, const Eigen::MatrixXd& image);

void write_coefficients_csv(const std::filesystem::path& path, const BasisGrid& grid,
                            const Eigen::VectorXd& c);

}  // namespace patgal
