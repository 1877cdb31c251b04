#pragma once

// Plain-text numeric tables: one row per line, comma-separated decimal floats.
// Writers always emit 17 significant digits so files round-trip exactly.

#include "tptmap/geometry.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tptmap::csv {

/// Reads a rectangular numeric table. Blank lines and lines starting with '#'
/// are skipped; a first line that does not parse as numbers is treated as a
/// header and skipped.
RowMatrix read_matrix(const std::filesystem::path& path);
Vec read_vector(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const RowMatrix& values);
void write_vector(const std::filesystem::path& path, const Vec& values);

/// Points file: d columns.
PointCloud read_points(const std::filesystem::path& path, const Topology& topology);
/// Tensor file: d(d+1)/2 lower-triangle columns per row.
TensorField read_tensors(const std::filesystem::path& path, std::size_t dim);
void write_tensors(const std::filesystem::path& path, const TensorField& field);

std::string format_double(double value);

}  // namespace tptmap::csv
