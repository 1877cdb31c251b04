#include "tptmap/csv.hpp"

#include "tptmap/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tptmap::csv {

namespace {

constexpr const char* kModule = "io";

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  const char* p = line.c_str();
  while (true) {
    while (*p == ' ' || *p == '\t') ++p;
    if (*p == '\0' || *p == '\r') break;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(p, &end);
    if (end == p || errno == ERANGE) return false;
    out.push_back(v);
    p = end;
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p == ',') {
      ++p;
      continue;
    }
    if (*p == '\0') break;
    return false;
  }
  return !out.empty();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw_data(kModule, "cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

RowMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw_data(kModule, "cannot open '" + path.string() + "'");
  std::vector<double> values;
  std::vector<double> row;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first_content = true;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!parse_row(line, row)) {
      if (first_content) {
        first_content = false;  // header
        continue;
      }
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": cannot parse numeric row";
      throw_data(kModule, msg.str());
    }
    first_content = false;
    if (rows == 0) cols = row.size();
    if (row.size() != cols) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected " << cols << " columns, got "
          << row.size();
      throw_data(kModule, msg.str());
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw_data(kModule, "'" + path.string() + "' contains no data rows");
  RowMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), out.data());
  return out;
}

Vec read_vector(const std::filesystem::path& path) {
  RowMatrix m = read_matrix(path);
  if (m.cols() != 1) {
    std::ostringstream msg;
    msg << "'" << path.string() << "' must have a single column, found " << m.cols();
    throw_data(kModule, msg.str());
  }
  return m.col(0);
}

void write_matrix(const std::filesystem::path& path, const RowMatrix& values) {
  auto os = open_for_write(path);
  std::string line;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    line.clear();
    for (Eigen::Index k = 0; k < values.cols(); ++k) {
      if (k) line += ',';
      line += format_double(values(i, k));
    }
    line += '\n';
    os << line;
  }
  if (!os) throw_data(kModule, "write to '" + path.string() + "' failed");
}

void write_vector(const std::filesystem::path& path, const Vec& values) {
  RowMatrix m(values.size(), 1);
  m.col(0) = values;
  write_matrix(path, m);
}

PointCloud read_points(const std::filesystem::path& path, const Topology& topology) {
  RowMatrix m = read_matrix(path);
  if (static_cast<std::size_t>(m.cols()) != topology.dim()) {
    std::ostringstream msg;
    msg << "points file '" << path.string() << "' has " << m.cols()
        << " columns but the topology has " << topology.dim() << " dimensions";
    throw_config(kModule, msg.str());
  }
  return PointCloud(std::move(m), topology);
}

TensorField read_tensors(const std::filesystem::path& path, std::size_t dim) {
  RowMatrix m = read_matrix(path);
  const std::size_t expected = dim * (dim + 1) / 2;
  if (static_cast<std::size_t>(m.cols()) != expected) {
    std::ostringstream msg;
    msg << "tensor file '" << path.string() << "' has " << m.cols() << " columns, expected "
        << expected << " (lower triangle of a " << dim << "x" << dim << " matrix)";
    throw_config(kModule, msg.str());
  }
  std::vector<Mat> mats;
  mats.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Mat t(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::Index c = 0;
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index s = 0; s <= r; ++s, ++c) t(r, s) = t(s, r) = m(i, c);
    mats.push_back(std::move(t));
  }
  return TensorField::from_matrices(mats);
}

void write_tensors(const std::filesystem::path& path, const TensorField& field) {
  const std::size_t dim = field.dim();
  RowMatrix m(static_cast<Eigen::Index>(field.size()), static_cast<Eigen::Index>(dim * (dim + 1) / 2));
  for (std::size_t i = 0; i < field.size(); ++i) {
    const auto lower = field[i].lower_triangle();
    for (std::size_t c = 0; c < lower.size(); ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = lower[c];
  }
  write_matrix(path, m);
}

}  // namespace tptmap::csv
