#include "tptmap/kernels.hpp"

#include "tptmap/csv.hpp"
#include "tptmap/error.hpp"
#include "tptmap/neighbors.hpp"
#include "tptmap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace tptmap {

namespace {

constexpr const char* kModule = "kernels";

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream msg;
    msg << "epsilon must be positive and finite, got " << epsilon;
    throw_config(kModule, msg.str());
  }
}

// Minimum-image displacement written into z, always oriented from the larger
// index to the smaller so that the pair value is bitwise symmetric.
inline void pair_displacement(const PointCloud& cloud, std::size_t i, std::size_t j, double* z) {
  const std::size_t a = std::min(i, j);
  const std::size_t b = std::max(i, j);
  const auto& topo = cloud.topology();
  for (std::size_t k = 0; k < cloud.dim(); ++k) z[k] = topo.wrap(k, cloud(a, k) - cloud(b, k));
}

// Assembles the symmetric sparse matrix exp(-s(i,j) / (2 eps)) for all pairs
// with s / (2 eps) <= cutoff. `quad(i, j, z)` returns s for displacement z.
template <class Quad>
SparseMatrix assemble(const PointCloud& cloud, double radius, double epsilon, double cutoff,
                      const Quad& quad) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  const CellList cells(cloud, radius);
  const double limit = cutoff * 2.0 * epsilon;

  std::vector<int> counts(n, 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> z(d);
    for (std::size_t i = begin; i < end; ++i) {
      int c = 0;
      cells.for_each_candidate(i, [&](std::size_t j) {
        if (j == i) {
          ++c;
          return;
        }
        pair_displacement(cloud, i, j, z.data());
        if (quad(i, j, z.data()) <= limit) ++c;
      });
      counts[i] = c;
    }
  });

  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t nnz = 0;
  for (auto c : counts) nnz += static_cast<std::size_t>(c);
  if (nnz > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw_numerical(kModule, "kernel matrix exceeds 2^31 stored entries; reduce epsilon");
  }
  m.resizeNonZeros(static_cast<Eigen::Index>(nnz));
  int* outer = m.outerIndexPtr();
  outer[0] = 0;
  for (std::size_t i = 0; i < n; ++i) outer[i + 1] = outer[i] + counts[i];

  int* inner = m.innerIndexPtr();
  double* values = m.valuePtr();
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> z(d);
    std::vector<std::pair<int, double>> row;
    for (std::size_t i = begin; i < end; ++i) {
      row.clear();
      cells.for_each_candidate(i, [&](std::size_t j) {
        if (j == i) {
          row.emplace_back(static_cast<int>(j), 1.0);
          return;
        }
        pair_displacement(cloud, i, j, z.data());
        const double s = quad(i, j, z.data());
        if (s <= limit) row.emplace_back(static_cast<int>(j), std::exp(-s / (2.0 * epsilon)));
      });
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      int p = outer[i];
      for (const auto& [col, v] : row) {
        inner[p] = col;
        values[p] = v;
        ++p;
      }
    }
  });
  m.finalize();
  return m;
}

}  // namespace

const char* to_string(KernelKind kind) noexcept {
  return kind == KernelKind::Mahalanobis ? "mahalanobis" : "isotropic";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "mahalanobis" || name == "mmap") return KernelKind::Mahalanobis;
  if (name == "isotropic" || name == "dmap") return KernelKind::Isotropic;
  throw_config(kModule, "unknown kernel kind '" + name + "' (expected mahalanobis or isotropic)");
}

KernelMatrix isotropic_kernel(const PointCloud& cloud, double epsilon, double cutoff) {
  check_epsilon(epsilon);
  const std::size_t d = cloud.dim();
  const double radius = std::sqrt(2.0 * cutoff * epsilon);
  auto quad = [d](std::size_t, std::size_t, const double* z) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += z[k] * z[k];
    return s;
  };
  return {assemble(cloud, radius, epsilon, cutoff, quad), epsilon, KernelKind::Isotropic, cutoff};
}

KernelMatrix mahalanobis_kernel(const PointCloud& cloud, const TensorField& field,
                                double epsilon, double cutoff) {
  check_epsilon(epsilon);
  if (field.size() != cloud.size()) {
    std::ostringstream msg;
    msg << "tensor field has " << field.size() << " entries but the cloud has " << cloud.size()
        << " points";
    throw_config(kModule, msg.str());
  }
  if (field.dim() != cloud.dim()) {
    std::ostringstream msg;
    msg << "tensor dimension " << field.dim() << " does not match cloud dimension " << cloud.dim();
    throw_config(kModule, msg.str());
  }
  // s(i,j) >= |z|^2 / lambda_max, so |z| <= sqrt(2 cutoff eps lambda_max) bounds the reach.
  const double radius = std::sqrt(2.0 * cutoff * epsilon * field.max_eigenvalue());
  const auto d = static_cast<Eigen::Index>(cloud.dim());
  auto quad = [&field, d](std::size_t i, std::size_t j, const double* z) {
    return mahalanobis_quadratic(Eigen::Map<const Vec>(z, d), field[i], field[j]);
  };
  return {assemble(cloud, radius, epsilon, cutoff, quad), epsilon, KernelKind::Mahalanobis, cutoff};
}

KernelMatrix build_kernel(KernelKind kind, const PointCloud& cloud, const TensorField* field,
                          double epsilon, double cutoff) {
  if (kind == KernelKind::Isotropic) return isotropic_kernel(cloud, epsilon, cutoff);
  if (field == nullptr) throw_config(kModule, "the mahalanobis kernel requires a tensor field");
  return mahalanobis_kernel(cloud, *field, epsilon, cutoff);
}

Vec isotropic_row_sums(const PointCloud& cloud, double epsilon, double cutoff) {
  check_epsilon(epsilon);
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  const CellList cells(cloud, std::sqrt(2.0 * cutoff * epsilon));
  const double limit = cutoff * 2.0 * epsilon;
  Vec sums(static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> z(d);
    for (std::size_t i = begin; i < end; ++i) {
      double acc = 0.0;
      cells.for_each_candidate(i, [&](std::size_t j) {
        pair_displacement(cloud, i, j, z.data());
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += z[k] * z[k];
        if (s <= limit) acc += std::exp(-s / (2.0 * epsilon));
      });
      sums[static_cast<Eigen::Index>(i)] = acc;
    }
  });
  return sums;
}

void write_triplets(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw_data(kModule, "cannot open '" + path.string() + "' for writing");
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      os << it.row() << ',' << it.col() << ',' << csv::format_double(it.value()) << '\n';
    }
  }
}

}  // namespace tptmap
