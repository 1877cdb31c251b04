#pragma once

// Sparse symmetric Gaussian kernel matrices over a point cloud.

#include "tptmap/geometry.hpp"

#include <Eigen/SparseCore>

#include <filesystem>
#include <string>

namespace tptmap {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

enum class KernelKind { Isotropic, Mahalanobis };

const char* to_string(KernelKind kind) noexcept;
/// Accepts "isotropic"/"dmap" and "mahalanobis"/"mmap".
KernelKind kernel_kind_from_string(const std::string& name);

/// Pairs whose exponent argument exceeds this are not stored (exp(-36) ~ 2e-16).
inline constexpr double kDefaultCutoff = 36.0;

struct KernelMatrix {
  SparseMatrix k;
  double epsilon = 0.0;
  KernelKind kind = KernelKind::Isotropic;
  double cutoff = kDefaultCutoff;

  std::size_t size() const noexcept { return static_cast<std::size_t>(k.rows()); }
};

/// K_ij = exp(-|z_ij|^2 / (2 eps)).
KernelMatrix isotropic_kernel(const PointCloud& cloud, double epsilon,
                              double cutoff = kDefaultCutoff);

/// K_ij = exp(-z_ij^T (M_i^{-1} + M_j^{-1}) z_ij / (4 eps)).
KernelMatrix mahalanobis_kernel(const PointCloud& cloud, const TensorField& field,
                                double epsilon, double cutoff = kDefaultCutoff);

/// Dispatches on kind; field is ignored for the isotropic kernel.
KernelMatrix build_kernel(KernelKind kind, const PointCloud& cloud, const TensorField* field,
                          double epsilon, double cutoff = kDefaultCutoff);

/// Row sums of the isotropic kernel without materialising the matrix.
Vec isotropic_row_sums(const PointCloud& cloud, double epsilon, double cutoff = kDefaultCutoff);

/// Debug dump: one "row,col,value" line per stored entry (0-based indices).
void write_triplets(const std::filesystem::path& path, const SparseMatrix& m);

}  // namespace tptmap
