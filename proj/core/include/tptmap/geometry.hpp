#pragma once

// Flat periodic topologies, point clouds and SPD matrix utilities shared by
// the kernels, the samplers and the finite-difference reference solver.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace tptmap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-dimension extent of a flat product manifold: each coordinate is either
/// periodic with a positive period or unbounded.
class Topology {
 public:
  Topology() = default;
  explicit Topology(std::vector<std::optional<double>> periods);

  static Topology unbounded(std::size_t dim);
  static Topology torus(std::size_t dim, double period);

  std::size_t dim() const noexcept { return periods_.size(); }
  bool is_periodic(std::size_t k) const { return periods_.at(k).has_value(); }
  double period(std::size_t k) const { return *periods_.at(k); }
  const std::vector<std::optional<double>>& periods() const noexcept { return periods_; }

  /// Maps a coordinate into the canonical range [-period/2, period/2).
  /// Unbounded coordinates are returned unchanged.
  double wrap(std::size_t k, double value) const;
  void wrap_in_place(Eigen::Ref<Vec> x) const;

  bool operator==(const Topology&) const = default;

 private:
  std::vector<std::optional<double>> periods_;
};

/// Minimum-image displacement x - y.
Vec displacement(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& y,
                 const Topology& topology);

/// n sample points in d collective-variable dimensions. Periodic coordinates
/// are wrapped into canonical range on construction.
class PointCloud {
 public:
  PointCloud(RowMatrix points, Topology topology);

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  const Topology& topology() const noexcept { return topology_; }
  const RowMatrix& points() const noexcept { return points_; }
  Vec point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }
  double operator()(std::size_t i, std::size_t k) const {
    return points_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }

  /// Subset in the given index order.
  PointCloud select(const std::vector<std::size_t>& indices) const;

 private:
  RowMatrix points_;
  Topology topology_;
};

/// Symmetric positive definite matrix with its eigendecomposition, inverse
/// and square root cached at construction.
///
/// Construction rejects asymmetry beyond 1e-12 (relative to the largest
/// entry) and any matrix whose smallest eigenvalue is below 1e-10 times the
/// largest.
class SpdMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;
  static constexpr double kConditionTolerance = 1e-10;

  explicit SpdMatrix(const Mat& m);

  static SpdMatrix identity(std::size_t dim);
  /// Builds from the packed lower triangle, row-major: (0,0), (1,0), (1,1), ...
  static SpdMatrix from_lower_triangle(const std::vector<double>& packed, std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Mat& matrix() const noexcept { return matrix_; }
  const Mat& inverse() const noexcept { return inverse_; }
  const Mat& sqrt() const noexcept { return sqrt_; }
  const Vec& eigenvalues() const noexcept { return eigenvalues_; }
  double min_eigenvalue() const { return eigenvalues_.minCoeff(); }
  double max_eigenvalue() const { return eigenvalues_.maxCoeff(); }

  std::vector<double> lower_triangle() const;

 private:
  Mat matrix_;
  Mat inverse_;
  Mat sqrt_;
  Vec eigenvalues_;
};

/// Symmetric square root S with S*S = M.
SpdMatrix spd_sqrt(const SpdMatrix& m);

/// One SpdMatrix per point, index-aligned with a PointCloud.
class TensorField {
 public:
  TensorField() = default;
  explicit TensorField(std::vector<SpdMatrix> tensors);
  /// Validates each matrix, naming the offending index on failure.
  static TensorField from_matrices(const std::vector<Mat>& matrices);

  std::size_t size() const noexcept { return tensors_.size(); }
  std::size_t dim() const { return tensors_.empty() ? 0 : tensors_.front().dim(); }
  const SpdMatrix& operator[](std::size_t i) const { return tensors_[i]; }
  const std::vector<SpdMatrix>& tensors() const noexcept { return tensors_; }
  double max_eigenvalue() const;

  TensorField select(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<SpdMatrix> tensors_;
};

/// Half-sum Mahalanobis form 1/2 z^T (M_i^{-1} + M_j^{-1}) z with z the
/// minimum-image displacement x_i - x_j.
double mahalanobis_quadratic(const Eigen::Ref<const Vec>& xi, const Eigen::Ref<const Vec>& xj,
                             const SpdMatrix& mi, const SpdMatrix& mj, const Topology& topology);

/// Same form for an already computed displacement.
double mahalanobis_quadratic(const Eigen::Ref<const Vec>& z, const SpdMatrix& mi,
                             const SpdMatrix& mj);

}  // namespace tptmap
