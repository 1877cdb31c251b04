#include "tptmap/geometry.hpp"

#include "tptmap/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace tptmap {

namespace {
constexpr const char* kModule = "geometry";
}

Topology::Topology(std::vector<std::optional<double>> periods) : periods_(std::move(periods)) {
  for (std::size_t k = 0; k < periods_.size(); ++k) {
    if (periods_[k] && !(*periods_[k] > 0.0 && std::isfinite(*periods_[k]))) {
      std::ostringstream msg;
      msg << "period of dimension " << k << " must be positive and finite, got " << *periods_[k];
      throw_config(kModule, msg.str());
    }
  }
}

Topology Topology::unbounded(std::size_t dim) {
  return Topology(std::vector<std::optional<double>>(dim, std::nullopt));
}

Topology Topology::torus(std::size_t dim, double period) {
  return Topology(std::vector<std::optional<double>>(dim, period));
}

double Topology::wrap(std::size_t k, double value) const {
  const auto& p = periods_[k];
  if (!p) return value;
  double w = value - *p * std::floor(value / *p + 0.5);
  // floor() rounding can land exactly on +period/2.
  if (w >= 0.5 * *p) w -= *p;
  if (w < -0.5 * *p) w += *p;
  return w;
}

void Topology::wrap_in_place(Eigen::Ref<Vec> x) const {
  for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = wrap(static_cast<std::size_t>(k), x[k]);
}

Vec displacement(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& y,
                 const Topology& topology) {
  if (x.size() != y.size() || static_cast<std::size_t>(x.size()) != topology.dim()) {
    std::ostringstream msg;
    msg << "displacement: dimension mismatch (x: " << x.size() << ", y: " << y.size()
        << ", topology: " << topology.dim() << ")";
    throw_data(kModule, msg.str());
  }
  Vec z = x - y;
  topology.wrap_in_place(z);
  return z;
}

PointCloud::PointCloud(RowMatrix points, Topology topology)
    : points_(std::move(points)), topology_(std::move(topology)) {
  if (points_.rows() < 2) throw_data(kModule, "a point cloud needs at least 2 points");
  if (static_cast<std::size_t>(points_.cols()) != topology_.dim()) {
    std::ostringstream msg;
    msg << "point cloud has " << points_.cols() << " columns but the topology has "
        << topology_.dim() << " dimensions";
    throw_config(kModule, msg.str());
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index k = 0; k < points_.cols(); ++k) {
      double& v = points_(i, k);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "point " << i << " has a non-finite coordinate " << k;
        throw_data(kModule, msg.str());
      }
      v = topology_.wrap(static_cast<std::size_t>(k), v);
    }
  }
}

PointCloud PointCloud::select(const std::vector<std::size_t>& indices) const {
  RowMatrix sub(static_cast<Eigen::Index>(indices.size()), points_.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    sub.row(static_cast<Eigen::Index>(r)) = points_.row(static_cast<Eigen::Index>(indices.at(r)));
  }
  return PointCloud(std::move(sub), topology_);
}

SpdMatrix::SpdMatrix(const Mat& m) : matrix_(m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw_data(kModule, "SPD matrix must be square and non-empty");
  if (!m.allFinite()) throw_data(kModule, "SPD matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw_data(kModule, "matrix is not symmetric");
  }
  matrix_ = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(matrix_);
  if (eig.info() != Eigen::Success) throw_numerical(kModule, "eigendecomposition failed");
  eigenvalues_ = eig.eigenvalues();
  const double lmax = eigenvalues_.maxCoeff();
  const double lmin = eigenvalues_.minCoeff();
  if (!(lmax > 0.0) || lmin < kConditionTolerance * lmax) {
    std::ostringstream msg;
    msg << "matrix is not positive definite to tolerance (eigenvalues " << lmin << ", " << lmax << ")";
    throw_data(kModule, msg.str());
  }
  const Mat& v = eig.eigenvectors();
  inverse_ = v * eigenvalues_.cwiseInverse().asDiagonal() * v.transpose();
  inverse_ = 0.5 * (inverse_ + inverse_.transpose()).eval();
  sqrt_ = v * eigenvalues_.cwiseSqrt().asDiagonal() * v.transpose();
  sqrt_ = 0.5 * (sqrt_ + sqrt_.transpose()).eval();
}

SpdMatrix SpdMatrix::identity(std::size_t dim) {
  return SpdMatrix(Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

SpdMatrix SpdMatrix::from_lower_triangle(const std::vector<double>& packed, std::size_t dim) {
  if (packed.size() != dim * (dim + 1) / 2) {
    std::ostringstream msg;
    msg << "expected " << dim * (dim + 1) / 2 << " lower-triangle entries for dimension " << dim
        << ", got " << packed.size();
    throw_data(kModule, msg.str());
  }
  Mat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::size_t c = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t s = 0; s <= r; ++s) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = packed[c];
      m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) = packed[c];
      ++c;
    }
  }
  return SpdMatrix(m);
}

std::vector<double> SpdMatrix::lower_triangle() const {
  std::vector<double> out;
  for (Eigen::Index r = 0; r < matrix_.rows(); ++r)
    for (Eigen::Index s = 0; s <= r; ++s) out.push_back(matrix_(r, s));
  return out;
}

SpdMatrix spd_sqrt(const SpdMatrix& m) { return SpdMatrix(m.sqrt()); }

TensorField::TensorField(std::vector<SpdMatrix> tensors) : tensors_(std::move(tensors)) {
  for (std::size_t i = 1; i < tensors_.size(); ++i) {
    if (tensors_[i].dim() != tensors_[0].dim()) {
      std::ostringstream msg;
      msg << "tensor " << i << " has dimension " << tensors_[i].dim() << ", expected "
          << tensors_[0].dim();
      throw_data(kModule, msg.str());
    }
  }
}

TensorField TensorField::from_matrices(const std::vector<Mat>& matrices) {
  std::vector<SpdMatrix> out;
  out.reserve(matrices.size());
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    try {
      out.emplace_back(matrices[i]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "tensor at index " << i << ": " << e.detail();
      throw Error(e.kind(), kModule, msg.str());
    }
  }
  return TensorField(std::move(out));
}

double TensorField::max_eigenvalue() const {
  double best = 0.0;
  for (const auto& t : tensors_) best = std::max(best, t.max_eigenvalue());
  return best;
}

TensorField TensorField::select(const std::vector<std::size_t>& indices) const {
  std::vector<SpdMatrix> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(tensors_.at(i));
  return TensorField(std::move(out));
}

double mahalanobis_quadratic(const Eigen::Ref<const Vec>& z, const SpdMatrix& mi,
                             const SpdMatrix& mj) {
  const Mat& a = mi.inverse();
  const Mat& b = mj.inverse();
  const Eigen::Index d = z.size();
  double acc = 0.0;
  for (Eigen::Index r = 0; r < d; ++r) {
    double row = 0.0;
    for (Eigen::Index c = 0; c < d; ++c) row += (a(r, c) + b(r, c)) * z[c];
    acc += z[r] * row;
  }
  return 0.5 * acc;
}

double mahalanobis_quadratic(const Eigen::Ref<const Vec>& xi, const Eigen::Ref<const Vec>& xj,
                             const SpdMatrix& mi, const SpdMatrix& mj, const Topology& topology) {
  if (mi.dim() != topology.dim() || mj.dim() != topology.dim()) {
    throw_data(kModule, "mahalanobis_quadratic: tensor dimension does not match topology");
  }
  return mahalanobis_quadratic(displacement(xi, xj, topology), mi, mj);
}

}  // namespace tptmap
