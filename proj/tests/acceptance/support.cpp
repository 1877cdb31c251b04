#include "support.hpp"

#include <Eigen/Cholesky>

#include <random>

namespace acceptance {

using namespace tptmap;

RowMatrix gaussian_samples(const Mat& cov, std::size_t n, std::uint64_t seed) {
  const Mat chol = Eigen::LLT<Mat>(cov).matrixL();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = cov.rows();
  RowMatrix x(static_cast<Eigen::Index>(n), d);
  Vec xi(d);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < d; ++k) xi[k] = normal(rng);
    x.row(i) = (chol * xi).transpose();
  }
  return x;
}

PointCloud ring(std::size_t n, double period) {
  RowMatrix x(static_cast<Eigen::Index>(n), 1);
  for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i), 0) = period * static_cast<double>(i) / static_cast<double>(n);
  return PointCloud(std::move(x), Topology::torus(1, period));
}

PointCloud trajectory_cloud(const CvSystem& system, const Vec& x0, double dt, std::size_t n_steps,
                            std::size_t stride, std::uint64_t seed) {
  return PointCloud(simulate_cv(system, x0, dt, n_steps, stride, seed).points, system.topology);
}

GeneratorMatrix generator(const PointCloud& cloud, const TensorField* field, KernelKind kind, double eps,
                          double alpha, double beta) {
  return build_generator(build_kernel(kind, cloud, field, eps), alpha, beta);
}

}  // namespace acceptance
