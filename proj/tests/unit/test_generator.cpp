#include "tptmap/error.hpp"
#include "tptmap/generator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace tptmap {
namespace {

KernelMatrix two_point_kernel() {
  KernelMatrix k;
  k.k.resize(2, 2);
  const double e = std::exp(-1.0);
  std::vector<Eigen::Triplet<double>> t = {{0, 0, 1.0}, {0, 1, e}, {1, 0, e}, {1, 1, 1.0}};
  k.k.setFromTriplets(t.begin(), t.end());
  k.epsilon = 0.5;
  return k;
}

PointCloud ring(std::size_t n) {
  RowMatrix pts(static_cast<Eigen::Index>(n), 1);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) pts(static_cast<Eigen::Index>(i), 0) = -std::numbers::pi + h * i;
  return PointCloud(pts, Topology::torus(1, 2.0 * std::numbers::pi));
}

TEST(RowSums, TwoPoint) {
  const Vec p = row_sums(two_point_kernel());
  EXPECT_NEAR(p[0], 1.36788, 1e-5);
  EXPECT_DOUBLE_EQ(p[0], p[1]);
}

TEST(RowSums, PrunedKernelGivesOnes) {
  RowMatrix pts(3, 1);
  pts << 0.0, 100.0, 200.0;
  const auto k = isotropic_kernel(PointCloud(pts, Topology::unbounded(1)), 0.1);
  EXPECT_TRUE(row_sums(k).isApprox(Vec::Ones(3)));
}

TEST(BuildGenerator, TwoPointHandCase) {
  const auto l = build_generator(two_point_kernel(), 0.5, 1.0);
  const Mat d(l.l);
  EXPECT_NEAR(d(0, 0), -0.53788, 1e-5);
  EXPECT_NEAR(d(0, 1), 0.53788, 1e-5);
  EXPECT_NEAR(d(1, 0), 0.53788, 1e-5);
  EXPECT_NEAR(d(1, 1), -0.53788, 1e-5);
  // P_01 = e^-1 / (1 + e^-1); L = (P - I) / eps.
  EXPECT_NEAR(d(0, 1), std::exp(-1.0) / (1.0 + std::exp(-1.0)) / 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(l.epsilon, 0.5);
}

TEST(BuildGenerator, AlphaIrrelevantForUniformDensity) {
  const auto cloud = ring(200);
  const double eps = 0.01;
  const Mat l0(build_generator(isotropic_kernel(cloud, eps), 0.0, 1.0).l);
  const Mat l1(build_generator(isotropic_kernel(cloud, eps), 1.0, 1.0).l);
  EXPECT_LT((l0 - l1).cwiseAbs().maxCoeff(), 1e-8 * l0.cwiseAbs().maxCoeff());
}

TEST(BuildGenerator, StructureOnRandomCloud) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n;
  RowMatrix pts(500, 2);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = n(rng);
  const PointCloud cloud(pts, Topology::unbounded(2));
  for (double alpha : {0.0, 0.5, 1.0}) {
    const auto l = build_generator(isotropic_kernel(cloud, 0.05), alpha, 2.0);
    const auto d = diagnose(l);
    EXPECT_LT(d.max_row_sum, 1e-10);
    EXPECT_GE(d.min_off_diagonal, 0.0);
    EXPECT_LE(d.max_diagonal, 0.0);
    EXPECT_LT(d.max_abs_l_times_one, 1e-10);
    EXPECT_LT(l.stochasticity_error, 1e-12);
    EXPECT_DOUBLE_EQ(l.beta, 2.0);
  }
}

TEST(Apply, ConstantsAndIndicators) {
  const auto cloud = ring(50);
  const auto l = build_generator(isotropic_kernel(cloud, 0.05), 0.5, 1.0);
  EXPECT_LT(apply(l, Vec::Constant(50, 3.0)).cwiseAbs().maxCoeff(), 1e-10);
  Vec e = Vec::Zero(50);
  e[7] = 1.0;
  EXPECT_LT(apply(l, e)[7], 0.0);
  EXPECT_THROW(apply(l, Vec::Zero(49)), Error);
}

TEST(Apply, MatchesDenseProduct) {
  const auto cloud = ring(80);
  const auto l = build_generator(isotropic_kernel(cloud, 0.1), 0.5, 1.0);
  Vec f(80);
  for (int i = 0; i < 80; ++i) f[i] = std::sin(cloud(static_cast<std::size_t>(i), 0));
  EXPECT_LT((apply(l, f) - Mat(l.l) * f).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace tptmap
