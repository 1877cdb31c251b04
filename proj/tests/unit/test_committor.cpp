#include "tptmap/committor.hpp"
#include "tptmap/error.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tptmap {
namespace {

GeneratorMatrix from_dense(const Mat& d, double beta = 1.0) {
  GeneratorMatrix l;
  l.l = d.sparseView();
  l.beta = beta;
  l.epsilon = 1.0;
  return l;
}

GeneratorMatrix chain(double left, double right) {
  Mat d = Mat::Zero(3, 3);
  d.row(0) << -1.0, 1.0, 0.0;
  d.row(1) << left, -(left + right), right;
  d.row(2) << 0.0, 1.0, -1.0;
  return from_dense(d);
}

GeneratorMatrix random_generator(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  RowMatrix pts(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = g(rng);
  return build_generator(isotropic_kernel(PointCloud(pts, Topology::unbounded(2)), 0.1), 0.5, 1.0);
}

TEST(SolveCommittor, ThreePointChain) {
  EXPECT_TRUE(solve_committor(chain(1.0, 1.0), {0}, {2}).q.isApprox((Vec(3) << 0.0, 0.5, 1.0).finished()));
  const Vec q = solve_committor(chain(3.0, 1.0), {0}, {2}).q;
  EXPECT_NEAR(q[1], 0.25, 1e-14);
  EXPECT_EQ(q[0], 0.0);
  EXPECT_EQ(q[2], 1.0);
}

TEST(SolveCommittor, NoInteriorGivesIndicator) {
  const auto sol = solve_committor(chain(1.0, 1.0), {0, 1}, {2});
  EXPECT_EQ(sol.q, (Vec(3) << 0.0, 0.0, 1.0).finished());
  EXPECT_EQ(sol.interior_size(), 0u);
}

TEST(SolveCommittor, SwapAndScaleSymmetry) {
  const auto l = random_generator(400, 1);
  const std::vector<std::size_t> a = {0, 1, 2}, b = {3, 4};
  const auto q = solve_committor(l, a, b).q;
  const auto swapped = solve_committor(l, b, a).q;
  EXPECT_LT((q + swapped - Vec::Ones(q.size())).cwiseAbs().maxCoeff(), 1e-10);

  GeneratorMatrix scaled = l;
  scaled.l *= 7.5;
  EXPECT_LT((solve_committor(scaled, a, b).q - q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SolveCommittor, MaximumPrincipleAndBoundaryValues) {
  const auto l = random_generator(400, 2);
  const auto sol = solve_committor(l, {10}, {20});
  EXPECT_EQ(sol.q[10], 0.0);
  EXPECT_EQ(sol.q[20], 1.0);
  for (auto i : sol.interior()) {
    EXPECT_GE(sol.q[static_cast<Eigen::Index>(i)], 0.0);
    EXPECT_LE(sol.q[static_cast<Eigen::Index>(i)], 1.0);
  }
  EXPECT_LT(sol.residual, 1e-9);
}

TEST(SolveCommittor, SolverPathsAgree) {
  const auto l = random_generator(300, 3);
  SolverOptions direct;
  direct.dense_fill_threshold = 1.1;
  SolverOptions dense;
  dense.dense_fill_threshold = 0.0;
  SolverOptions iterative;
  iterative.direct_max_n = 0;
  const auto q0 = solve_committor(l, {0}, {1}, direct);
  const auto q1 = solve_committor(l, {0}, {1}, dense);
  const auto q2 = solve_committor(l, {0}, {1}, iterative);
  EXPECT_EQ(q0.method, "sparse-lu");
  EXPECT_EQ(q1.method, "dense-lu");
  EXPECT_EQ(q2.method, "bicgstab");
  EXPECT_LT((q0.q - q1.q).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((q0.q - q2.q).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(SolveCommittor, StrandedComponentIsReported) {
  Mat d = Mat::Zero(5, 5);
  d.row(0) << -1, 1, 0, 0, 0;
  d.row(1) << 1, -2, 1, 0, 0;
  d.row(2) << 0, 1, -1, 0, 0;
  d.row(3) << 0, 0, 0, -1, 1;
  d.row(4) << 0, 0, 0, 1, -1;
  try {
    solve_committor(from_dense(d), {0}, {2});
    FAIL() << "expected a data error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
  }
}

TEST(SolveCommittor, RejectsBadIndexSets) {
  const auto l = chain(1.0, 1.0);
  EXPECT_THROW(solve_committor(l, {}, {2}), Error);
  EXPECT_THROW(solve_committor(l, {0}, {0}), Error);
  EXPECT_THROW(solve_committor(l, {0}, {5}), Error);
}

TEST(Classify, BallsAndBoundary) {
  RowMatrix pts(4, 2);
  pts << 0.0, 0.0, 1.0, 0.0, 3.0, 0.0, 0.5, 0.5;
  const PointCloud c(pts, Topology::unbounded(2));
  const Ellipse a = Ellipse::ball((Vec(2) << 0.0, 0.0).finished(), 1.0);
  const Ellipse b = Ellipse::ball((Vec(2) << 3.0, 0.0).finished(), 0.5);
  const auto p = classify(c, a, b);
  EXPECT_EQ(p.a, (std::vector<std::size_t>{0, 1, 3}));  // point 1 lies on the boundary
  EXPECT_EQ(p.b, (std::vector<std::size_t>{2}));
}

TEST(Classify, OverlapAndEmptySetsThrow) {
  RowMatrix pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  const PointCloud c(pts, Topology::unbounded(1));
  EXPECT_THROW(classify(c, IndexList{{0, 1}}, IndexList{{1, 2}}), Error);
  EXPECT_THROW(classify(c, IndexList{{}}, IndexList{{2}}), Error);
  EXPECT_THROW(classify(c, IndexList{{0}}, IndexList{{3}}), Error);
}

TEST(Ellipse, WrapsOnTorus) {
  const Topology t = Topology::torus(1, 10.0);
  const Ellipse e = Ellipse::ball(Vec::Constant(1, 4.5), 1.0);
  EXPECT_TRUE(e.contains(Vec::Constant(1, -4.8), t));
  EXPECT_FALSE(e.contains(Vec::Constant(1, 3.0), t));
}

TEST(ClampCommittor, ToleranceBoundary) {
  Vec q(3);
  q << -1e-9, 0.5, 1.0 + 1e-9;
  clamp_committor(q, "test");
  EXPECT_EQ(q[0], 0.0);
  EXPECT_EQ(q[2], 1.0);
  Vec bad(2);
  bad << -1e-6, 0.5;
  EXPECT_THROW(clamp_committor(bad, "test"), Error);
}

}  // namespace
}  // namespace tptmap
