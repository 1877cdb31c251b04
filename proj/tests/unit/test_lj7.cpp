#include "tptmap/error.hpp"
#include "tptmap/lj7.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace tptmap {
namespace {

const double kRStar = std::pow(2.0, 1.0 / 6.0);

Lj7Config perturbed(const char* name, std::uint64_t seed) {
  Lj7Config x = lj7_minimum(name);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 0.05);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] += n(rng);
  return x;
}

Mat fd_jacobian(const Lj7Config& x) {
  Mat j(2, x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Lj7Config xp = x, xm = x;
    xp.data()[c] += 1e-6;
    xm.data()[c] -= 1e-6;
    j.col(c) = (lj7_cvs(xp) - lj7_cvs(xm)) / 2e-6;
  }
  return j;
}

TEST(PairPotential, MinimumAtRStar) {
  Lj7Config pair(2, 2);
  pair << 0.0, 0.0, kRStar, 0.0;
  EXPECT_LT(lj7_gradient(pair, {}).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(pair_potential(kRStar, {}), -1.0, 1e-14);
}

TEST(Lj7Gradient, MatchesFiniteDifferences) {
  const Lj7Params p;
  Lj7Config x = perturbed("C2", 1);
  x(3, 0) += 2.5;  // push one particle into the restraint
  const RowMatrix g = lj7_gradient(x, p);
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Lj7Config xp = x, xm = x;
    xp.data()[c] += 1e-6;
    xm.data()[c] -= 1e-6;
    const double fd = (lj7_energy(xp, p) - lj7_energy(xm, p)) / 2e-6;
    EXPECT_NEAR(g.data()[c], fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Lj7Minima, EnergiesAndStationarity) {
  const double energies[] = {-12.535, -11.501, -11.477, -11.403};
  const char* names[] = {"C0", "C1", "C2", "C3"};
  for (int k = 0; k < 4; ++k) {
    const Lj7Config x = lj7_minimum(names[k]);
    EXPECT_NEAR(lj7_energy(x, {}), energies[k], 1e-3) << names[k];
    EXPECT_LT(lj7_gradient(x, {}).norm(), 1e-8) << names[k];
  }
  EXPECT_THROW(lj7_minimum("C4"), Error);
}

TEST(Lj7Simulate, HexagonStationaryWithoutNoise) {
  Lj7SimulationOptions opts;
  opts.zero_noise = true;
  const Lj7Config x0 = lj7_minimum("C0");
  const auto traj = lj7_simulate({}, x0, 1e-4, 100, 1, 1, opts);
  for (const auto& f : traj.frames) EXPECT_LT((f - x0).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Lj7Simulate, EnergyDecreasesWithoutNoise) {
  Lj7SimulationOptions opts;
  opts.zero_noise = true;
  const Lj7Params p;
  double prev = lj7_energy(perturbed("C1", 2), p);
  bool monotone = true;
  opts.observer = [&](std::size_t, const Lj7Config& x) {
    const double e = lj7_energy(x, p);
    monotone = monotone && e <= prev + 1e-12;
    prev = e;
    return false;
  };
  lj7_simulate(p, perturbed("C1", 2), 1e-3, 2000, 100, 1, opts);
  EXPECT_TRUE(monotone);
}

TEST(Lj7Simulate, DefaultStepKeepsClusterBound) {
  double max_radius = 0.0;
  Lj7SimulationOptions opts;
  opts.observer = [&](std::size_t, const Lj7Config& x) {
    const Eigen::RowVector2d com = x.colwise().mean();
    for (Eigen::Index i = 0; i < x.rows(); ++i) max_radius = std::max(max_radius, (x.row(i) - com).norm());
    return false;
  };
  lj7_simulate({}, lj7_minimum("C0"), kLj7DefaultDt, 200000, 1000, 3, opts);
  EXPECT_LT(max_radius, 3.0);
}

TEST(Lj7Simulate, DeterministicPerSeed) {
  const auto a = lj7_simulate({}, lj7_minimum("C0"), kLj7DefaultDt, 2000, 100, 42);
  const auto b = lj7_simulate({}, lj7_minimum("C0"), kLj7DefaultDt, 2000, 100, 42);
  ASSERT_EQ(a.frames.size(), 20u);
  for (std::size_t i = 0; i < a.frames.size(); ++i) EXPECT_TRUE(a.frames[i] == b.frames[i]);
}

TEST(CoordinationKernel, ReferenceDistances) {
  EXPECT_NEAR(coordination_kernel(kRStar), 0.91, 0.005);
  EXPECT_NEAR(coordination_kernel(std::sqrt(2.0) * kRStar), 0.39, 0.005);
  EXPECT_NEAR(coordination_kernel(2.0 * kRStar), 0.04, 0.005);
  EXPECT_DOUBLE_EQ(coordination_kernel(1.5), 0.5);
}

TEST(CoordinationKernel, SmoothAndDecreasing) {
  double prev = coordination_kernel(0.5);
  for (int k = 1; k <= 400; ++k) {
    const double r = 0.5 + 2.5 * k / 400.0;
    const double s = coordination_kernel(r);
    EXPECT_LT(s, prev);
    EXPECT_NEAR(coordination_kernel_derivative(r), (coordination_kernel(r + 1e-6) - coordination_kernel(r - 1e-6)) / 2e-6,
                1e-7);
    prev = s;
  }
}

TEST(CentralMoments, HandCases) {
  EXPECT_TRUE(central_moments(Vec::Constant(7, 3.2)).isZero(1e-14));
  const Vec a = central_moments((Vec(3) << 1.0, 2.0, 3.0).finished());
  EXPECT_NEAR(a[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(a[1], 0.0, 1e-15);
  const Vec b = central_moments((Vec(3) << 0.0, 0.0, 3.0).finished());
  EXPECT_NEAR(b[0], 2.0, 1e-15);
  EXPECT_NEAR(b[1], 2.0, 1e-14);
}

TEST(Cvs, InvariantUnderRigidMotionsAndRelabeling) {
  const Lj7Config x = perturbed("C3", 3);
  const Vec base = lj7_cvs(x);
  EXPECT_GE(base[0], 0.0);

  Mat rot(2, 2);
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  Lj7Config moved = (x * rot.transpose()).rowwise() + Eigen::RowVector2d(3.0, -1.0);
  EXPECT_LT((lj7_cvs(moved) - base).cwiseAbs().maxCoeff(), 1e-12);

  Lj7Config perm = x;
  perm.row(0).swap(perm.row(5));
  perm.row(2).swap(perm.row(6));
  EXPECT_LT((lj7_cvs(perm) - base).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CvJacobian, MatchesFiniteDifferences) {
  for (const char* name : {"C0", "C1", "C2", "C3"}) {
    const Lj7Config x = perturbed(name, 4);
    const Mat j = cv_jacobian(x);
    EXPECT_LT((j - fd_jacobian(x)).cwiseAbs().maxCoeff() / j.cwiseAbs().maxCoeff(), 1e-5) << name;
  }
}

TEST(CvJacobian, AnnihilatesRigidMotions) {
  const Lj7Config x = perturbed("C1", 5);
  const Mat j = cv_jacobian(x);
  Vec tx = Vec::Zero(14), ty = Vec::Zero(14), rot(14);
  for (int a = 0; a < 7; ++a) {
    tx[2 * a] = 1.0;
    ty[2 * a + 1] = 1.0;
    rot[2 * a] = -x(a, 1);
    rot[2 * a + 1] = x(a, 0);
  }
  EXPECT_LT((j * tx).norm(), 1e-12);
  EXPECT_LT((j * ty).norm(), 1e-12);
  EXPECT_LT((j * rot).norm(), 1e-12);
}

TEST(EstimateTensor, GramMatrixOfJacobian) {
  for (const Lj7Config& x : {perturbed("C0", 6), perturbed("C2", 7)}) {
    const SpdMatrix m = estimate_tensor(x);
    const Mat j = fd_jacobian(x);
    EXPECT_LT((m.matrix() - j * j.transpose()).cwiseAbs().maxCoeff(), 1e-4 * m.matrix().cwiseAbs().maxCoeff());
    EXPECT_EQ(m.matrix(), m.matrix().transpose());
    EXPECT_GE(m.min_eigenvalue(), 0.0);
  }
}

TEST(EstimateTensor, ExactHexagonIsRankDeficient) {
  // The hexagon's symmetry makes grad mu2 and grad mu3 parallel.
  const Lj7Config x = lj7_minimum("C0");
  const Mat gram = cv_jacobian(x) * cv_jacobian(x).transpose();
  const Mat fd = fd_jacobian(x) * fd_jacobian(x).transpose();
  EXPECT_LT((gram - fd).cwiseAbs().maxCoeff(), 1e-4 * gram.cwiseAbs().maxCoeff());
  EXPECT_THROW(estimate_tensor(x), Error);
}

TEST(EstimateTensor, SingularConfigurationRejected) {
  // Every pair far apart: all coordination numbers and their derivatives vanish.
  Lj7Config x(7, 2);
  for (int a = 0; a < 7; ++a) x.row(a) << 50.0 * a, 0.0;
  EXPECT_THROW(estimate_tensor(x), Error);
}

}  // namespace
}  // namespace tptmap
