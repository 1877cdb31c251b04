#pragma once

// Overdamped dynamics in collective variables,
//   dx = (-M grad F + beta^{-1} div M) dt + sqrt(2 beta^{-1}) M^{1/2} dW,
// and the built-in synthetic systems used by the tests and the CLI.

#include "tptmap/geometry.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace tptmap {

struct CvSystem {
  std::string name;
  Topology topology;
  double beta = 1.0;
  std::function<double(const Vec&)> free_energy;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> tensor;
  /// (div M)_i = sum_j d_j M_ij. Optional: falls back to finite differences.
  std::function<Vec(const Vec&)> divergence;
  /// Optional: falls back to the eigendecomposition of tensor(x).
  std::function<Mat(const Vec&)> tensor_sqrt;

  std::size_t dim() const noexcept { return topology.dim(); }
  Vec divergence_at(const Vec& x) const;
  Mat sqrt_at(const Vec& x) const;
};

/// Five-point central differences of the tensor's divergence.
Vec fd_divergence(const std::function<Mat(const Vec&)>& tensor, const Vec& x, double step = 1e-5);

/// F = 1/2 x^T A x with constant tensor M, unbounded.
CvSystem ou_system(const Mat& a, const Mat& m, double beta);
/// The anisotropic OU test system: M = R diag(1, 4) R^T with R a rotation by
/// 0.5 rad, and A = M^{-1}.
CvSystem anisotropic_ou_system(double beta = 1.0);
/// F = (x^2 - 1)^2, M = 1 + 0.9 sin(3x), unbounded 1D.
CvSystem double_well_system(double beta = 3.0);
/// F = cos(phi) + cos(phi - psi) on [-pi, pi)^2 with
/// M = [[1.5 + 0.5 sin(phi), 0.3 cos(psi)], [0.3 cos(psi), 1.5 + 0.5 sin(phi)]].
CvSystem torus_system(double beta = 1.0);

/// Looks up "ou", "double_well" or "torus" with the given beta.
CvSystem builtin_cv_system(const std::string& name, double beta);

struct CvTrajectory {
  RowMatrix points;  // one retained sample per row
  double dt = 0.0;
  std::size_t stride = 1;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::string system;
};

struct SimulationOptions {
  /// Forces the noise to zero (deterministic gradient flow).
  bool zero_noise = false;
  /// Called after every step with (step index starting at 1, state).
  /// Returning true stops the run early.
  std::function<bool(std::size_t, const Vec&)> observer;
};

/// Euler-Maruyama. Retains the state after steps stride, 2*stride, ...
CvTrajectory simulate_cv(const CvSystem& system, const Vec& x0, double dt, std::size_t n_steps,
                         std::size_t stride, std::uint64_t seed,
                         const SimulationOptions& options = {});

/// Tensor field of a system evaluated at every point of a cloud.
TensorField tensors_at(const CvSystem& system, const PointCloud& cloud);

}  // namespace tptmap
