#pragma once

// Two-dimensional Lennard-Jones clusters (7 particles by default) under
// overdamped Langevin dynamics, with coordination-number collective
// variables (mu2, mu3) and their Jacobian.

#include "tptmap/geometry.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tptmap {

struct Lj7Params {
  double a = 1.0;      // well depth
  double sigma = 1.0;
  double beta = 5.0;   // beta^{-1} = 0.2 a
  /// Particles farther than this from the centre of mass feel a harmonic pull.
  double restraint_radius = 2.0;
  double spring = 100.0;  // in a / sigma^2

  void validate() const;
};

/// N x 2 particle positions.
using Lj7Config = RowMatrix;

double pair_potential(double r, const Lj7Params& params);
double lj7_energy(const Lj7Config& x, const Lj7Params& params);
/// dV/dx, same shape as x.
RowMatrix lj7_gradient(const Lj7Config& x, const Lj7Params& params);

struct Lj7Trajectory {
  std::vector<Lj7Config> frames;
  double dt = 0.0;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
};

struct Lj7SimulationOptions {
  bool zero_noise = false;
  /// Called after every step. Returning true stops the run early.
  std::function<bool(std::size_t, const Lj7Config&)> observer;
};

/// Default step for the overdamped dynamics. Steps of 2e-3 and above let
/// close pairs overshoot the repulsive wall and the cluster fly apart.
inline constexpr double kLj7DefaultDt = 1e-3;

/// Euler-Maruyama for dx = -grad V dt + sqrt(2 beta^{-1} dt) xi.
Lj7Trajectory lj7_simulate(const Lj7Params& params, const Lj7Config& x0, double dt,
                           std::size_t n_steps, std::size_t stride, std::uint64_t seed,
                           const Lj7SimulationOptions& options = {});

/// s(r) = (1 - u^8) / (1 - u^16) with u = r / (1.5 sigma), evaluated as
/// 1 / (1 + u^8), which is also its limit 1/2 at u = 1.
double coordination_kernel(double r, double sigma = 1.0);
double coordination_kernel_derivative(double r, double sigma = 1.0);

Vec coordination_numbers(const Lj7Config& x, double sigma = 1.0);

/// (1/N) sum (c_i - mean)^k for k = 2, 3.
Vec central_moments(const Vec& c);

/// (mu2, mu3) of the coordination numbers.
Vec lj7_cvs(const Lj7Config& x, double sigma = 1.0);

/// 2 x 2N matrix d(mu2, mu3)/d(x_1, y_1, x_2, y_2, ...).
Mat cv_jacobian(const Lj7Config& x, double sigma = 1.0);

/// M = J J^T. Throws a data error if the result is singular to tolerance.
SpdMatrix estimate_tensor(const Lj7Config& x, double sigma = 1.0);

/// The four lowest local minima "C0" (hexagon) to "C3" of the 7-particle
/// cluster, in order of increasing energy.
Lj7Config lj7_minimum(const std::string& name, const Lj7Params& params = {});

}  // namespace tptmap
