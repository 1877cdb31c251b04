#pragma once

// Experiment harnesses: the bandwidth heuristic, bandwidth sweeps against a
// reference committor, and committor analysis by trajectory shooting.

#include "tptmap/committor.hpp"
#include "tptmap/cv_system.hpp"
#include "tptmap/lj7.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tptmap {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// max_i min_{j != i} s(i, j) with s the Mahalanobis form when a field is
/// given and the squared distance otherwise. Duplicate points are an error.
double epsilon_heuristic(const PointCloud& cloud, const TensorField* field);

struct EpsSweepRow {
  double epsilon = 0.0;
  KernelKind kind = KernelKind::Isotropic;
  double rms = 0.0;
  double rate = 0.0;
  /// Empty on success; the error message otherwise.
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

struct SweepSetup {
  const PointCloud* cloud = nullptr;
  const TensorField* field = nullptr;  // required for the Mahalanobis kind
  Partition sets;
  double alpha = 0.5;
  double beta = 1.0;
  Vec reference_q;
  std::vector<std::size_t> mask;
  SolverOptions solver;
};

/// One row per (epsilon, kind), epsilon-major. Failures are recorded in the
/// row instead of aborting the sweep.
std::vector<EpsSweepRow> epsilon_sweep(const SweepSetup& setup, const std::vector<double>& eps_list,
                                       const std::vector<KernelKind>& kinds);

/// Up to n_pt indices drawn without replacement from {i : |q_i - level| <= tol}.
std::vector<std::size_t> sample_level_set(const Vec& q, double level, double tol, std::size_t n_pt,
                                          std::uint64_t seed);

/// Outcome of one trajectory shot from a start point.
enum class ShotOutcome { HitA, HitB, Censored };

/// shoot(point index, seed, max_steps).
using Shooter = std::function<ShotOutcome(std::size_t, std::uint64_t, std::size_t)>;

struct PbHistogram {
  static constexpr std::size_t kBins = 20;

  std::vector<double> edges;     // kBins + 1 values on [0, 1]
  std::vector<double> fraction;  // per bin; sums to 1 over uncensored points
  std::vector<double> pb;        // per start point; NaN if every shot was censored
  std::size_t n_pt = 0;
  std::size_t n_e = 0;
  std::size_t censored = 0;  // censored shots
  double censored_fraction = 0.0;
  std::size_t mode_bin = 0;
  double mode = 0.0;  // centre of mode_bin
};

/// Histogram of p_B values from a fixed list of p_B estimates.
PbHistogram make_histogram(std::vector<double> pb, std::size_t n_e, std::size_t censored);

PbHistogram committor_analysis(std::size_t n_pt, std::size_t n_e, const Shooter& shoot,
                               std::uint64_t seed, std::size_t max_steps);

/// Shoots CV-space trajectories from the given start points.
Shooter cv_shooter(const CvSystem& system, RowMatrix starts, Ellipse a, Ellipse b, double dt);

/// Shoots LJ trajectories from atomic configurations; A and B are regions in
/// (mu2, mu3). Membership is tested every `check_every` steps.
Shooter lj7_shooter(const Lj7Params& params, std::vector<Lj7Config> starts, Ellipse a, Ellipse b,
                    double dt, std::size_t check_every = 10);

}  // namespace tptmap
