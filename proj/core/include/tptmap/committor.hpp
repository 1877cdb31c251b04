#pragma once

// Reactant/product sets and the discrete committor equation.

#include "tptmap/generator.hpp"
#include "tptmap/linsolve.hpp"

#include <variant>
#include <vector>

namespace tptmap {

/// {x : z^T shape z <= level} with z the minimum-image displacement x - center.
struct Ellipse {
  Vec center;
  SpdMatrix shape;
  double level;

  Ellipse(Vec c, SpdMatrix s, double l);
  /// Euclidean ball of the given radius.
  static Ellipse ball(Vec center, double radius);

  bool contains(const Eigen::Ref<const Vec>& x, const Topology& topology) const;
};

struct IndexList {
  std::vector<std::size_t> indices;
};

using RegionSpec = std::variant<Ellipse, IndexList>;

/// Sorted indices of cloud points in the region.
std::vector<std::size_t> members(const RegionSpec& region, const PointCloud& cloud);

struct Partition {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
};

/// Fails on empty sets or on points claimed by both regions.
Partition classify(const PointCloud& cloud, const RegionSpec& a, const RegionSpec& b);

struct CommittorSolution {
  Vec q;
  std::vector<std::size_t> a_idx;
  std::vector<std::size_t> b_idx;
  /// max over interior rows of |(L q)_i|.
  double residual = 0.0;
  std::string method;

  std::size_t interior_size() const noexcept {
    return static_cast<std::size_t>(q.size()) - a_idx.size() - b_idx.size();
  }
  /// Indices outside A and B, ascending.
  std::vector<std::size_t> interior() const;
};

/// Largest excursion outside [0, 1] that is silently clamped.
inline constexpr double kClampTolerance = 1e-8;

CommittorSolution solve_committor(const GeneratorMatrix& l, const std::vector<std::size_t>& a_idx,
                                  const std::vector<std::size_t>& b_idx,
                                  const SolverOptions& options = {});

/// Shared by the point-cloud and grid solvers: checks that every free node
/// reaches a fixed node through the sparsity pattern of `a`. Throws a data
/// error naming one stranded node otherwise.
void check_reachability(const SparseMatrix& a, const std::vector<char>& fixed, const char* module);

/// Range check and clamp shared by the committor solvers.
void clamp_committor(Vec& q, const char* module);

}  // namespace tptmap
