#pragma once

// Reference committors: a flux-form finite-difference solver on uniform 2D
// periodic grids, plus interpolation and error metrics against point clouds.

#include "tptmap/committor.hpp"

#include <functional>

namespace tptmap {

/// N1 x N2 nodes covering a 2D torus. Node (i, j) sits at
/// (-P1/2 + i h1, -P2/2 + j h2) and has flat index i * N2 + j.
class Grid2D {
 public:
  static constexpr std::size_t kMinNodes = 8;

  Grid2D(std::size_t n1, std::size_t n2, Topology topology, Vec free_energy,
         std::vector<SpdMatrix> tensors);

  using ScalarField = std::function<double(double, double)>;
  using TensorFn = std::function<Mat(double, double)>;
  static Grid2D from_functions(std::size_t n1, std::size_t n2, const Topology& topology,
                               const ScalarField& free_energy, const TensorFn& tensor);

  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  std::size_t size() const noexcept { return n1_ * n2_; }
  double h1() const noexcept { return h1_; }
  double h2() const noexcept { return h2_; }
  const Topology& topology() const noexcept { return topology_; }
  const Vec& free_energy() const noexcept { return free_energy_; }
  const std::vector<SpdMatrix>& tensors() const noexcept { return tensors_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * n2_ + j; }
  Vec node(std::size_t i, std::size_t j) const;
  /// Node coordinates as a point cloud, in flat-index order.
  PointCloud nodes() const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  Topology topology_;
  double h1_;
  double h2_;
  Vec free_energy_;
  std::vector<SpdMatrix> tensors_;
};

/// Direct solves up to 2^20 nodes.
SolverOptions fd_solver_defaults();

struct FdSolution {
  Vec q;  // flat node order
  std::vector<std::size_t> a_nodes;
  std::vector<std::size_t> b_nodes;
  double residual = 0.0;  // max interior |(A q)_k| of the assembled operator
  std::string method;
};

/// Discretizes div(exp(-beta F) M grad q) = 0 with Dirichlet data on the
/// nodes inside A (0) and B (1).
FdSolution fd_committor(const Grid2D& grid, double beta, const RegionSpec& a, const RegionSpec& b,
                        const SolverOptions& options = fd_solver_defaults());

/// The assembled operator (before boundary rows are replaced).
SparseMatrix fd_operator(const Grid2D& grid, double beta);

/// Periodic bilinear interpolation of node values at the cloud points.
Vec bilinear_interp(const Grid2D& grid, const Vec& values, const PointCloud& cloud);

/// sqrt(mean over mask of (approx - ref)^2).
double rms_error(const Vec& approx, const Vec& ref, const std::vector<std::size_t>& mask);

/// Max |fine - coarse| over the coarse nodes, where the fine grid has exactly
/// twice the nodes per dimension.
double max_node_difference(const Grid2D& coarse, const Vec& q_coarse, const Grid2D& fine,
                           const Vec& q_fine);

}  // namespace tptmap
