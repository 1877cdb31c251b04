#pragma once

// Sparse solves with Dirichlet data imposed by row replacement.

#include "tptmap/kernels.hpp"

#include <string>
#include <vector>

namespace tptmap {

struct SolverOptions {
  /// Systems up to this size use a sparse direct factorization.
  std::size_t direct_max_n = 20000;
  /// Direct systems denser than this fraction of n^2 are factored densely.
  double dense_fill_threshold = 0.2;
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct SolveResult {
  Vec x;
  std::string method;  // "sparse-lu", "dense-lu" or "bicgstab"
  int iterations = 0;
  double estimated_error = 0.0;
};

/// Solves A x = 0 on rows where `fixed[i]` is false and x_i = values[i] where
/// it is true. Row i of A is replaced by the identity row for fixed i.
SolveResult solve_dirichlet(const SparseMatrix& a, const std::vector<char>& fixed,
                            const Vec& values, const SolverOptions& options,
                            const char* module);

}  // namespace tptmap
