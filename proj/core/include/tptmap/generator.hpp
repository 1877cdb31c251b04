#pragma once

// Diffusion-map normalization: kernel -> right-normalized kernel -> Markov
// matrix -> discrete generator L = (P - I) / eps.

#include "tptmap/kernels.hpp"

namespace tptmap {

struct GeneratorMatrix {
  SparseMatrix l;
  double epsilon = 0.0;
  double alpha = 0.5;
  KernelKind kind = KernelKind::Isotropic;
  /// Inverse temperature. Not used to build L; consumers use it to turn
  /// L ~ (beta/2) * generator back into physical units.
  double beta = 1.0;
  /// max_i |sum_j P_ij - 1| measured before L was formed.
  double stochasticity_error = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(l.rows()); }
};

/// [p]_i = sum_j K_ij.
Vec row_sums(const KernelMatrix& k);

/// Consumes the kernel so its storage can be reused for L.
GeneratorMatrix build_generator(KernelMatrix k, double alpha, double beta);

/// L f.
Vec apply(const GeneratorMatrix& l, const Vec& f);

/// Largest violations of the generator's structural invariants.
struct GeneratorDiagnostics {
  double max_row_sum = 0.0;         // max_i |sum_j L_ij|
  double min_off_diagonal = 0.0;    // min over stored i != j of L_ij (0 if none)
  double max_diagonal = 0.0;        // max_i L_ii
  double max_abs_l_times_one = 0.0; // |L 1|_inf computed through apply()
};
GeneratorDiagnostics diagnose(const GeneratorMatrix& l);

}  // namespace tptmap
