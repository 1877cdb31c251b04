#pragma once

// Transition path theory quantities from a solved committor: the discrete
// Gamma operator, a kernel density estimate, reactive current and rate.

#include "tptmap/committor.hpp"

namespace tptmap {

/// [G(f,g)]_i = beta^{-1} sum_j L_ij (f_i - f_j)(g_i - g_j).
Vec gamma(const GeneratorMatrix& l, const Vec& f, const Vec& g);

/// Isotropic-kernel row sums at eps_tilde, normalized to sum to one.
Vec density_estimate(const PointCloud& cloud, double epsilon_tilde);

/// J_i = beta^{-1} p_i sum_j L_ij (q_i - q_j) z_ij with z_ij the
/// minimum-image displacement x_i - x_j. Returns n x d.
RowMatrix reactive_current(const GeneratorMatrix& l, const Vec& q, const Vec& p,
                           const PointCloud& cloud);

/// Plain average of G(q,q) over the points outside A and B. Assumes the
/// points were sampled from the invariant density.
double reaction_rate(const GeneratorMatrix& l, const CommittorSolution& sol);

struct TptResult {
  Vec p;
  RowMatrix current;
  double rate = 0.0;
  double epsilon_tilde = 0.0;
};

TptResult compute_tpt(const GeneratorMatrix& l, const CommittorSolution& sol,
                      const PointCloud& cloud, double epsilon_tilde);

}  // namespace tptmap
