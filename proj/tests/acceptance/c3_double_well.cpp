#include "criteria.hpp"
#include "support.hpp"

#include "tptmap/analysis.hpp"
#include "tptmap/committor.hpp"
#include "tptmap/fdref.hpp"
#include "tptmap/quadrature.hpp"

#include <cmath>

namespace acceptance {

using namespace tptmap;

Result double_well_oracle(const Context&) {
  const double beta = 3.0;
  const CvSystem dw = double_well_system(beta);
  const PointCloud cloud = trajectory_cloud(dw, Vec::Constant(1, -1.0), 1e-3, 2000000, 500, 7);
  const TensorField field = tensors_at(dw, cloud);
  const std::size_t n = cloud.size();

  const Committor1D oracle(
      [&](double s) { return dw.free_energy(Vec::Constant(1, s)); },
      [&](double s) { return dw.tensor(Vec::Constant(1, s))(0, 0); }, beta, -0.9, 0.9);
  Vec q_ref(static_cast<Eigen::Index>(n));
  IndexList a, b;
  std::vector<std::size_t> mask;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = cloud(i, 0);
    q_ref[static_cast<Eigen::Index>(i)] = oracle(x);
    if (x <= -0.9) a.indices.push_back(i);
    if (x >= 0.9) b.indices.push_back(i);
    const double qi = q_ref[static_cast<Eigen::Index>(i)];
    if (x > -0.9 && x < 0.9 && qi >= 0.1 && qi <= 0.9) mask.push_back(i);
  }
  const Partition sets = classify(cloud, a, b);

  Result r;
  r.note(fmt("n = ", n, ", |A| = ", sets.a.size(), ", |B| = ", sets.b.size(), ", mask = ", mask.size()));
  double rms[2];
  for (int k = 0; k < 2; ++k) {
    const KernelKind kind = k == 0 ? KernelKind::Mahalanobis : KernelKind::Isotropic;
    const TensorField* f = k == 0 ? &field : nullptr;
    const double eps = epsilon_heuristic(cloud, f);
    const auto l = generator(cloud, f, kind, eps, 0.5, beta);
    const auto sol = solve_committor(l, sets.a, sets.b);
    rms[k] = rms_error(sol.q, q_ref, mask);
    r.note(fmt(to_string(kind), ": heuristic eps = ", eps, ", RMS = ", rms[k], ", residual = ", sol.residual));
  }
  r.check(rms[0] <= 0.05, fmt("mmap RMS ", rms[0], " <= 0.05"));
  r.check(rms[0] < rms[1], fmt("mmap RMS ", rms[0], " < dmap RMS ", rms[1]));
  r.summary = fmt("mmap ", rms[0], " vs dmap ", rms[1]);
  return r;
}

}  // namespace acceptance
