#include "criteria.hpp"

#include "tptmap/analysis.hpp"
#include "tptmap/committor.hpp"
#include "tptmap/lj7.hpp"

#include <cstdlib>

namespace acceptance {

using namespace tptmap;

Result lj7_committor_analysis(const Context&) {
  const Lj7Params params;  // beta^{-1} = 0.2 a
  const double dt = kLj7DefaultDt;
  const auto traj = lj7_simulate(params, lj7_minimum("C0", params), dt, 1000000, 500, 21);

  RowMatrix cv(static_cast<Eigen::Index>(traj.frames.size()), 2);
  std::vector<SpdMatrix> tensors;
  for (std::size_t i = 0; i < traj.frames.size(); ++i) {
    cv.row(static_cast<Eigen::Index>(i)) = lj7_cvs(traj.frames[i]).transpose();
    tensors.push_back(estimate_tensor(traj.frames[i]));
  }
  const PointCloud cloud(cv, Topology::unbounded(2));
  const TensorField field(std::move(tensors));
  const Ellipse a = Ellipse::ball(lj7_cvs(lj7_minimum("C3", params)), 0.1);
  const Ellipse b = Ellipse::ball(lj7_cvs(lj7_minimum("C0", params)), 0.1);
  const Partition sets = classify(cloud, a, b);

  Result r;
  r.note(fmt("n = ", cloud.size(), ", |A| = ", sets.a.size(), ", |B| = ", sets.b.size()));
  PbHistogram hist[2];
  const KernelKind kinds[2] = {KernelKind::Mahalanobis, KernelKind::Isotropic};
  for (int k = 0; k < 2; ++k) {
    const TensorField* f = kinds[k] == KernelKind::Mahalanobis ? &field : nullptr;
    const double eps = epsilon_heuristic(cloud, f);
    const auto l = build_generator(build_kernel(kinds[k], cloud, f, eps), 0.5, params.beta);
    const auto sol = solve_committor(l, sets.a, sets.b);
    const auto starts = sample_level_set(sol.q, 0.5, 0.05, 50, 100 + static_cast<std::uint64_t>(k));
    std::vector<Lj7Config> configs;
    for (auto i : starts) configs.push_back(traj.frames[i]);
    r.note(fmt(to_string(kinds[k]), ": eps ", eps, ", ", starts.size(), " start points near q = 0.5"));
    hist[k] = committor_analysis(configs.size(), 50, lj7_shooter(params, configs, a, b, dt), 200 + k, 2000000);
    std::string bars;
    for (double v : hist[k].fraction) bars += fmt(v, " ");
    r.note(fmt(to_string(kinds[k]), ": mode ", hist[k].mode, ", censored ", hist[k].censored_fraction,
               ", fractions ", bars));
  }
  r.check(hist[0].mode >= 0.35 && hist[0].mode <= 0.65, fmt("mmap mode ", hist[0].mode, " in [0.35, 0.65]"));
  const long gap = std::labs(static_cast<long>(hist[1].mode_bin) - static_cast<long>(hist[0].mode_bin));
  r.check(gap >= 2, fmt("dmap mode ", hist[1].mode, " is ", gap, " bins from the mmap mode"));
  r.summary = fmt("modes mmap ", hist[0].mode, ", dmap ", hist[1].mode);
  return r;
}

}  // namespace acceptance
