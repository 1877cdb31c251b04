#include "tptmap/tpt.hpp"

#include "tptmap/error.hpp"
#include "tptmap/parallel.hpp"

#include <sstream>

namespace tptmap {

namespace {

constexpr const char* kModule = "tpt";

void check_length(const GeneratorMatrix& l, Eigen::Index len, const char* what) {
  if (static_cast<std::size_t>(len) != l.size()) {
    std::ostringstream msg;
    msg << what << " has length " << len << " but the generator has size " << l.size();
    throw_data(kModule, msg.str());
  }
}

}  // namespace

Vec gamma(const GeneratorMatrix& l, const Vec& f, const Vec& g) {
  check_length(l, f.size(), "f");
  check_length(l, g.size(), "g");
  const double inv_beta = 1.0 / l.beta;
  Vec out(f.size());
  parallel_for(l.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto i = static_cast<Eigen::Index>(r);
      double s = 0.0;
      for (SparseMatrix::InnerIterator it(l.l, i); it; ++it) {
        const auto j = it.col();
        if (j != i) s += it.value() * (f[i] - f[j]) * (g[i] - g[j]);
      }
      out[i] = inv_beta * s;
    }
  });
  return out;
}

Vec density_estimate(const PointCloud& cloud, double epsilon_tilde) {
  if (!(epsilon_tilde > 0.0)) throw_config(kModule, "density bandwidth must be positive");
  Vec p = isotropic_row_sums(cloud, epsilon_tilde);
  return p / p.sum();
}

RowMatrix reactive_current(const GeneratorMatrix& l, const Vec& q, const Vec& p,
                           const PointCloud& cloud) {
  check_length(l, q.size(), "q");
  check_length(l, p.size(), "p");
  if (cloud.size() != l.size()) throw_data(kModule, "point cloud and generator sizes differ");
  const std::size_t d = cloud.dim();
  const auto& topo = cloud.topology();
  const double inv_beta = 1.0 / l.beta;
  RowMatrix out = RowMatrix::Zero(q.size(), static_cast<Eigen::Index>(d));
  parallel_for(l.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto i = static_cast<Eigen::Index>(r);
      for (SparseMatrix::InnerIterator it(l.l, i); it; ++it) {
        const auto j = it.col();
        if (j == i) continue;
        const double w = it.value() * (q[i] - q[j]);
        for (std::size_t k = 0; k < d; ++k) {
          out(i, static_cast<Eigen::Index>(k)) +=
              w * topo.wrap(k, cloud(r, k) - cloud(static_cast<std::size_t>(j), k));
        }
      }
      out.row(i) *= inv_beta * p[i];
    }
  });
  return out;
}

double reaction_rate(const GeneratorMatrix& l, const CommittorSolution& sol) {
  const auto interior = sol.interior();
  if (interior.empty()) throw_data(kModule, "no points outside A and B; the rate is undefined");
  const Vec g = gamma(l, sol.q, sol.q);
  double s = 0.0;
  for (auto i : interior) s += g[static_cast<Eigen::Index>(i)];
  return s / static_cast<double>(interior.size());
}

TptResult compute_tpt(const GeneratorMatrix& l, const CommittorSolution& sol,
                      const PointCloud& cloud, double epsilon_tilde) {
  TptResult out;
  out.epsilon_tilde = epsilon_tilde;
  out.p = density_estimate(cloud, epsilon_tilde);
  out.current = reactive_current(l, sol.q, out.p, cloud);
  out.rate = reaction_rate(l, sol);
  return out;
}

}  // namespace tptmap
