#include "tptmap/analysis.hpp"

#include "tptmap/error.hpp"
#include "tptmap/fdref.hpp"
#include "tptmap/parallel.hpp"
#include "tptmap/tpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace tptmap {

namespace {
constexpr const char* kModule = "analysis";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double epsilon_heuristic(const PointCloud& cloud, const TensorField* field) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  if (field != nullptr && field->size() != n) throw_config(kModule, "tensor field and cloud sizes differ");
  const auto& topo = cloud.topology();
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> partner(n, 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    Vec z(static_cast<Eigen::Index>(d));
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < d; ++k) z[static_cast<Eigen::Index>(k)] = topo.wrap(k, cloud(i, k) - cloud(j, k));
        const double s = field ? mahalanobis_quadratic(z, (*field)[i], (*field)[j]) : z.squaredNorm();
        if (s < nearest[i]) {
          nearest[i] = s;
          partner[i] = j;
        }
      }
    }
  }, 16);
  double eps = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(nearest[i] > 0.0)) {
      std::ostringstream msg;
      msg << "points " << std::min(i, partner[i]) << " and " << std::max(i, partner[i])
          << " coincide; remove duplicates before choosing epsilon";
      throw_data(kModule, msg.str());
    }
    eps = std::max(eps, nearest[i]);
  }
  return eps;
}

std::vector<EpsSweepRow> epsilon_sweep(const SweepSetup& setup, const std::vector<double>& eps_list,
                                       const std::vector<KernelKind>& kinds) {
  if (setup.cloud == nullptr) throw_config(kModule, "sweep needs a point cloud");
  if (static_cast<std::size_t>(setup.reference_q.size()) != setup.cloud->size()) {
    throw_data(kModule, "reference committor is not aligned with the cloud");
  }
  std::vector<EpsSweepRow> rows;
  for (double eps : eps_list) {
    for (KernelKind kind : kinds) {
      EpsSweepRow row;
      row.epsilon = eps;
      row.kind = kind;
      try {
        auto k = build_kernel(kind, *setup.cloud, setup.field, eps);
        const auto l = build_generator(std::move(k), setup.alpha, setup.beta);
        const auto sol = solve_committor(l, setup.sets.a, setup.sets.b, setup.solver);
        row.rms = rms_error(sol.q, setup.reference_q, setup.mask);
        row.rate = reaction_rate(l, sol);
      } catch (const Error& e) {
        row.error = e.what();
        row.rms = std::numeric_limits<double>::quiet_NaN();
        row.rate = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::size_t> sample_level_set(const Vec& q, double level, double tol, std::size_t n_pt,
                                          std::uint64_t seed) {
  if (!(tol >= 0.0)) throw_config(kModule, "level-set tolerance must be nonnegative");
  std::vector<std::size_t> candidates;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (std::abs(q[i] - level) <= tol) candidates.push_back(static_cast<std::size_t>(i));
  if (candidates.empty()) {
    std::ostringstream msg;
    msg << "no points within " << tol << " of level " << level << "; increase the tolerance";
    throw_data(kModule, msg.str());
  }
  std::vector<std::size_t> out;
  std::mt19937_64 rng(seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(out), n_pt, rng);
  return out;
}

PbHistogram make_histogram(std::vector<double> pb, std::size_t n_e, std::size_t censored) {
  PbHistogram h;
  h.n_pt = pb.size();
  h.n_e = n_e;
  h.censored = censored;
  const double shots = static_cast<double>(h.n_pt * h.n_e);
  h.censored_fraction = shots > 0 ? static_cast<double>(censored) / shots : 0.0;
  h.edges.resize(PbHistogram::kBins + 1);
  for (std::size_t b = 0; b <= PbHistogram::kBins; ++b)
    h.edges[b] = static_cast<double>(b) / static_cast<double>(PbHistogram::kBins);
  std::vector<std::size_t> counts(PbHistogram::kBins, 0);
  std::size_t used = 0;
  for (double v : pb) {
    if (std::isnan(v)) continue;
    auto b = static_cast<std::size_t>(v * static_cast<double>(PbHistogram::kBins));
    counts[std::min(b, PbHistogram::kBins - 1)]++;
    ++used;
  }
  if (used == 0) throw_numerical(kModule, "every trajectory was censored; increase max_steps");
  h.fraction.resize(PbHistogram::kBins);
  for (std::size_t b = 0; b < PbHistogram::kBins; ++b)
    h.fraction[b] = static_cast<double>(counts[b]) / static_cast<double>(used);
  h.mode_bin = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  h.mode = 0.5 * (h.edges[h.mode_bin] + h.edges[h.mode_bin + 1]);
  h.pb = std::move(pb);
  return h;
}

PbHistogram committor_analysis(std::size_t n_pt, std::size_t n_e, const Shooter& shoot,
                               std::uint64_t seed, std::size_t max_steps) {
  if (n_pt == 0 || n_e == 0) throw_config(kModule, "committor analysis needs N_pt >= 1 and N_e >= 1");
  std::vector<ShotOutcome> outcomes(n_pt * n_e);
  parallel_for(n_pt * n_e, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) outcomes[k] = shoot(k / n_e, mix_seed(seed, k), max_steps);
  }, 1);
  std::vector<double> pb(n_pt);
  std::size_t censored = 0;
  for (std::size_t p = 0; p < n_pt; ++p) {
    std::size_t hits_b = 0;
    std::size_t done = 0;
    for (std::size_t r = 0; r < n_e; ++r) {
      const ShotOutcome o = outcomes[p * n_e + r];
      if (o == ShotOutcome::Censored) {
        ++censored;
        continue;
      }
      ++done;
      if (o == ShotOutcome::HitB) ++hits_b;
    }
    pb[p] = done > 0 ? static_cast<double>(hits_b) / static_cast<double>(done)
                     : std::numeric_limits<double>::quiet_NaN();
  }
  return make_histogram(std::move(pb), n_e, censored);
}

Shooter cv_shooter(const CvSystem& system, RowMatrix starts, Ellipse a, Ellipse b, double dt) {
  return [system, starts = std::move(starts), a = std::move(a), b = std::move(b), dt](
             std::size_t point, std::uint64_t seed, std::size_t max_steps) {
    ShotOutcome outcome = ShotOutcome::Censored;
    SimulationOptions opts;
    opts.observer = [&](std::size_t, const Vec& x) {
      if (a.contains(x, system.topology)) {
        outcome = ShotOutcome::HitA;
        return true;
      }
      if (b.contains(x, system.topology)) {
        outcome = ShotOutcome::HitB;
        return true;
      }
      return false;
    };
    const Vec x0 = starts.row(static_cast<Eigen::Index>(point)).transpose();
    simulate_cv(system, x0, dt, max_steps, max_steps + 1, seed, opts);
    return outcome;
  };
}

Shooter lj7_shooter(const Lj7Params& params, std::vector<Lj7Config> starts, Ellipse a, Ellipse b,
                    double dt, std::size_t check_every) {
  if (check_every == 0) throw_config(kModule, "check_every must be at least 1");
  return [params, starts = std::move(starts), a = std::move(a), b = std::move(b), dt, check_every](
             std::size_t point, std::uint64_t seed, std::size_t max_steps) {
    ShotOutcome outcome = ShotOutcome::Censored;
    const Topology cv_space = Topology::unbounded(2);
    Lj7SimulationOptions opts;
    opts.observer = [&](std::size_t step, const Lj7Config& x) {
      if (step % check_every != 0) return false;
      const Vec cv = lj7_cvs(x, params.sigma);
      if (a.contains(cv, cv_space)) {
        outcome = ShotOutcome::HitA;
        return true;
      }
      if (b.contains(cv, cv_space)) {
        outcome = ShotOutcome::HitB;
        return true;
      }
      return false;
    };
    lj7_simulate(params, starts.at(point), dt, max_steps, max_steps + 1, seed, opts);
    return outcome;
  };
}

}  // namespace tptmap
