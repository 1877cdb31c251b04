#include "tptmap/committor.hpp"

#include "tptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace tptmap {

namespace {

constexpr const char* kModule = "committor";

std::vector<char> mark(std::size_t n, const std::vector<std::size_t>& idx, const char* what) {
  std::vector<char> flags(n, 0);
  for (auto i : idx) {
    if (i >= n) {
      std::ostringstream msg;
      msg << what << " index " << i << " out of range for " << n << " points";
      throw_data(kModule, msg.str());
    }
    flags[i] = 1;
  }
  return flags;
}

}  // namespace

Ellipse::Ellipse(Vec c, SpdMatrix s, double l) : center(std::move(c)), shape(std::move(s)), level(l) {
  if (!(level > 0.0) || !std::isfinite(level)) throw_config(kModule, "ellipse level must be positive");
  if (static_cast<std::size_t>(center.size()) != shape.dim()) {
    throw_config(kModule, "ellipse center and shape dimensions differ");
  }
}

Ellipse Ellipse::ball(Vec center, double radius) {
  const auto d = static_cast<std::size_t>(center.size());
  return Ellipse(std::move(center), SpdMatrix::identity(d), radius * radius);
}

bool Ellipse::contains(const Eigen::Ref<const Vec>& x, const Topology& topology) const {
  if (static_cast<std::size_t>(x.size()) != shape.dim()) {
    throw_config(kModule, "region dimension does not match the point dimension");
  }
  const Vec z = displacement(x, center, topology);
  return z.dot(shape.matrix() * z) <= level;
}

std::vector<std::size_t> members(const RegionSpec& region, const PointCloud& cloud) {
  std::vector<std::size_t> out;
  if (const auto* e = std::get_if<Ellipse>(&region)) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (e->contains(cloud.point(i), cloud.topology())) out.push_back(i);
    }
    return out;
  }
  out = std::get<IndexList>(region).indices;
  for (auto i : out) {
    if (i >= cloud.size()) {
      std::ostringstream msg;
      msg << "region index " << i << " out of range for " << cloud.size() << " points";
      throw_config(kModule, msg.str());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Partition classify(const PointCloud& cloud, const RegionSpec& a, const RegionSpec& b) {
  Partition p{members(a, cloud), members(b, cloud)};
  if (p.a.empty()) throw_data(kModule, "reactant set A contains no points");
  if (p.b.empty()) throw_data(kModule, "product set B contains no points");
  std::vector<std::size_t> both;
  std::set_intersection(p.a.begin(), p.a.end(), p.b.begin(), p.b.end(), std::back_inserter(both));
  if (!both.empty()) {
    std::ostringstream msg;
    msg << both.size() << " point(s) lie in both A and B:";
    for (std::size_t k = 0; k < std::min<std::size_t>(both.size(), 10); ++k) msg << ' ' << both[k];
    if (both.size() > 10) msg << " ...";
    throw_data(kModule, msg.str());
  }
  return p;
}

std::vector<std::size_t> CommittorSolution::interior() const {
  const auto n = static_cast<std::size_t>(q.size());
  std::vector<char> fixed(n, 0);
  for (auto i : a_idx) fixed[i] = 1;
  for (auto i : b_idx) fixed[i] = 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i]) out.push_back(i);
  return out;
}

void check_reachability(const SparseMatrix& a, const std::vector<char>& fixed, const char* module) {
  const auto n = static_cast<std::size_t>(a.rows());
  // A free node is anchored once it couples to an anchored node. The pattern
  // need not be symmetric, so edges are followed from column to row.
  std::vector<std::vector<int>> dependents(n);
  for (Eigen::Index i = 0; i < a.outerSize(); ++i) {
    if (fixed[static_cast<std::size_t>(i)]) continue;
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      if (it.col() != i && it.value() != 0.0) dependents[static_cast<std::size_t>(it.col())].push_back(static_cast<int>(i));
    }
  }
  std::vector<char> seen(fixed);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i]) queue.push_back(i);
  while (!queue.empty()) {
    const auto j = queue.front();
    queue.pop_front();
    for (int i : dependents[j]) {
      if (!seen[static_cast<std::size_t>(i)]) {
        seen[static_cast<std::size_t>(i)] = 1;
        queue.push_back(static_cast<std::size_t>(i));
      }
    }
  }
  std::size_t stranded = 0;
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      if (first == n) first = i;
      ++stranded;
    }
  }
  if (stranded > 0) {
    std::ostringstream msg;
    msg << stranded << " point(s) are disconnected from both A and B (e.g. point " << first
        << "); increase epsilon or remove isolated samples";
    throw_data(module, msg.str());
  }
}

void clamp_committor(Vec& q, const char* module) {
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (q[i] < -kClampTolerance || q[i] > 1.0 + kClampTolerance) {
      std::ostringstream msg;
      msg << "committor value " << q[i] << " at point " << i << " lies outside [0, 1]";
      throw_numerical(module, msg.str());
    }
    q[i] = std::clamp(q[i], 0.0, 1.0);
  }
}

CommittorSolution solve_committor(const GeneratorMatrix& l, const std::vector<std::size_t>& a_idx,
                                  const std::vector<std::size_t>& b_idx,
                                  const SolverOptions& options) {
  const std::size_t n = l.size();
  if (a_idx.empty()) throw_data(kModule, "reactant set A is empty");
  if (b_idx.empty()) throw_data(kModule, "product set B is empty");
  const auto in_a = mark(n, a_idx, "A");
  const auto in_b = mark(n, b_idx, "B");
  std::vector<char> fixed(n, 0);
  Vec values = Vec::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (in_a[i] && in_b[i]) {
      std::ostringstream msg;
      msg << "point " << i << " is in both A and B";
      throw_data(kModule, msg.str());
    }
    fixed[i] = static_cast<char>(in_a[i] || in_b[i]);
    if (in_b[i]) values[static_cast<Eigen::Index>(i)] = 1.0;
  }

  CommittorSolution sol;
  sol.a_idx = a_idx;
  sol.b_idx = b_idx;
  std::sort(sol.a_idx.begin(), sol.a_idx.end());
  sol.a_idx.erase(std::unique(sol.a_idx.begin(), sol.a_idx.end()), sol.a_idx.end());
  std::sort(sol.b_idx.begin(), sol.b_idx.end());
  sol.b_idx.erase(std::unique(sol.b_idx.begin(), sol.b_idx.end()), sol.b_idx.end());

  if (std::all_of(fixed.begin(), fixed.end(), [](char c) { return c != 0; })) {
    sol.q = values;
    sol.method = "none";
    return sol;
  }
  check_reachability(l.l, fixed, kModule);
  SolveResult r = solve_dirichlet(l.l, fixed, values, options, kModule);
  sol.q = std::move(r.x);
  sol.method = std::move(r.method);
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i]) sol.q[static_cast<Eigen::Index>(i)] = values[static_cast<Eigen::Index>(i)];
  }
  clamp_committor(sol.q, kModule);
  const Vec lq = l.l * sol.q;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fixed[i]) sol.residual = std::max(sol.residual, std::abs(lq[static_cast<Eigen::Index>(i)]));
  }
  return sol;
}

}  // namespace tptmap
