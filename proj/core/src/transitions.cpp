#include "tptmap/transitions.hpp"

#include "tptmap/error.hpp"

#include <sstream>

namespace tptmap {

namespace {
constexpr const char* kModule = "samplers";
}

void TransitionCounter::observe(bool in_a, bool in_b) {
  if (in_a && in_b) throw_data(kModule, "state lies in both A and B");
  if (in_a) {
    visited_a_ = true;
    if (last_ == Label::B) ++n_ba_;
    last_ = Label::A;
  } else if (in_b) {
    visited_b_ = true;
    if (last_ == Label::A) ++n_ab_;
    last_ = Label::B;
  }
}

TransitionCount summarize(const TransitionCounter& counter, double elapsed) {
  TransitionCount out;
  out.n_ab = counter.n_ab();
  out.n_ba = counter.n_ba();
  out.elapsed = elapsed;
  out.rate = elapsed > 0.0 ? static_cast<double>(out.n_ab) / elapsed : 0.0;
  out.incomplete = !counter.visited_a() || !counter.visited_b();
  return out;
}

TransitionCount count_transitions(const CvTrajectory& traj, const RegionSpec& a, const RegionSpec& b,
                                  const Topology& topology) {
  if (traj.points.rows() < 2) throw_data(kModule, "trajectory needs at least 2 points");
  const PointCloud cloud(traj.points, topology);
  const auto in_a = members(a, cloud);
  const auto in_b = members(b, cloud);
  std::vector<char> label(cloud.size(), 0);
  for (auto i : in_a) label[i] |= 1;
  for (auto i : in_b) label[i] |= 2;
  TransitionCounter counter;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (label[i] == 3) {
      std::ostringstream msg;
      msg << "trajectory point " << i << " lies in both A and B";
      throw_data(kModule, msg.str());
    }
    counter.observe(label[i] == 1, label[i] == 2);
  }
  const double elapsed = static_cast<double>(cloud.size() - 1) * traj.dt * static_cast<double>(traj.stride);
  return summarize(counter, elapsed);
}

TransitionCount count_transitions_streaming(const CvSystem& system, const Vec& x0, double dt,
                                            std::size_t n_steps, std::uint64_t seed,
                                            const Ellipse& a, const Ellipse& b) {
  TransitionCounter counter;
  SimulationOptions opts;
  opts.observer = [&](std::size_t, const Vec& x) {
    counter.observe(a.contains(x, system.topology), b.contains(x, system.topology));
    return false;
  };
  // Stride larger than n_steps keeps nothing in memory.
  simulate_cv(system, x0, dt, n_steps, n_steps + 1, seed, opts);
  return summarize(counter, static_cast<double>(n_steps) * dt);
}

}  // namespace tptmap
