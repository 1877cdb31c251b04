#pragma once

// Brute-force reaction rates from trajectories: count A -> B transitions with
// a last-visited-set automaton.

#include "tptmap/committor.hpp"
#include "tptmap/cv_system.hpp"

namespace tptmap {

class TransitionCounter {
 public:
  enum class Label { None, A, B };

  /// Feeds one state. A state in both sets is an error.
  void observe(bool in_a, bool in_b);

  std::size_t n_ab() const noexcept { return n_ab_; }
  std::size_t n_ba() const noexcept { return n_ba_; }
  Label last() const noexcept { return last_; }
  bool visited_a() const noexcept { return visited_a_; }
  bool visited_b() const noexcept { return visited_b_; }

 private:
  Label last_ = Label::None;
  std::size_t n_ab_ = 0;
  std::size_t n_ba_ = 0;
  bool visited_a_ = false;
  bool visited_b_ = false;
};

struct TransitionCount {
  std::size_t n_ab = 0;
  std::size_t n_ba = 0;
  double elapsed = 0.0;
  double rate = 0.0;
  /// Set when the path never entered A or never entered B.
  bool incomplete = false;
};

TransitionCount summarize(const TransitionCounter& counter, double elapsed);

/// Counts on the retained points; elapsed time is (rows - 1) * dt * stride.
TransitionCount count_transitions(const CvTrajectory& traj, const RegionSpec& a, const RegionSpec& b,
                                  const Topology& topology);

/// Runs a trajectory without storing it and counts on every step.
TransitionCount count_transitions_streaming(const CvSystem& system, const Vec& x0, double dt,
                                            std::size_t n_steps, std::uint64_t seed,
                                            const Ellipse& a, const Ellipse& b);

}  // namespace tptmap
