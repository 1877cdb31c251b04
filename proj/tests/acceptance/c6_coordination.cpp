#include "criteria.hpp"

#include "tptmap/lj7.hpp"

#include <cmath>
#include <random>

namespace acceptance {

using namespace tptmap;

Result coordination_kernel(const Context&) {
  Result r;
  const double r_star = std::pow(2.0, 1.0 / 6.0);
  const double targets[] = {0.91, 0.39, 0.04};
  const double radii[] = {r_star, std::sqrt(2.0) * r_star, 2.0 * r_star};
  for (int k = 0; k < 3; ++k) {
    const double s = tptmap::coordination_kernel(radii[k]);
    r.check(std::abs(s - targets[k]) <= 0.005, fmt("s(", radii[k], ") = ", s, " vs ", targets[k]));
  }

  // Central differences of (mu2, mu3) against the analytic Jacobian at
  // perturbed minima.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.05);
  double worst = 0.0;
  for (const char* name : {"C0", "C1", "C2", "C3"}) {
    Lj7Config x = lj7_minimum(name);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] += noise(rng);
    const Mat j = cv_jacobian(x);
    Mat fd(2, x.size());
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < x.size(); ++c) {
      Lj7Config xp = x, xm = x;
      xp.data()[c] += h;
      xm.data()[c] -= h;
      fd.col(c) = (lj7_cvs(xp) - lj7_cvs(xm)) / (2.0 * h);
    }
    const double rel = (fd - j).cwiseAbs().maxCoeff() / j.cwiseAbs().maxCoeff();
    r.note(fmt(name, ": max |J - J_fd| / max |J| = ", rel));
    worst = std::max(worst, rel);
  }
  r.check(worst < 1e-5, fmt("Jacobian relative error ", worst, " < 1e-5"));
  r.summary = fmt("Jacobian rel. error ", worst);
  return r;
}

}  // namespace acceptance
