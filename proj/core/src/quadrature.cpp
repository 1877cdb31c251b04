#include "tptmap/quadrature.hpp"

#include "tptmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tptmap {

namespace {

constexpr const char* kModule = "fdref";

double simpson_step(const Function1D& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Function1D& f, double a, double b, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // A coarse estimate sets the absolute target for the recursion.
  const double scale = std::max(std::abs(whole), std::numeric_limits<double>::min());
  return simpson_step(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, max_depth);
}

Committor1D::Committor1D(Function1D free_energy, Function1D tensor, double beta, double a,
                         double b, double rel_tol)
    : free_energy_(std::move(free_energy)), tensor_(std::move(tensor)), beta_(beta), a_(a), b_(b),
      rel_tol_(rel_tol) {
  if (!(a < b)) throw_config(kModule, "committor_1d requires a < b");
  if (!(beta > 0.0)) throw_config(kModule, "beta must be positive");
  const std::size_t probes = 4 * kPanels + 1;
  double fmax = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < probes; ++k) {
    const double s = a + (b - a) * static_cast<double>(k) / static_cast<double>(probes - 1);
    fmax = std::max(fmax, free_energy_(s));
  }
  shift_ = fmax;
  cumulative_.assign(kPanels + 1, 0.0);
  const Function1D g = [this](double s) { return integrand(s); };
  const double h = (b - a) / static_cast<double>(kPanels);
  for (std::size_t k = 0; k < kPanels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double hi = k + 1 == kPanels ? b : lo + h;
    cumulative_[k + 1] = cumulative_[k] + adaptive_simpson(g, lo, hi, rel_tol_);
  }
  if (!(cumulative_.back() > 0.0) || !std::isfinite(cumulative_.back())) {
    throw_numerical(kModule, "committor normalization integral is not positive and finite");
  }
}

double Committor1D::integrand(double s) const {
  const double m = tensor_(s);
  if (!(m > 0.0)) {
    std::ostringstream msg;
    msg << "diffusion coefficient " << m << " at x = " << s << " is not positive";
    throw_data(kModule, msg.str());
  }
  return std::exp(beta_ * (free_energy_(s) - shift_)) / m;
}

double Committor1D::operator()(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  const double h = (b_ - a_) / static_cast<double>(kPanels);
  const auto k = std::min(static_cast<std::size_t>((x - a_) / h), kPanels - 1);
  const double lo = a_ + h * static_cast<double>(k);
  const Function1D g = [this](double s) { return integrand(s); };
  const double partial = cumulative_[k] + adaptive_simpson(g, lo, x, rel_tol_);
  return std::clamp(partial / cumulative_.back(), 0.0, 1.0);
}

}  // namespace tptmap
