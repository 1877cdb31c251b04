#pragma once

// One-dimensional committor oracle:
//   q(x) = int_a^x exp(beta F) / M ds  /  int_a^b exp(beta F) / M ds.

#include <functional>
#include <vector>

namespace tptmap {

using Function1D = std::function<double(double)>;

/// Adaptive Simpson quadrature to the given relative tolerance.
double adaptive_simpson(const Function1D& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 50);

class Committor1D {
 public:
  static constexpr std::size_t kPanels = 512;

  Committor1D(Function1D free_energy, Function1D tensor, double beta, double a, double b,
              double rel_tol = 1e-10);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  /// 0 for x <= a, 1 for x >= b.
  double operator()(double x) const;

 private:
  double integrand(double s) const;

  Function1D free_energy_;
  Function1D tensor_;
  double beta_;
  double a_;
  double b_;
  double rel_tol_;
  double shift_ = 0.0;
  std::vector<double> cumulative_;  // integral up to each panel start
};

inline Committor1D committor_1d(Function1D free_energy, Function1D tensor, double beta, double a,
                                double b) {
  return Committor1D(std::move(free_energy), std::move(tensor), beta, a, b);
}

}  // namespace tptmap
