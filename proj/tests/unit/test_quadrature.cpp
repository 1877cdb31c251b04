#include "tptmap/error.hpp"
#include "tptmap/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>

namespace tptmap {
namespace {

TEST(AdaptiveSimpson, Polynomials) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0), 4.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(x); }, -1.0, 1.0), std::exp(1.0) - std::exp(-1.0),
              1e-10);
}

TEST(Committor1D, ConstantCoefficientsAreLinear) {
  const Committor1D q([](double) { return 2.0; }, [](double) { return 0.7; }, 3.0, -1.0, 2.0);
  EXPECT_NEAR(q(0.5), 0.5, 1e-12);
  EXPECT_NEAR(q(0.0), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(q(-5.0), 0.0);
  EXPECT_EQ(q(2.5), 1.0);
}

TEST(Committor1D, EvenDataGivesHalfAtMidpoint) {
  const Committor1D q([](double x) { return (x * x - 1.0) * (x * x - 1.0); },
                      [](double x) { return 1.0 + 0.5 * std::cos(3.0 * x); }, 3.0, -0.9, 0.9);
  EXPECT_NEAR(q(0.0), 0.5, 1e-10);
  EXPECT_NEAR(q(0.3) + q(-0.3), 1.0, 1e-10);
}

TEST(Committor1D, AgreesWithGaussKronrod) {
  auto f = [](double x) { return x * x; };
  auto m = [](double x) { return 1.0 + 0.5 * x; };
  auto w = [&](double s) { return std::exp(f(s)) / m(s); };
  using boost::math::quadrature::gauss_kronrod;
  const double num = gauss_kronrod<double, 61>::integrate(w, 0.0, 0.5, 15, 1e-14);
  const double den = gauss_kronrod<double, 61>::integrate(w, 0.0, 1.0, 15, 1e-14);
  const Committor1D q(f, m, 1.0, 0.0, 1.0);
  EXPECT_NEAR(q(0.5), num / den, 1e-8);
}

TEST(Committor1D, Monotone) {
  const Committor1D q([](double x) { return std::cos(4.0 * x); }, [](double x) { return 2.0 + std::sin(x); }, 5.0,
                      -1.0, 1.0);
  double prev = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double v = q(-1.0 + 2.0 * k / 200.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Committor1D, RejectsNonpositiveTensor) {
  EXPECT_THROW(Committor1D([](double) { return 0.0; }, [](double x) { return x; }, 1.0, -1.0, 1.0), Error);
  EXPECT_THROW(Committor1D([](double) { return 0.0; }, [](double) { return 1.0; }, 1.0, 1.0, 1.0), Error);
}

}  // namespace
}  // namespace tptmap
