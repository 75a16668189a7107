#include "divreg/errors.hpp"
#include "divreg/quadrature.hpp"
#include "divreg/special_functions.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace divreg;

namespace {

// Heine's integral Q_l(x) = int_0^inf dt / (x + sqrt(x^2 - 1) cosh t)^(l+1).
// The integrand is positive, so unlike Neumann's form there is no
// cancellation for large l.
double heine_q(int l, double x) {
  const double s = std::sqrt(x * x - 1.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) { return std::pow(x + s * std::cosh(t), -(l + 1)); }, 1e-15);
}

} // namespace

TEST(Digamma, ReferenceValues) {
  EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-15);
  EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-15);
  EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::numbers::ln2, 1e-14);
}

TEST(Digamma, MatchesBoostOnGrid) {
  for (double x = 0.01; x <= 50.0; x *= 1.07) {
    const double oracle = boost::math::digamma(x);
    EXPECT_NEAR(digamma(x), oracle, 1e-12) << "x=" << x;
  }
}

TEST(Digamma, Recurrence) {
  for (double x = 0.5; x <= 20.0; x += 0.37)
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-12);
}

TEST(Digamma, DomainErrors) {
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-1.5), DomainError);
  EXPECT_THROW(digamma(std::nan("")), DomainError);
}

TEST(LegendreP, ClosedFormsAndBoost) {
  for (double x : {-1.0, -0.3, 0.0, 0.5, 1.0})
    EXPECT_EQ(legendre_p(0, x), 1.0);
  EXPECT_DOUBLE_EQ(legendre_p(2, 0.5), -0.125);
  for (int l = 0; l <= 20; ++l) {
    EXPECT_EQ(legendre_p(l, 1.0), 1.0);
    for (double x = -1.0; x <= 1.0; x += 0.125)
      EXPECT_NEAR(legendre_p(l, x), boost::math::legendre_p(l, x), 1e-14);
  }
  EXPECT_THROW(legendre_p(-1, 0.0), DomainError);
  EXPECT_THROW(legendre_p(2, 1.5), DomainError);
}

TEST(LegendreP, RecurrenceAndOrthogonality) {
  for (int l = 1; l < 20; ++l) {
    for (double x = -1.0; x <= 1.0; x += 0.1) {
      const double res = (l + 1) * legendre_p(l + 1, x) -
                         (2 * l + 1) * x * legendre_p(l, x) + l * legendre_p(l - 1, x);
      EXPECT_LE(std::abs(res), 1e-13);
    }
  }
  const auto r = segment_integrate(
      [](double x) { return Complex(legendre_p(2, x) * legendre_p(3, x)); }, -1.0, 1.0);
  EXPECT_NEAR(r.value.real(), 0.0, 1e-15);
}

TEST(LegendreQ, ClosedForms) {
  EXPECT_NEAR(legendre_q(0, 3.0), 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(legendre_q(1, 3.0), 1.5 * std::log(2.0) - 1.0, 1e-15);
  for (double x : {1.0001, 1.1, 2.0, 7.5, 30.0, 1e3}) {
    const double q0 = 0.5 * std::log((x + 1.0) / (x - 1.0));
    EXPECT_NEAR(legendre_q(0, x), q0, 1e-12 * q0);
    EXPECT_NEAR(legendre_q(1, x), x * q0 - 1.0, 1e-12 * std::max(1.0, x * q0));
    // Q_2 = P_2 Q_0 - 3x/2
    if (x < 10.0) {
      EXPECT_NEAR(legendre_q(2, x), 0.5 * (3 * x * x - 1) * q0 - 1.5 * x,
                  1e-9 * std::abs(legendre_q(2, x)));
    }
  }
}

TEST(LegendreQ, MatchesHeineIntegral) {
  for (int l = 0; l <= 40; l += (l < 10 ? 1 : 6)) {
    for (double x : {1.01, 1.1, 1.5, 2.0, 5.0, 20.0}) {
      const double oracle = heine_q(l, x);
      EXPECT_NEAR(legendre_q(l, x), oracle, 1e-10 * std::abs(oracle))
          << "l=" << l << " x=" << x;
    }
  }
}

TEST(LegendreQ, RecurrenceResidual) {
  for (int l = 1; l < 10; ++l) {
    for (double x = 1.1; x <= 50.0; x *= 1.3) {
      const double a = (l + 1) * legendre_q(l + 1, x);
      const double b = (2 * l + 1) * x * legendre_q(l, x);
      const double c = l * legendre_q(l - 1, x);
      EXPECT_LE(std::abs(a - b + c), 1e-10 * std::max({std::abs(a), std::abs(b), std::abs(c)}))
          << "l=" << l << " x=" << x;
    }
  }
}

TEST(LegendreQ, DecreasesToZero) {
  for (int l = 0; l <= 10; ++l) {
    double prev = legendre_q(l, 2.0);
    EXPECT_GT(prev, 0.0);
    for (double x : {5.0, 10.0, 50.0}) {
      const double v = legendre_q(l, x);
      EXPECT_LT(v, prev);
      EXPECT_GT(v, 0.0);
      prev = v;
    }
  }
}

TEST(LegendreQ, DomainErrors) {
  EXPECT_THROW(legendre_q(0, 1.0), DomainError);
  EXPECT_THROW(legendre_q(0, 0.5), DomainError);
  EXPECT_THROW(legendre_q(-1, 2.0), DomainError);
  EXPECT_THROW(legendre_q(kMaxLegendreQOrder + 1, 2.0), DomainError);
}
