#include "divreg/special_functions.hpp"

#include "divreg/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace divreg {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("digamma: argument must be positive and finite, got " +
                      std::to_string(x));
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // ln x - 1/(2x) - sum_k B_2k / (2k x^2k)
  const double r = 1.0 / (x * x);
  const double tail =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 -
                     r * (1.0 / 240 -
                          r * (1.0 / 132 -
                               r * (691.0 / 32760 - r * (1.0 / 12)))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

double legendre_p(int l, double x) {
  if (l < 0)
    throw DomainError("legendre_p: negative order " + std::to_string(l));
  if (!(std::abs(x) <= 1.0))
    throw DomainError("legendre_p: |x| > 1");
  if (l == 0)
    return 1.0;
  double prev = 1.0, cur = x;
  for (int n = 1; n < l; ++n) {
    const double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Q_0 = atanh(1/x); Q_1 = x Q_0 - 1, summed as a series for large x where
// the subtraction cancels.
double q0(double x) { return std::atanh(1.0 / x); }

double q1(double x) {
  if (x < 8.0)
    return x * q0(x) - 1.0;
  const double r = 1.0 / (x * x);
  double term = r, sum = 0.0;
  for (int n = 1; n < 40; ++n) {
    const double add = term / (2 * n + 1);
    sum += add;
    if (add < 1e-18 * sum)
      break;
    term *= r;
  }
  return sum;
}

} // namespace

double legendre_q(int l, double x) {
  if (l < 0 || l > kMaxLegendreQOrder)
    throw DomainError("legendre_q: order " + std::to_string(l) +
                      " outside [0, " + std::to_string(kMaxLegendreQOrder) +
                      "]");
  if (!(x > 1.0) || !std::isfinite(x))
    throw DomainError("legendre_q: argument must exceed 1 (pole at x = 1)");
  if (l == 0)
    return q0(x);
  if (l == 1)
    return q1(x);

  // Q_l is the recessive solution of the three-term recurrence. Upward
  // recurrence loses about log10(rho^(2l)) digits, rho = x + sqrt(x^2 - 1);
  // past a few digits switch to Miller's downward recurrence normalised by
  // Q_0.
  const double log_rho = std::log(x + std::sqrt(x * x - 1.0));
  if (2.0 * l * log_rho <= std::log(1e3)) {
    double prev = q0(x), cur = q1(x);
    for (int n = 1; n < l; ++n) {
      const double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
      prev = cur;
      cur = next;
    }
    return cur;
  }

  const int start = l + static_cast<int>(std::ceil(40.0 / log_rho)) + 10;
  std::vector<double> y(static_cast<std::size_t>(start) + 2, 0.0);
  y[static_cast<std::size_t>(start)] = 1e-300;
  for (int n = start; n >= 1; --n) {
    // n y_{n-1} = (2n+1) x y_n - (n+1) y_{n+1}
    const auto i = static_cast<std::size_t>(n);
    y[i - 1] = ((2 * n + 1) * x * y[i] - (n + 1) * y[i + 1]) / n;
    if (std::abs(y[i - 1]) > 1e250) {
      for (auto &v : y)
        v *= 1e-250;
    }
  }
  return y[static_cast<std::size_t>(l)] * (q0(x) / y[0]);
}

} // namespace divreg
