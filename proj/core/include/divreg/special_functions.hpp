#pragma once

namespace divreg {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

//! psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

//! Legendre polynomial P_l(x), |x| <= 1.
double legendre_p(int l, double x);

inline constexpr int kMaxLegendreQOrder = 64;

//! Legendre function of the second kind Q_l(x) for x > 1,
//! 0 <= l <= kMaxLegendreQOrder.
double legendre_q(int l, double x);

} // namespace divreg
