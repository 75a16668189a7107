#pragma once

#include "divreg/asymptotics.hpp"
#include "divreg/complex_matrix.hpp"
#include "divreg/quadrature.hpp"

#include <span>
#include <vector>

namespace divreg {

//! Discrete screening measure: sum_j w_j delta(beta - beta_j).
struct YukawaMeasure {
  std::vector<double> beta;
  std::vector<double> weight;

  bool empty() const noexcept { return beta.empty(); }
  std::size_t size() const noexcept { return beta.size(); }
  //! Throws DomainError unless sizes match, every beta_j >= floor > 0 and
  //! every entry is finite.
  void validate(double floor = 1e-12) const;
};

//! Potential -2 e z / r + e q(r) with q the Yukawa superposition, in the
//! partial wave l.
struct CoulombPotentialSpec {
  double z = 0.0;
  double e = 1.0;
  int l = 0;
  YukawaMeasure measure;

  void validate() const;
};

//! Kernel of the partial-wave momentum operator
//!   R_l(k, p) = -(2z / (pi k p)) Q_l((k^2 + p^2) / (2kp))
//!             + (2/pi) sum_j w_j int_{-1}^{1} P_l(x) dx / (k^2 + p^2 - 2kpx + beta_j^2).
//! Throws DomainError at |k - p| < 1e-10 k when z != 0.
double kernel_R(const CoulombPotentialSpec &spec, double k, double p);

struct MomentumGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  //! Throws DomainError unless nodes are positive, strictly increasing and
  //! the sizes match.
  void validate() const;
};

//! Matrix M with (M f)_i = k_i^2 f_i + e sum_j w_j p_j k_i R_l(k_i, p_j) f_j.
//! For z != 0 the diagonal j = i of the integral part is excluded, as are
//! nodes closer than the kernel pole tolerance.
ComplexMatrix momentum_operator_matrix(const CoulombPotentialSpec &spec,
                                       const MomentumGrid &grid);

//! M f for f sampled on the grid.
std::vector<Complex> apply_momentum_operator(const CoulombPotentialSpec &spec,
                                             std::span<const Complex> f,
                                             const MomentumGrid &grid);

//! (z sign(t) / k) ln(2k|t|).
double w0_phase(double t, double k, double z);
//! (2k|t|)^{i z sign(t) / k}, unimodular.
Complex w0(double t, double k, double z);

//! First-order generalized scattering term
//!   S_1(k, l) = -2i z psi(l + 1) / k
//!             - (2i/k) sum_j w_j int_{-1}^{1} P_l(x) k / (2k^2(1 - x) + beta_j^2) dx.
Complex s1(const CoulombPotentialSpec &spec, double k);

//! Fits {ln Lambda, 1} to first-order infrared samples with
//! Lambda = |t tau| and returns the surviving terms (relative threshold as
//! in detect_signature; a constant 0 when everything vanishes).
AsymptoticExpansion coulomb_divergence_fit(const SampledIntegral &samples);

//! Samples a_1(t, tau) = i (phase(t) - phase(tau)) from the W_0 conjugation
//! at the pairs (t_values[i], tau_values[i]) and fits them.
//! Requires t > 0 increasing and tau < 0 decreasing, of equal length.
AsymptoticExpansion coulomb_divergence_check(double z, double k,
                                             std::span<const double> t_values,
                                             std::span<const double> tau_values);

} // namespace divreg
