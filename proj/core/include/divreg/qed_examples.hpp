#pragma once

#include "divreg/asymptotics.hpp"
#include "divreg/complex_matrix.hpp"
#include "divreg/dirac.hpp"
#include "divreg/quadrature.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace divreg {

//! Asymptote of int_{|k|<L} dk / (k^2 - 2pk + l)^2 in the i-convention:
//! i pi^2 (ln(L^2 / Delta) - 1), Delta = l - p^2 > 0.
Complex standard_integral_log(const FourVector &p, double l, double L);

//! Exact value of the same integral at p = 0 and finite L:
//! i pi^2 (ln((L^2 + Delta) / Delta) + Delta / (L^2 + Delta) - 1).
Complex standard_integral_log_exact(double delta, double L);

//! Asymptote of int k_nu dk / (k^2 - 2pk + l)^2:
//! i pi^2 p_nu (ln(L^2 / Delta) - 3/2).
Complex standard_integral_vector(const FourVector &p, double l, double L,
                                 int nu);

//! Limit of int i (p_nu - k_nu) dk / (k^2 - 2pk + l)^2, i.e. -pi^2 p_nu / 2.
Complex standard_integral_difference(const FourVector &p, int nu);

//! Euclidean ladder of int_{|k|<L} dk / ((k - shift)^2 + delta)^2 at each
//! radius (real values, no factor i).
SampledIntegral shifted_denominator_ladder(const FourVector &shift,
                                           double delta,
                                           std::span<const double> radii,
                                           const Ball4Options &opt = {});

//! 2 ln B = int_0^1 ln((p^2 + m^2) u - p^2 u^2) du in closed form.
double two_ln_b(double p_sq, double m);
//! The same integral by segment quadrature.
double two_ln_b_quadrature(double p_sq, double m);

//! sigma = int_0^1 x (1 - x) ln(1 + r x (1 - x)) dx, r = p^2 / m^2 >= 0.
double photon_sigma(double ratio);

struct CrossCheck {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  //! |computed - reference| / |reference| (absolute when reference is 0).
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

CrossCheck make_cross_check(std::string name, double computed,
                            double reference, double tolerance);

struct ExampleReport {
  //! "5.1", "5.3" or "5.6".
  std::string id;
  //! Kinematic point and inputs, sorted by name.
  std::map<std::string, double> parameters;
  double e = 0.0;
  //! The expansions hold the coefficient of e^coupling_power.
  int coupling_power = 2;
  AsymptoticExpansion expansion;
  std::optional<AsymptoticExpansion> infrared_expansion;
  AdmissibilityReport admissibility;
  std::optional<DeviationFactor> factor;
  std::optional<DeviationFactor> infrared_factor;
  ComplexMatrix regular;
  //! How the regular part was obtained.
  std::string regular_note;
  std::vector<CrossCheck> cross_checks;
  //! Findings worth reporting that are not failures of the tool.
  std::vector<std::string> notes;

  bool admissible() const noexcept { return admissibility.admissible(); }
  bool cross_checks_passed() const noexcept;
};

struct ElectronOptions {
  //! Fit a quadrature ladder of the u = 1 building block against its
  //! asymptote.
  bool quadrature_cross_check = true;
  double ladder_min = 10.0;
  double ladder_max = 1000.0;
  std::size_t ladder_points = 9;
};

//! Electron self-energy: divergent i 2 m pi^2 / (2pi)^4 ln L I_4, reference
//! scale A with ln A = (1 + 2 ln B) / 2, regular part
//! e^2 / (4pi)^2 (m i I_4 + 1/2 sum_mu gamma_mu p-slash gamma_mu).
ExampleReport electron_self_energy(const FourVector &p, double m, double e,
                                   const ElectronOptions &opt = {});

//! Photon self-energy at Euclidean p^2 = p_sq: divergent
//! -i 8 pi^2 / (2pi)^4 p^2 / 3 ln L, reference scale m, regular part
//! 8 pi^2 e^2 p^2 / (3 (2pi)^4) sigma.
ExampleReport photon_self_energy(double p_sq, double m, double e);

//! Third-order vertex part: ultraviolet gamma_mu / (8 pi^2) (ln L - ln m)
//! and infrared -gamma_mu / (4 pi^2) ln(m / lambda). Admissible for
//! mu = 1, 2, 3 only; for mu = 4 no factor is built. The regular part is a
//! zero placeholder.
ExampleReport vertex_part(double m, double e, double lambda, double L, int mu);

struct FeynmanCheck {
  double quadrature = 0.0;
  double exact = 0.0;
  double relative_deviation = 0.0;
};

//! int_0^1 du / (a u + b (1 - u))^2 against 1 / (ab).
FeynmanCheck feynman_combine(double a, double b);

} // namespace divreg
