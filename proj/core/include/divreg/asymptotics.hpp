#pragma once

#include "divreg/complex_matrix.hpp"
#include "divreg/errors.hpp"

#include <compare>
#include <initializer_list>
#include <utility>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace divreg {

//! Reduced fraction num/den with den > 0.
struct Rational {
  int num = 0;
  int den = 1;

  constexpr Rational() = default;
  constexpr Rational(int n) : num(n), den(1) {} // NOLINT: implicit on purpose
  Rational(int n, int d);

  double value() const noexcept { return double(num) / double(den); }
  std::string str() const;

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b) {
    return static_cast<long long>(a.num) * b.den <=>
           static_cast<long long>(b.num) * a.den;
  }
};

//! Monomial Lambda^power * ln^logpower(Lambda).
struct BasisFunction {
  Rational power;
  int logpower = 0;

  BasisFunction() = default;
  BasisFunction(Rational a, int p);

  bool is_constant() const noexcept { return power.num == 0 && logpower == 0; }
  //! a > 0, or a = 0 with p > 0.
  bool is_divergent() const noexcept {
    return power.num > 0 || (power.num == 0 && logpower > 0);
  }
  bool is_remainder() const noexcept { return power.num < 0; }

  //! Lambda^a ln^p(Lambda / reference); Lambda must be positive.
  double value(double lambda, double reference = 1.0) const;
  //! Human readable form, e.g. "L^2", "ln^2 L", "1/L", "1".
  std::string label() const;

  friend bool operator==(const BasisFunction &,
                         const BasisFunction &) = default;
  friend std::strong_ordering operator<=>(const BasisFunction &a,
                                          const BasisFunction &b) {
    if (auto c = a.power <=> b.power; c != 0)
      return c;
    return a.logpower <=> b.logpower;
  }
};

namespace basis {
inline BasisFunction constant() { return {0, 0}; }
inline BasisFunction log(int p = 1) { return {0, p}; }
inline BasisFunction power(int a) { return {a, 0}; }
inline BasisFunction inverse(int a = 1) { return {-a, 0}; }
//! {L^2, L, ln^2 L, ln L, 1, 1/L, 1/L^2}
std::vector<BasisFunction> default_set();
} // namespace basis

//! What the regulator variable Lambda stands for. The algebra is identical;
//! the kind is carried for reporting and to keep unrelated expansions apart.
enum class RegulatorKind {
  ultraviolet_cutoff,       // radius L of the integration ball
  infrared_time_product,    // |t tau|
  infrared_inverse_photon_mass, // m / lambda for a photon mass lambda -> 0
};

std::string to_string(RegulatorKind kind);
RegulatorKind regulator_from_string(const std::string &s);

//! Finite sum  sum_b C_b * b(Lambda) with n x n coefficients (n = 1 for
//! scalar amplitudes) plus an optional tag for the order of the neglected
//! remainder.
class AsymptoticExpansion {
public:
  using Terms = std::map<BasisFunction, ComplexMatrix>;

  explicit AsymptoticExpansion(
      RegulatorKind kind = RegulatorKind::ultraviolet_cutoff,
      std::size_t dimension = 1);

  //! Scalar expansion from (basis, coefficient) pairs.
  static AsymptoticExpansion
  scalar(RegulatorKind kind,
         std::initializer_list<std::pair<BasisFunction, Complex>> terms);

  RegulatorKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const Terms &terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  //! Adds c to the coefficient of b (creating the term if absent).
  AsymptoticExpansion &add(const BasisFunction &b, const ComplexMatrix &c);
  AsymptoticExpansion &add(const BasisFunction &b, Complex c);
  //! Coefficient of b, zero matrix when absent.
  ComplexMatrix coefficient(const BasisFunction &b) const;
  bool contains(const BasisFunction &b) const { return terms_.contains(b); }
  //! Drops terms whose coefficient has max-abs <= tol.
  AsymptoticExpansion pruned(double tol = 0.0) const;

  //! sum_b C_b b(Lambda) with logs taken relative to reference.
  ComplexMatrix evaluate(double lambda, double reference = 1.0) const;
  //! Scalar convenience; requires dimension 1.
  Complex evaluate_scalar(double lambda, double reference = 1.0) const;

  const std::optional<BasisFunction> &remainder_order() const noexcept {
    return remainder_order_;
  }
  void set_remainder_order(std::optional<BasisFunction> order) {
    remainder_order_ = order;
  }

  friend bool operator==(const AsymptoticExpansion &,
                         const AsymptoticExpansion &) = default;

private:
  RegulatorKind kind_;
  std::size_t dimension_;
  Terms terms_;
  std::optional<BasisFunction> remainder_order_;
};

struct DivergenceSplit {
  AsymptoticExpansion divergent;
  ComplexMatrix finite;
  AsymptoticExpansion remainder;
};

//! Partition into divergent terms, the constant, and decaying terms.
DivergenceSplit split_divergent(const AsymptoticExpansion &x);
//! Inverse of split_divergent.
AsymptoticExpansion recombine(const DivergenceSplit &split);

struct AdmissibilityViolation {
  BasisFunction basis;
  //! ||(C + C^dagger)/2||_F
  double hermitian_part_norm = 0.0;
  double coefficient_norm = 0.0;
  //! Series order where the violation occurred (0 when not applicable).
  int order = 0;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityViolation> violations;

  bool admissible() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return admissible(); }
  std::string describe() const;
};

inline constexpr double kAdmissibilityTolerance = 1e-12;

//! A divergent coefficient C is admissible when C = -C^dagger, i.e.
//! ||C + C^dagger|| <= tol ||C||; for scalars this is Re c = 0.
//! Throws DomainError if the expansion has non-divergent terms.
AdmissibilityReport check_admissible(const AsymptoticExpansion &divergent,
                                     double tol = kAdmissibilityTolerance);

class InadmissibleError : public DomainError {
public:
  explicit InadmissibleError(AdmissibilityReport report)
      : DomainError("inadmissible divergence: " + report.describe()),
        report_(std::move(report)) {}
  const AdmissibilityReport &report() const noexcept { return report_; }

private:
  AdmissibilityReport report_;
};

//! U(Lambda) = exp(i sum_b H_b b(Lambda / A)) with Hermitian H_b.
class DeviationFactor {
public:
  using Exponent = std::map<BasisFunction, ComplexMatrix>;

  static DeviationFactor identity(RegulatorKind kind, std::size_t dimension,
                                  double reference_scale = 1.0);

  DeviationFactor(RegulatorKind kind, std::size_t dimension,
                  Exponent exponent, double reference_scale = 1.0);

  RegulatorKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const Exponent &exponent() const noexcept { return exponent_; }
  double reference_scale() const noexcept { return reference_scale_; }
  bool is_identity() const noexcept { return exponent_.empty(); }

  //! sum_b H_b b(Lambda / A), a Hermitian matrix.
  ComplexMatrix phase(double lambda) const;

  //! Same exponent, new reference scale.
  DeviationFactor with_reference_scale(double reference_scale) const;

  friend bool operator==(const DeviationFactor &,
                         const DeviationFactor &) = default;

private:
  RegulatorKind kind_;
  std::size_t dimension_;
  Exponent exponent_;
  double reference_scale_;
};

//! Builds the factor absorbing e^coupling_power * divergent(Lambda).
//! The exponent for basis b is e^coupling_power * (C_b - C_b^dagger) / 2i.
//! Throws InadmissibleError when check_admissible fails.
DeviationFactor deviation_factor(const AsymptoticExpansion &divergent,
                                 int coupling_power, double e,
                                 double reference_scale = 1.0,
                                 double tol = kAdmissibilityTolerance);

//! exp(i H) for Hermitian H; 1x1 handled in closed form.
ComplexMatrix unitary_exp(const ComplexMatrix &hermitian);

//! U(Lambda); throws DomainError for Lambda <= 0.
ComplexMatrix evaluate_factor(const DeviationFactor &f, double lambda);

//! a(Lambda) minus its divergent part at Lambda.
ComplexMatrix regularize_term(const AsymptoticExpansion &a, double lambda);

//! d = 1 + sum_{m=1..N} e^m a_m.
struct CouplingSeries {
  double e = 0.0;
  //! a_1 .. a_N, all of the same regulator kind and dimension.
  std::vector<AsymptoticExpansion> orders;

  std::size_t dimension() const;
  RegulatorKind kind() const;
  //! Direct evaluation of the truncated series.
  ComplexMatrix evaluate(double lambda) const;
};

struct SeriesRegularization {
  DeviationFactor factor;
  //! Regular coefficients at the requested Lambda, index m-1 holds order m.
  std::vector<ComplexMatrix> regular;
  double lambda = 0.0;
  double e = 0.0;

  //! 1 + sum_m e^m regular_m.
  ComplexMatrix regular_sum() const;
};

struct SeriesRegularizationOptions {
  double reference_scale = 1.0;
  //! Number of regular orders to return; 0 means the series order N.
  std::size_t order = 0;
  double tol = kAdmissibilityTolerance;
};

//! Splits d(Lambda) = U(Lambda) * dtilde(Lambda).
//!
//! The composite factor is U = exp(sum_m e^m S_m(Lambda)), S_m the divergent
//! part of a_m. The regular coefficients are the exact Taylor coefficients
//! in e of U^{-1} d (so order m equals a_m minus its divergent part plus
//! cross terms from lower orders). Throws InadmissibleError naming the
//! offending order.
SeriesRegularization regularize_series(const CouplingSeries &s, double lambda,
                                       const SeriesRegularizationOptions &opt =
                                           {});

//! True when the exponent contains no positive power of Lambda, which is
//! exactly when U(Lambda + Lambda0) U(Lambda)^{-1} tends to the identity.
bool class_A(const DeviationFactor &f);

struct ModelSeriesValue {
  Complex raw;
  Complex regular;
};

//! Truncated d(Lambda) with a_m = sum_k psi_{m-k} (i phi ln Lambda)^k / k!
//! and its regular form Lambda^{-i e phi} d(Lambda).
//! psi[0] must equal 1 and psi must hold at least N + 1 entries.
ModelSeriesValue model_series(double phi, std::span<const Complex> psi,
                              double e, double lambda, int order);

} // namespace divreg
