#include "divreg/asymptotics.hpp"

#include "eigen_bridge.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace divreg {

namespace {

constexpr Complex I{0.0, 1.0};

void require_positive_lambda(double lambda, const char *who) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << who << ": regulator value must be positive and finite, got "
       << lambda;
    throw DomainError(os.str());
  }
}

// Truncated polynomial in the coupling with matrix coefficients.
using MatrixPoly = std::vector<ComplexMatrix>;

MatrixPoly poly_mul(const MatrixPoly &a, const MatrixPoly &b,
                    std::size_t degree) {
  const std::size_t n = a.front().rows();
  MatrixPoly out(degree + 1, ComplexMatrix::zero(n, n));
  for (std::size_t i = 0; i < a.size() && i <= degree; ++i) {
    if (a[i].max_abs() == 0.0)
      continue;
    for (std::size_t j = 0; j < b.size() && i + j <= degree; ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

// exp(X) for X with vanishing constant term, truncated at `degree`.
// Powers are formed by repeated multiplication so non-commuting
// coefficients are handled exactly.
MatrixPoly poly_exp(const MatrixPoly &x, std::size_t degree) {
  const std::size_t n = x.front().rows();
  MatrixPoly result(degree + 1, ComplexMatrix::zero(n, n));
  result[0] = ComplexMatrix::identity(n);
  MatrixPoly power = result; // X^0
  double factorial = 1.0;
  for (std::size_t k = 1; k <= degree; ++k) {
    power = poly_mul(power, x, degree);
    factorial *= double(k);
    for (std::size_t j = 0; j <= degree; ++j)
      result[j] += power[j] * (1.0 / factorial);
  }
  return result;
}

} // namespace

// --- Rational / BasisFunction ----------------------------------------------

Rational::Rational(int n, int d) {
  if (d == 0)
    throw DomainError("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const int g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Rational::str() const {
  if (den == 1)
    return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

BasisFunction::BasisFunction(Rational a, int p) : power(a), logpower(p) {
  if (p < 0)
    throw DomainError("BasisFunction: log power must be non-negative");
}

double BasisFunction::value(double lambda, double reference) const {
  if (!(lambda > 0.0) || !(reference > 0.0))
    throw DomainError("BasisFunction::value: regulator and reference must be positive");
  double v = 1.0;
  if (power.num != 0)
    v = power.den == 1 ? std::pow(lambda, power.num)
                       : std::pow(lambda, power.value());
  if (logpower > 0)
    v *= std::pow(std::log(lambda / reference), logpower);
  return v;
}

std::string BasisFunction::label() const {
  if (is_constant())
    return "1";
  std::string s;
  if (power.num != 0) {
    if (power.num < 0) {
      const Rational a(-power.num, power.den);
      s = a == Rational(1) ? "1/L" : "1/L^" + a.str();
    } else {
      s = power == Rational(1) ? "L" : "L^" + power.str();
    }
  }
  if (logpower > 0) {
    if (!s.empty())
      s += " ";
    s += logpower == 1 ? "ln L" : "ln^" + std::to_string(logpower) + " L";
  }
  return s;
}

std::vector<BasisFunction> basis::default_set() {
  return {power(2), power(1),   log(2),    log(1),
          constant(), inverse(1), inverse(2)};
}

std::string to_string(RegulatorKind kind) {
  switch (kind) {
  case RegulatorKind::ultraviolet_cutoff:
    return "ultraviolet_cutoff";
  case RegulatorKind::infrared_time_product:
    return "infrared_time_product";
  case RegulatorKind::infrared_inverse_photon_mass:
    return "infrared_inverse_photon_mass";
  }
  return "unknown";
}

RegulatorKind regulator_from_string(const std::string &s) {
  for (auto k : {RegulatorKind::ultraviolet_cutoff,
                 RegulatorKind::infrared_time_product,
                 RegulatorKind::infrared_inverse_photon_mass}) {
    if (to_string(k) == s)
      return k;
  }
  throw DomainError("unknown regulator kind '" + s + "'");
}

// --- AsymptoticExpansion ----------------------------------------------------

AsymptoticExpansion::AsymptoticExpansion(RegulatorKind kind,
                                         std::size_t dimension)
    : kind_(kind), dimension_(dimension) {
  if (dimension == 0)
    throw DomainError("AsymptoticExpansion: dimension must be positive");
}

AsymptoticExpansion AsymptoticExpansion::scalar(
    RegulatorKind kind,
    std::initializer_list<std::pair<BasisFunction, Complex>> terms) {
  AsymptoticExpansion x(kind, 1);
  for (const auto &[b, c] : terms)
    x.add(b, c);
  return x;
}

AsymptoticExpansion &AsymptoticExpansion::add(const BasisFunction &b,
                                              const ComplexMatrix &c) {
  if (c.rows() != dimension_ || c.cols() != dimension_)
    throw DomainError("AsymptoticExpansion::add: coefficient dimension " +
                      std::to_string(c.rows()) + "x" +
                      std::to_string(c.cols()) + " does not match " +
                      std::to_string(dimension_));
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted)
    it->second += c;
  return *this;
}

AsymptoticExpansion &AsymptoticExpansion::add(const BasisFunction &b,
                                              Complex c) {
  return add(b, c * ComplexMatrix::identity(dimension_));
}

ComplexMatrix AsymptoticExpansion::coefficient(const BasisFunction &b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? ComplexMatrix::zero(dimension_, dimension_)
                            : it->second;
}

AsymptoticExpansion AsymptoticExpansion::pruned(double tol) const {
  AsymptoticExpansion out(kind_, dimension_);
  out.remainder_order_ = remainder_order_;
  for (const auto &[b, c] : terms_) {
    if (c.max_abs() > tol)
      out.terms_.emplace(b, c);
  }
  return out;
}

ComplexMatrix AsymptoticExpansion::evaluate(double lambda,
                                            double reference) const {
  require_positive_lambda(lambda, "AsymptoticExpansion::evaluate");
  ComplexMatrix sum = ComplexMatrix::zero(dimension_, dimension_);
  for (const auto &[b, c] : terms_)
    sum += b.value(lambda, reference) * c;
  return sum;
}

Complex AsymptoticExpansion::evaluate_scalar(double lambda,
                                             double reference) const {
  if (dimension_ != 1)
    throw DomainError("evaluate_scalar: expansion is matrix valued");
  return evaluate(lambda, reference)(0, 0);
}

// --- splitting and admissibility ---------------------------------------------

DivergenceSplit split_divergent(const AsymptoticExpansion &x) {
  DivergenceSplit s{AsymptoticExpansion(x.kind(), x.dimension()),
                    ComplexMatrix::zero(x.dimension(), x.dimension()),
                    AsymptoticExpansion(x.kind(), x.dimension())};
  s.remainder.set_remainder_order(x.remainder_order());
  for (const auto &[b, c] : x.terms()) {
    if (b.is_divergent())
      s.divergent.add(b, c);
    else if (b.is_constant())
      s.finite = c;
    else
      s.remainder.add(b, c);
  }
  return s;
}

AsymptoticExpansion recombine(const DivergenceSplit &split) {
  AsymptoticExpansion x = split.divergent;
  x.set_remainder_order(split.remainder.remainder_order());
  if (split.finite.max_abs() != 0.0 ||
      split.divergent.contains(basis::constant()))
    x.add(basis::constant(), split.finite);
  for (const auto &[b, c] : split.remainder.terms())
    x.add(b, c);
  return x;
}

std::string AdmissibilityReport::describe() const {
  if (violations.empty())
    return "admissible";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto &v = violations[i];
    if (i)
      os << "; ";
    if (v.order > 0)
      os << "order " << v.order << ", ";
    os << "term " << v.basis.label()
       << ": Hermitian part norm " << v.hermitian_part_norm;
  }
  return os.str();
}

AdmissibilityReport check_admissible(const AsymptoticExpansion &divergent,
                                     double tol) {
  AdmissibilityReport report;
  for (const auto &[b, c] : divergent.terms()) {
    if (!b.is_divergent())
      throw DomainError("check_admissible: term " + b.label() +
                        " is not divergent");
    const double herm = c.hermitian_part().frobenius_norm();
    const double norm = c.frobenius_norm();
    // ||C + C^dagger|| = 2 ||Herm(C)||
    if (2.0 * herm > tol * norm)
      report.violations.push_back({b, herm, norm, 0});
  }
  return report;
}

// --- deviation factors --------------------------------------------------------

DeviationFactor DeviationFactor::identity(RegulatorKind kind,
                                          std::size_t dimension,
                                          double reference_scale) {
  return DeviationFactor(kind, dimension, {}, reference_scale);
}

DeviationFactor::DeviationFactor(RegulatorKind kind, std::size_t dimension,
                                 Exponent exponent, double reference_scale)
    : kind_(kind), dimension_(dimension), exponent_(std::move(exponent)),
      reference_scale_(reference_scale) {
  if (!(reference_scale > 0.0) || !std::isfinite(reference_scale))
    throw DomainError("DeviationFactor: reference scale must be positive");
  for (const auto &[b, h] : exponent_) {
    if (!b.is_divergent())
      throw DomainError("DeviationFactor: exponent term " + b.label() +
                        " is not divergent");
    if (h.rows() != dimension || h.cols() != dimension)
      throw DomainError("DeviationFactor: exponent dimension mismatch");
  }
}

ComplexMatrix DeviationFactor::phase(double lambda) const {
  require_positive_lambda(lambda, "DeviationFactor::phase");
  ComplexMatrix sum = ComplexMatrix::zero(dimension_, dimension_);
  for (const auto &[b, h] : exponent_)
    sum += b.value(lambda, reference_scale_) * h;
  return sum;
}

DeviationFactor
DeviationFactor::with_reference_scale(double reference_scale) const {
  return DeviationFactor(kind_, dimension_, exponent_, reference_scale);
}

DeviationFactor deviation_factor(const AsymptoticExpansion &divergent,
                                 int coupling_power, double e,
                                 double reference_scale, double tol) {
  auto report = check_admissible(divergent, tol);
  if (!report)
    throw InadmissibleError(std::move(report));
  const double weight = std::pow(e, coupling_power);
  DeviationFactor::Exponent exponent;
  for (const auto &[b, c] : divergent.terms()) {
    // C = i H for admissible C; take the Hermitian projection of -iC.
    ComplexMatrix h = (-I * c).hermitian_part() * weight;
    if (h.max_abs() != 0.0)
      exponent.emplace(b, std::move(h));
  }
  return DeviationFactor(divergent.kind(), divergent.dimension(),
                         std::move(exponent), reference_scale);
}

ComplexMatrix unitary_exp(const ComplexMatrix &hermitian) {
  if (!hermitian.is_square())
    throw DomainError("unitary_exp: matrix must be square");
  if (!hermitian.is_hermitian(kAdmissibilityTolerance * std::max(1.0, hermitian.max_abs())))
    throw DomainError("unitary_exp: generator is not Hermitian");
  if (hermitian.rows() == 1)
    return ComplexMatrix(std::polar(1.0, hermitian(0, 0).real()));
  const Eigen::MatrixXcd h = detail::to_eigen(hermitian.hermitian_part());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("unitary_exp: eigendecomposition failed");
  const Eigen::VectorXd w = solver.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases(i) = std::polar(1.0, w(i));
  const Eigen::MatrixXcd &v = solver.eigenvectors();
  return detail::from_eigen(v * phases.asDiagonal() * v.adjoint());
}

ComplexMatrix evaluate_factor(const DeviationFactor &f, double lambda) {
  require_positive_lambda(lambda, "evaluate_factor");
  if (f.is_identity())
    return ComplexMatrix::identity(f.dimension());
  return unitary_exp(f.phase(lambda));
}

ComplexMatrix regularize_term(const AsymptoticExpansion &a, double lambda) {
  require_positive_lambda(lambda, "regularize_term");
  const auto split = split_divergent(a);
  return a.evaluate(lambda) - split.divergent.evaluate(lambda);
}

// --- coupling series -----------------------------------------------------------

std::size_t CouplingSeries::dimension() const {
  if (orders.empty())
    throw DomainError("CouplingSeries: series has no orders");
  return orders.front().dimension();
}

RegulatorKind CouplingSeries::kind() const {
  if (orders.empty())
    throw DomainError("CouplingSeries: series has no orders");
  return orders.front().kind();
}

ComplexMatrix CouplingSeries::evaluate(double lambda) const {
  const std::size_t n = dimension();
  ComplexMatrix d = ComplexMatrix::identity(n);
  double em = 1.0;
  for (const auto &a : orders) {
    em *= e;
    d += em * a.evaluate(lambda);
  }
  return d;
}

ComplexMatrix SeriesRegularization::regular_sum() const {
  if (regular.empty())
    return ComplexMatrix::identity(factor.dimension());
  ComplexMatrix d = ComplexMatrix::identity(regular.front().rows());
  double em = 1.0;
  for (const auto &a : regular) {
    em *= e;
    d += em * a;
  }
  return d;
}

SeriesRegularization regularize_series(const CouplingSeries &s, double lambda,
                                       const SeriesRegularizationOptions &opt) {
  require_positive_lambda(lambda, "regularize_series");
  const std::size_t n = s.dimension();
  const RegulatorKind kind = s.kind();
  const std::size_t order_n = s.orders.size();
  const std::size_t degree = opt.order == 0 ? order_n : opt.order;

  // Per-order divergent parts, their skew projections and the composite
  // exponent sum_m e^m H_m.
  MatrixPoly minus_generator(degree + 1, ComplexMatrix::zero(n, n));
  DeviationFactor::Exponent exponent;
  AdmissibilityReport failures;
  double em = 1.0;
  for (std::size_t m = 1; m <= order_n; ++m) {
    em *= s.e;
    const auto &a = s.orders[m - 1];
    if (a.dimension() != n || a.kind() != kind)
      throw DomainError("regularize_series: order " + std::to_string(m) +
                        " has mismatched dimension or regulator");
    const auto split = split_divergent(a);
    auto report = check_admissible(split.divergent, opt.tol);
    for (auto v : report.violations) {
      v.order = int(m);
      failures.violations.push_back(v);
    }
    if (!report)
      continue;
    ComplexMatrix skew = ComplexMatrix::zero(n, n);
    for (const auto &[b, c] : split.divergent.terms()) {
      const ComplexMatrix c_skew = c.skew_hermitian_part();
      skew += b.value(lambda, opt.reference_scale) * c_skew;
      ComplexMatrix h = (-I * c_skew) * em;
      auto [it, inserted] = exponent.try_emplace(b, h);
      if (!inserted)
        it->second += h;
    }
    if (m <= degree)
      minus_generator[m] = -skew;
  }
  if (!failures)
    throw InadmissibleError(std::move(failures));

  for (auto it = exponent.begin(); it != exponent.end();) {
    if (it->second.max_abs() == 0.0)
      it = exponent.erase(it);
    else
      ++it;
  }

  MatrixPoly d(degree + 1, ComplexMatrix::zero(n, n));
  d[0] = ComplexMatrix::identity(n);
  for (std::size_t m = 1; m <= std::min(order_n, degree); ++m)
    d[m] = s.orders[m - 1].evaluate(lambda);

  const MatrixPoly inverse_factor = poly_exp(minus_generator, degree);
  const MatrixPoly regular = poly_mul(inverse_factor, d, degree);

  SeriesRegularization out{
      DeviationFactor(kind, n, std::move(exponent), opt.reference_scale),
      {},
      lambda,
      s.e};
  out.regular.assign(regular.begin() + 1, regular.end());
  return out;
}

bool class_A(const DeviationFactor &f) {
  for (const auto &[b, h] : f.exponent()) {
    if (b.power.num > 0 && h.max_abs() > 0.0)
      return false;
  }
  return true;
}

ModelSeriesValue model_series(double phi, std::span<const Complex> psi,
                              double e, double lambda, int order) {
  require_positive_lambda(lambda, "model_series");
  if (psi.empty() || psi[0] != Complex(1.0))
    throw DomainError("model_series: psi_0 must equal 1");
  if (order < 0 || std::size_t(order) + 1 > psi.size())
    throw DomainError("model_series: order exceeds the supplied psi terms");

  const Complex x = I * phi * std::log(lambda);
  Complex raw = 0.0;
  double em = 1.0;
  for (int m = 0; m <= order; ++m) {
    Complex a = 0.0;
    Complex xk = 1.0;
    double kfact = 1.0;
    for (int k = 0; k <= m; ++k) {
      if (k > 0) {
        xk *= x;
        kfact *= double(k);
      }
      a += psi[std::size_t(m - k)] * xk / kfact;
    }
    raw += em * a;
    em *= e;
  }
  const Complex regular = std::exp(-I * e * phi * std::log(lambda)) * raw;
  return {raw, regular};
}

} // namespace divreg
