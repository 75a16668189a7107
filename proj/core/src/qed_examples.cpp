#include "divreg/qed_examples.hpp"

#include "divreg/errors.hpp"
#include "divreg/fitter.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace divreg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
const double kTwoPi4 = std::pow(2.0 * kPi, 4);
const Complex kI(0.0, 1.0);

double delta_of(const FourVector &p, double l) {
  const double delta = l - p.norm_sq();
  if (!(delta > 0.0))
    throw DomainError("standard integral: l - p^2 must be positive");
  return delta;
}

void require_cutoff(double L) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw DomainError("cutoff L must be positive and finite");
}

void require_positive(double v, const std::string &what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(what + " must be positive and finite");
}

SegmentOptions tight_segment() {
  SegmentOptions opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-15;
  return opt;
}

// Validates the admissibility of one divergent part and, when it passes,
// builds its factor.
std::optional<DeviationFactor> factor_for(const AsymptoticExpansion &x,
                                          double e, double reference,
                                          AdmissibilityReport &report) {
  const auto divergent = split_divergent(x).divergent;
  auto check = check_admissible(divergent);
  if (!check.admissible()) {
    report.violations.insert(report.violations.end(),
                             check.violations.begin(),
                             check.violations.end());
    return std::nullopt;
  }
  return deviation_factor(divergent, 2, e, reference);
}

} // namespace

Complex standard_integral_log(const FourVector &p, double l, double L) {
  const double delta = delta_of(p, l);
  require_cutoff(L);
  return kI * kPi2 * (std::log(L * L / delta) - 1.0);
}

Complex standard_integral_log_exact(double delta, double L) {
  require_positive(delta, "standard_integral_log_exact: delta");
  require_cutoff(L);
  const double s = L * L + delta;
  return kI * kPi2 * (std::log1p(L * L / delta) + delta / s - 1.0);
}

Complex standard_integral_vector(const FourVector &p, double l, double L,
                                 int nu) {
  const double delta = delta_of(p, l);
  require_cutoff(L);
  return kI * kPi2 * p.component(nu) * (std::log(L * L / delta) - 1.5);
}

Complex standard_integral_difference(const FourVector &p, int nu) {
  return -0.5 * kPi2 * p.component(nu);
}

SampledIntegral shifted_denominator_ladder(const FourVector &shift,
                                           double delta,
                                           std::span<const double> radii,
                                           const Ball4Options &opt) {
  require_positive(delta, "shifted_denominator_ladder: delta");
  Ball4Options o = opt;
  // The integrand depends on k^2 and k . shift only.
  o.axis = shift.norm_sq() > 0.0 ? shift : FourVector{0.0, 0.0, 0.0, 1.0};
  const double shift_sq = shift.norm_sq();
  auto f = [&](const FourVector &k) {
    const double d = k.norm_sq() - 2.0 * dot(k, shift) + shift_sq + delta;
    return Complex(1.0 / (d * d), 0.0);
  };
  return cutoff_ladder(f, radii, o);
}

double two_ln_b(double p_sq, double m) {
  require_positive(p_sq, "two_ln_b: p^2");
  require_positive(m, "two_ln_b: m");
  const double m_sq = m * m;
  return (p_sq + m_sq) / p_sq * std::log(m_sq + p_sq) -
         2.0 * m_sq / p_sq * std::log(m) - 2.0;
}

double two_ln_b_quadrature(double p_sq, double m) {
  require_positive(p_sq, "two_ln_b_quadrature: p^2");
  require_positive(m, "two_ln_b_quadrature: m");
  const double l1 = p_sq + m * m;
  SegmentOptions opt = tight_segment();
  opt.endpoint_singular = true;
  // ln((p^2 + m^2) u - p^2 u^2) = ln u + ln(p^2 + m^2 - p^2 u)
  const auto r = segment_integrate(
      [&](double u) {
        return Complex(std::log(u) + std::log(l1 - p_sq * u), 0.0);
      },
      0.0, 1.0, opt);
  return r.value.real();
}

double photon_sigma(double ratio) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio))
    throw DomainError("photon_sigma: p^2 / m^2 must be non-negative");
  if (ratio == 0.0)
    return 0.0;
  const auto r = segment_integrate(
      [&](double x) {
        const double w = x * (1.0 - x);
        return Complex(w * std::log1p(ratio * w), 0.0);
      },
      0.0, 1.0, tight_segment());
  return r.value.real();
}

CrossCheck make_cross_check(std::string name, double computed,
                            double reference, double tolerance) {
  CrossCheck c;
  c.name = std::move(name);
  c.computed = computed;
  c.reference = reference;
  const double diff = std::abs(computed - reference);
  c.deviation = reference != 0.0 ? diff / std::abs(reference) : diff;
  c.tolerance = tolerance;
  c.passed = c.deviation <= tolerance;
  return c;
}

bool ExampleReport::cross_checks_passed() const noexcept {
  for (const auto &c : cross_checks)
    if (!c.passed)
      return false;
  return true;
}

ExampleReport electron_self_energy(const FourVector &p, double m, double e,
                                   const ElectronOptions &opt) {
  require_positive(m, "electron_self_energy: m");
  const double p_sq = p.norm_sq();
  if (!(p_sq > 0.0))
    throw DomainError("electron_self_energy: p^2 must be positive");
  if (!std::isfinite(e))
    throw DomainError("electron_self_energy: e must be finite");

  ExampleReport r;
  r.id = "5.1";
  r.e = e;
  r.parameters = {{"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3}, {"p4", p.p4},
                  {"p_sq", p_sq}, {"m", m}};

  const auto id4 = ComplexMatrix::identity(4);
  const auto contraction = dirac::gamma_contraction(dirac::slash(p));
  const double lnb2 = two_ln_b(p_sq, m);

  AsymptoticExpansion x(RegulatorKind::ultraviolet_cutoff, 4);
  x.add(basis::log(), (kI * 2.0 * m * kPi2 / kTwoPi4) * id4);
  x.add(basis::constant(),
        (1.0 / kTwoPi4) * ((-kI * m * kPi2 * (1.0 + lnb2)) * id4 +
                           Complex(-0.5 * kPi2) * contraction));
  r.expansion = x;

  // Grouping the -1 and -2 ln B constants with ln L puts them into the
  // reference scale: ln A = (1 + 2 ln B) / 2.
  const double reference = std::exp(0.5 * (1.0 + lnb2));
  r.parameters["reference_scale"] = reference;
  r.factor = factor_for(x, e, reference, r.admissibility);

  r.regular = (e * e / (16.0 * kPi2)) *
              ((kI * m) * id4 + Complex(0.5) * contraction);
  r.regular_note = "closed form for the first regular approximation";

  r.cross_checks.push_back(make_cross_check(
      "two_ln_b closed form vs quadrature", two_ln_b_quadrature(p_sq, m),
      lnb2, 1e-10));
  if (r.factor) {
    const double phi = r.factor->exponent().at(basis::log())(0, 0).real();
    r.cross_checks.push_back(make_cross_check(
        "phase exponent phi = m e^2 / (8 pi^2)", phi, m * e * e / (8.0 * kPi2),
        1e-13));
  }

  if (opt.quadrature_cross_check) {
    const auto radii =
        geometric_grid(opt.ladder_min, opt.ladder_max, opt.ladder_points);
    const double delta = m * m;
    const auto ladder = shifted_denominator_ladder(p, delta, radii);
    const std::vector<BasisFunction> basis{basis::log(), basis::constant(),
                                           basis::inverse(2)};
    const auto fitted = fit(ladder, basis);
    r.cross_checks.push_back(make_cross_check(
        "u = 1 block: fitted ln L coefficient vs 2 pi^2",
        fitted.coefficient(basis::log()).real(), 2.0 * kPi2, 1e-2));
    r.cross_checks.push_back(make_cross_check(
        "u = 1 block: fitted constant vs -pi^2 (1 + ln m^2)",
        fitted.coefficient(basis::constant()).real(),
        -kPi2 * (1.0 + std::log(delta)), 3e-2));
  }
  return r;
}

ExampleReport photon_self_energy(double p_sq, double m, double e) {
  require_positive(m, "photon_self_energy: m");
  if (!(p_sq >= 0.0) || !std::isfinite(p_sq))
    throw DomainError("photon_self_energy: p^2 must be non-negative");
  if (!std::isfinite(e))
    throw DomainError("photon_self_energy: e must be finite");

  ExampleReport r;
  r.id = "5.3";
  r.e = e;
  r.parameters = {{"p_sq", p_sq}, {"m", m}, {"reference_scale", m}};

  const double ratio = p_sq / (m * m);
  const double sigma = photon_sigma(ratio);
  r.parameters["sigma"] = sigma;
  const double c = 8.0 * kPi2 / kTwoPi4;

  AsymptoticExpansion x(RegulatorKind::ultraviolet_cutoff, 1);
  x.add(basis::log(), -kI * c * p_sq / 3.0);
  x.add(basis::constant(),
        kI * c * p_sq * (std::log(m) / 3.0 + 5.0 / 36.0 + sigma));
  r.expansion = x.pruned(0.0);

  r.factor = factor_for(r.expansion, e, m, r.admissibility);
  r.regular = ComplexMatrix(Complex(c * e * e * p_sq / 3.0 * sigma));
  r.regular_note = "closed form for the first regular approximation";

  if (ratio > 0.0 && ratio <= 0.01) {
    r.cross_checks.push_back(make_cross_check(
        "sigma vs small-ratio limit r / 30", sigma, ratio / 30.0, 2e-2));
  }
  if (r.factor && p_sq > 0.0) {
    const double phi = r.factor->exponent().at(basis::log())(0, 0).real();
    r.cross_checks.push_back(make_cross_check(
        "phase exponent phi = -8 pi^2 e^2 p^2 / (3 (2pi)^4)", phi,
        -c * e * e * p_sq / 3.0, 1e-13));
  }
  return r;
}

ExampleReport vertex_part(double m, double e, double lambda, double L,
                          int mu) {
  require_positive(m, "vertex_part: m");
  require_positive(lambda, "vertex_part: photon mass lambda");
  if (!(lambda <= m))
    throw DomainError("vertex_part: photon mass must not exceed m");
  require_cutoff(L);
  if (!(L > m))
    throw DomainError("vertex_part: cutoff L must exceed m");
  if (mu < 1 || mu > 4)
    throw DomainError("vertex_part: mu must be in 1..4");
  if (!std::isfinite(e))
    throw DomainError("vertex_part: e must be finite");

  ExampleReport r;
  r.id = "5.6";
  r.e = e;
  r.parameters = {{"m", m},   {"lambda", lambda},       {"L", L},
                  {"mu", mu}, {"reference_scale", m}};

  const auto g = dirac::gamma(mu);
  AsymptoticExpansion uv(RegulatorKind::ultraviolet_cutoff, 4);
  uv.add(basis::log(), Complex(1.0 / (8.0 * kPi2)) * g);
  uv.add(basis::constant(), Complex(-std::log(m) / (8.0 * kPi2)) * g);
  r.expansion = uv;

  // Regulator m / lambda.
  AsymptoticExpansion ir(RegulatorKind::infrared_inverse_photon_mass, 4);
  ir.add(basis::log(), Complex(-1.0 / (4.0 * kPi2)) * g);
  r.infrared_expansion = ir;

  r.factor = factor_for(uv, e, m, r.admissibility);
  r.infrared_factor = factor_for(ir, e, 1.0, r.admissibility);
  if (!r.admissible()) {
    r.factor.reset();
    r.infrared_factor.reset();
    std::ostringstream os;
    os << "gamma_" << mu
       << " is Hermitian, so the divergent coefficient is not skew-Hermitian";
    r.notes.push_back(os.str());
  }

  r.regular = ComplexMatrix::zero(4, 4);
  r.regular_note = "placeholder: no closed form is available for this "
                   "regular part; zero is reported";
  return r;
}

FeynmanCheck feynman_combine(double a, double b) {
  require_positive(a, "feynman_combine: a");
  require_positive(b, "feynman_combine: b");
  const auto q = segment_integrate(
      [&](double u) {
        const double d = a * u + b * (1.0 - u);
        return Complex(1.0 / (d * d), 0.0);
      },
      0.0, 1.0, tight_segment());
  FeynmanCheck c;
  c.quadrature = q.value.real();
  c.exact = 1.0 / (a * b);
  c.relative_deviation = std::abs(c.quadrature - c.exact) / c.exact;
  return c;
}

} // namespace divreg
