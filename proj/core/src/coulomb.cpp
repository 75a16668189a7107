#include "divreg/coulomb.hpp"

#include "divreg/errors.hpp"
#include "divreg/fitter.hpp"
#include "divreg/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace divreg {

namespace {

constexpr double kPoleTolerance = 1e-10;

SegmentOptions kernel_segment_options() {
  SegmentOptions opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  return opt;
}

void require_positive(double v, const char *what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite");
}

// int_{-1}^{1} P_l(x) / (a - b x) dx for a > b >= 0.
double legendre_over_linear(int l, double a, double b) {
  if (l == 0) {
    if (b == 0.0)
      return 2.0 / a;
    return std::log((a + b) / (a - b)) / b;
  }
  const auto r = segment_integrate(
      [&](double x) { return Complex(legendre_p(l, x) / (a - b * x), 0.0); },
      -1.0, 1.0, kernel_segment_options());
  return r.value.real();
}

} // namespace

void YukawaMeasure::validate(double floor) const {
  if (beta.size() != weight.size())
    throw DomainError("YukawaMeasure: beta and weight sizes differ");
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (!std::isfinite(beta[j]) || !(beta[j] >= floor) || floor <= 0.0)
      throw DomainError("YukawaMeasure: support point " + std::to_string(j) +
                        " must be >= a positive floor");
    if (!std::isfinite(weight[j]))
      throw DomainError("YukawaMeasure: weight " + std::to_string(j) +
                        " is not finite");
  }
}

void CoulombPotentialSpec::validate() const {
  if (l < 0)
    throw DomainError("CoulombPotentialSpec: l must be >= 0");
  if (!std::isfinite(z) || !std::isfinite(e))
    throw DomainError("CoulombPotentialSpec: z and e must be finite");
  measure.validate();
}

double kernel_R(const CoulombPotentialSpec &spec, double k, double p) {
  spec.validate();
  require_positive(k, "kernel_R: k");
  require_positive(p, "kernel_R: p");
  double value = 0.0;
  if (spec.z != 0.0) {
    if (std::abs(k - p) < kPoleTolerance * std::max(k, p)) {
      std::ostringstream os;
      os << "kernel_R: logarithmic pole on the diagonal k = p = " << k;
      throw DomainError(os.str());
    }
    // (k^2 + p^2) / (2kp) - 1 = (k - p)^2 / (2kp) keeps the argument exact.
    const double x = 1.0 + (k - p) * (k - p) / (2.0 * k * p);
    value -= 2.0 * spec.z / (std::numbers::pi * k * p) * legendre_q(spec.l, x);
  }
  for (std::size_t j = 0; j < spec.measure.size(); ++j) {
    const double b2 = spec.measure.beta[j] * spec.measure.beta[j];
    value += 2.0 / std::numbers::pi * spec.measure.weight[j] *
             legendre_over_linear(spec.l, k * k + p * p + b2, 2.0 * p * k);
  }
  return value;
}

void MomentumGrid::validate() const {
  if (nodes.size() != weights.size())
    throw DomainError("MomentumGrid: node and weight counts differ");
  if (nodes.empty())
    throw DomainError("MomentumGrid: empty grid");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0.0) || !std::isfinite(nodes[i]))
      throw DomainError("MomentumGrid: nodes must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw DomainError("MomentumGrid: nodes must be strictly increasing");
    if (!std::isfinite(weights[i]))
      throw DomainError("MomentumGrid: weights must be finite");
  }
}

ComplexMatrix momentum_operator_matrix(const CoulombPotentialSpec &spec,
                                       const MomentumGrid &grid) {
  spec.validate();
  grid.validate();
  const std::size_t n = grid.nodes.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = grid.nodes[i];
    m(i, i) = k * k;
    if (spec.e == 0.0)
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = grid.nodes[j];
      if (spec.z != 0.0 &&
          std::abs(k - p) < kPoleTolerance * std::max(k, p))
        continue;
      m(i, j) += spec.e * grid.weights[j] * p * k * kernel_R(spec, k, p);
    }
  }
  return m;
}

std::vector<Complex> apply_momentum_operator(const CoulombPotentialSpec &spec,
                                             std::span<const Complex> f,
                                             const MomentumGrid &grid) {
  if (f.size() != grid.nodes.size())
    throw DomainError("apply_momentum_operator: function has " +
                      std::to_string(f.size()) + " samples, grid has " +
                      std::to_string(grid.nodes.size()));
  const auto m = momentum_operator_matrix(spec, grid);
  return m.apply(f);
}

double w0_phase(double t, double k, double z) {
  if (t == 0.0 || !std::isfinite(t))
    throw DomainError("w0: t must be nonzero and finite");
  require_positive(k, "w0: k");
  const double sign = t > 0.0 ? 1.0 : -1.0;
  return z * sign / k * std::log(2.0 * k * std::abs(t));
}

Complex w0(double t, double k, double z) {
  return std::polar(1.0, w0_phase(t, k, z));
}

Complex s1(const CoulombPotentialSpec &spec, double k) {
  spec.validate();
  require_positive(k, "s1: k");
  const Complex i(0.0, 1.0);
  Complex value = -2.0 * i * spec.z * digamma(spec.l + 1.0) / k;
  for (std::size_t j = 0; j < spec.measure.size(); ++j) {
    const double b2 = spec.measure.beta[j] * spec.measure.beta[j];
    // k / (2k^2 (1 - x) + beta^2) = k / (a - b x)
    const double integral =
        k * legendre_over_linear(spec.l, 2.0 * k * k + b2, 2.0 * k * k);
    value -= 2.0 * i / k * spec.measure.weight[j] * integral;
  }
  return value;
}

AsymptoticExpansion coulomb_divergence_fit(const SampledIntegral &samples) {
  const std::vector<BasisFunction> basis{basis::log(), basis::constant()};
  const auto result = fit(samples, basis);
  double largest = 0.0;
  for (const auto &c : result.coefficients)
    largest = std::max(largest, std::abs(c.value));
  AsymptoticExpansion x(RegulatorKind::infrared_time_product, 1);
  for (const auto &c : result.coefficients) {
    if (largest > 0.0 &&
        std::abs(c.value) >= kDefaultSignatureThreshold * largest)
      x.add(c.basis, c.value);
  }
  if (x.empty())
    x.add(basis::constant(), Complex{});
  return x;
}

AsymptoticExpansion
coulomb_divergence_check(double z, double k, std::span<const double> t_values,
                         std::span<const double> tau_values) {
  require_positive(k, "coulomb_divergence_check: k");
  if (t_values.size() != tau_values.size())
    throw DomainError("coulomb_divergence_check: t and tau counts differ");
  SampledIntegral samples;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    const double tau = tau_values[i];
    if (!(t > 0.0) || !(tau < 0.0))
      throw DomainError(
          "coulomb_divergence_check: need t > 0 and tau < 0 at every pair");
    if (i > 0 && (!(t > t_values[i - 1]) || !(tau < tau_values[i - 1])))
      throw DomainError("coulomb_divergence_check: t must increase and tau "
                        "must decrease");
    const Complex a1(0.0, w0_phase(t, k, z) - w0_phase(tau, k, z));
    samples.rungs.push_back({std::abs(t * tau), a1, 0.0, true});
  }
  return coulomb_divergence_fit(samples);
}

} // namespace divreg
