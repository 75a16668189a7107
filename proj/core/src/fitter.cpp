#include "divreg/fitter.hpp"

#include "divreg/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace divreg {

namespace {

using Real = long double;
using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

} // namespace

Complex FitResult::coefficient(const BasisFunction &b) const {
  for (const auto &c : coefficients) {
    if (c.basis == b)
      return c.value;
  }
  throw DomainError("FitResult: basis " + b.label() + " was not fitted");
}

AsymptoticExpansion FitResult::to_expansion(RegulatorKind kind) const {
  AsymptoticExpansion x(kind, 1);
  for (const auto &c : coefficients)
    x.add(c.basis, c.value);
  return x;
}

FitResult fit(const SampledIntegral &samples,
              std::span<const BasisFunction> basis, const FitOptions &opt) {
  samples.validate();
  const std::size_t n = samples.size();
  const std::size_t p = basis.size();
  if (p == 0)
    throw DomainError("fit: empty basis");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (basis[i] == basis[j])
        throw DomainError("fit: duplicate basis function " + basis[i].label());
  if (n < p + 2) {
    throw DomainError("fit: need at least " + std::to_string(p + 2) +
                      " samples for " + std::to_string(p) +
                      " basis functions, got " + std::to_string(n));
  }
  const double span = samples.rungs.back().lambda / samples.rungs.front().lambda;
  if (span < opt.min_span) {
    std::ostringstream os;
    os << "fit: regulator values span a factor " << span << ", need "
       << opt.min_span;
    throw DomainError(os.str());
  }

  // Rungs with error estimates are weighted by 1 / error. Without them the
  // samples are taken to carry relative rounding error, so 1 / |value|;
  // otherwise the largest rungs swamp the small basis functions.
  std::vector<Real> weight(n, 1.0L);
  if (opt.use_error_weights) {
    const bool have_errors =
        std::all_of(samples.rungs.begin(), samples.rungs.end(),
                    [](const LadderRung &r) { return r.error > 0.0; });
    double scale = 0.0;
    for (const auto &r : samples.rungs)
      scale = std::max(scale, std::abs(r.value));
    const double floor = 1e-14 * scale;
    for (std::size_t i = 0; i < n; ++i) {
      const auto &r = samples.rungs[i];
      const double sigma = have_errors ? r.error : std::abs(r.value);
      weight[i] = floor > 0.0 || sigma > 0.0 ? 1.0L / Real(std::max(sigma, floor)) : 1.0L;
    }
  }

  MatrixR design(n, p);
  MatrixR rhs(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &r = samples.rungs[i];
    for (std::size_t j = 0; j < p; ++j)
      design(Eigen::Index(i), Eigen::Index(j)) =
          weight[i] * Real(basis[j].value(r.lambda));
    rhs(Eigen::Index(i), 0) = weight[i] * Real(r.value.real());
    rhs(Eigen::Index(i), 1) = weight[i] * Real(r.value.imag());
  }

  // Equilibrate columns so the condition number reflects collinearity rather
  // than the scale difference between L^2 and 1/L^2.
  VectorR column_scale(p);
  for (std::size_t j = 0; j < p; ++j) {
    const Real s = design.col(Eigen::Index(j)).norm();
    if (s == 0.0L)
      throw RankDeficientError("fit: basis " + basis[j].label() +
                                   " vanishes on every rung",
                               basis[j].label(), basis[j].label(),
                               std::numeric_limits<double>::infinity());
    column_scale(Eigen::Index(j)) = s;
    design.col(Eigen::Index(j)) /= s;
  }

  Eigen::JacobiSVD<MatrixR> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorR sv = svd.singularValues();
  const Real smax = sv(0);
  const Real smin = sv(sv.size() - 1);
  const double condition =
      smin > 0.0L ? double(smax / smin) : std::numeric_limits<double>::infinity();
  if (!(condition <= opt.max_condition)) {
    // The right singular vector of the smallest singular value shows which
    // columns combine to (nearly) zero.
    const VectorR v = svd.matrixV().col(sv.size() - 1).cwiseAbs();
    std::vector<std::size_t> idx(p);
    for (std::size_t j = 0; j < p; ++j)
      idx[j] = j;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return v(Eigen::Index(a)) > v(Eigen::Index(b));
    });
    const auto &first = basis[idx[0]];
    const auto &second = p > 1 ? basis[idx[1]] : basis[idx[0]];
    std::ostringstream os;
    os << "fit: design is rank deficient (condition " << condition
       << "); collinear basis pair " << first.label() << " / "
       << second.label();
    throw RankDeficientError(os.str(), first.label(), second.label(),
                             condition);
  }

  const MatrixR solution = svd.solve(rhs);

  FitResult result;
  result.condition = condition;

  Real residual_sq = 0.0L;
  Real weighted_sq = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    Real re = 0.0L, im = 0.0L;
    for (std::size_t j = 0; j < p; ++j) {
      const Real c = Real(basis[j].value(samples.rungs[i].lambda)) /
                     column_scale(Eigen::Index(j));
      re += c * solution(Eigen::Index(j), 0);
      im += c * solution(Eigen::Index(j), 1);
    }
    const Real dr = re - Real(samples.rungs[i].value.real());
    const Real di = im - Real(samples.rungs[i].value.imag());
    residual_sq += dr * dr + di * di;
    weighted_sq += weight[i] * weight[i] * (dr * dr + di * di);
  }
  result.residual_norm = double(std::sqrt(residual_sq));

  // cov = s^2 (X^T X)^{-1} = s^2 V S^{-2} V^T in equilibrated coordinates.
  const Real dof = Real(n - p);
  const Real s2 = weighted_sq / (2.0L * dof);
  const MatrixR &vmat = svd.matrixV();
  for (std::size_t j = 0; j < p; ++j) {
    Real var = 0.0L;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      const Real v = vmat(Eigen::Index(j), k);
      var += v * v / (sv(k) * sv(k));
    }
    var *= s2;
    const Real scale = column_scale(Eigen::Index(j));
    const Complex value(double(solution(Eigen::Index(j), 0) / scale),
                        double(solution(Eigen::Index(j), 1) / scale));
    result.coefficients.push_back(
        {basis[j], value, double(std::sqrt(var) / scale)});
  }
  return result;
}

AsymptoticExpansion detect_signature(const SampledIntegral &samples,
                                     double threshold, RegulatorKind kind,
                                     const FitOptions &opt) {
  if (!(threshold > 0.0))
    throw DomainError("detect_signature: threshold must be positive");
  const auto basis = basis::default_set();
  const auto result = fit(samples, basis, opt);
  double largest = 0.0;
  for (const auto &c : result.coefficients)
    largest = std::max(largest, std::abs(c.value));
  AsymptoticExpansion x(kind, 1);
  for (const auto &c : result.coefficients) {
    if (largest > 0.0 && std::abs(c.value) >= threshold * largest)
      x.add(c.basis, c.value);
  }
  if (x.empty())
    x.add(basis::constant(), Complex{});
  return x;
}

} // namespace divreg
