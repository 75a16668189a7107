#pragma once

#include "divreg/asymptotics.hpp"
#include "divreg/quadrature.hpp"

#include <span>
#include <vector>

namespace divreg {

struct FitCoefficient {
  BasisFunction basis;
  Complex value;
  //! Linear standard error (shared by real and imaginary parts).
  double standard_error = 0.0;
};

struct FitResult {
  //! One entry per requested basis function, in request order.
  std::vector<FitCoefficient> coefficients;
  //! Unweighted ||X c - y||_2.
  double residual_norm = 0.0;
  //! 2-norm condition number of the column-equilibrated weighted design.
  double condition = 0.0;

  //! Throws DomainError when b was not part of the fit.
  Complex coefficient(const BasisFunction &b) const;
  AsymptoticExpansion
  to_expansion(RegulatorKind kind = RegulatorKind::ultraviolet_cutoff) const;
};

struct FitOptions {
  //! Weight rungs by 1 / error when every rung carries a positive error,
  //! by 1 / |value| when any error is missing. False gives plain least squares.
  bool use_error_weights = true;
  double max_condition = 1e12;
  //! Minimum ratio lambda_max / lambda_min.
  double min_span = 100.0;
};

//! Complex linear least squares of the ladder over the given basis.
//!
//! Requires at least basis.size() + 2 rungs spanning min_span. Throws
//! RankDeficientError (naming the two most collinear basis functions) when
//! the condition estimate exceeds max_condition.
FitResult fit(const SampledIntegral &samples, std::span<const BasisFunction> basis,
              const FitOptions &opt = {});

inline constexpr double kDefaultSignatureThreshold = 1e-4;

//! Fits the default basis {L^2, L, ln^2 L, ln L, 1, 1/L, 1/L^2} and keeps
//! coefficients with magnitude >= threshold * (largest magnitude).
AsymptoticExpansion
detect_signature(const SampledIntegral &samples,
                 double threshold = kDefaultSignatureThreshold,
                 RegulatorKind kind = RegulatorKind::ultraviolet_cutoff,
                 const FitOptions &opt = {});

} // namespace divreg
