#pragma once

#include "divreg/complex_matrix.hpp"
#include "divreg/dirac.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace divreg {

struct QuadratureResult {
  Complex value;
  //! Estimated absolute error.
  double error = 0.0;
  //! False when the evaluation budget ran out before the tolerance was met;
  //! value and error still hold the best estimate.
  bool converged = true;
  std::size_t evaluations = 0;
};

using RealIntegrand = std::function<Complex(double)>;
using BallIntegrand = std::function<Complex(const FourVector &)>;

struct SegmentOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  std::size_t max_evaluations = 1'000'000;
  //! Integrable singularities at either endpoint: the interval is remapped
  //! with x = a + (b - a)(3t^2 - 2t^3), whose Jacobian vanishes at both ends.
  bool endpoint_singular = false;
};

//! Adaptive 15-point Gauss-Kronrod integration of f over [a, b].
//!
//! Only interior nodes are sampled. A non-finite sample throws
//! NumericalError naming the abscissa. Throws DomainError unless a < b.
QuadratureResult segment_integrate(const RealIntegrand &f, double a, double b,
                                   const SegmentOptions &opt = {});

struct Ball4Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  //! Integrand evaluations, angular nodes included.
  std::size_t max_evaluations = 100'000'000;
  //! When set, the integrand is declared to depend on k only through k^2
  //! and k . axis; the three angles then collapse to the polar angle
  //! against the axis and the S^2 factor 4 pi is applied analytically.
  std::optional<FourVector> axis;
  //! Node counts of the product rule on S^3 in the general case:
  //! polar angle chi (Chebyshev, second kind), cos(theta) (Gauss-Legendre),
  //! azimuth phi (trapezoid). Halved rules give the angular error estimate.
  int chi_nodes = 15;
  int theta_nodes = 16;
  int phi_nodes = 32;
};

//! Integral of f over the 4-ball |k| <= radius, in hyperspherical
//! coordinates with adaptive radial subdivision.
QuadratureResult ball4_integrate(const BallIntegrand &f, double radius,
                                 const Ball4Options &opt = {});

//! One rung of a cutoff ladder.
struct LadderRung {
  double lambda = 0.0;
  Complex value;
  double error = 0.0;
  bool converged = true;
};

//! Integral values at increasing regulator values.
struct SampledIntegral {
  std::vector<LadderRung> rungs;

  std::size_t size() const noexcept { return rungs.size(); }
  bool empty() const noexcept { return rungs.empty(); }
  bool all_converged() const noexcept;
  //! Throws DomainError unless lambdas are strictly increasing and positive
  //! and errors are non-negative.
  void validate() const;

  std::vector<double> lambdas() const;
  std::vector<Complex> values() const;
};

//! ball4_integrate at every radius in `radii` with shared options.
SampledIntegral cutoff_ladder(const BallIntegrand &f,
                              std::span<const double> radii,
                              const Ball4Options &opt = {});

//! `count` points geometrically spaced over [lo, hi], both ends included.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

//! n-point Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

} // namespace divreg
