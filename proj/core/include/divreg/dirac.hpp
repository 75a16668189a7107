#pragma once

#include "divreg/complex_matrix.hpp"

#include <array>

namespace divreg {

//! Spatial momentum q = (q1, q2, q3).
struct Momentum3 {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  double norm_sq() const noexcept { return q1 * q1 + q2 * q2 + q3 * q3; }
};

//! Euclidean four-vector p = (p1, p2, p3, p4), p^2 = sum of squares.
struct FourVector {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;

  double norm_sq() const noexcept {
    return p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4;
  }
  //! 1-based component access, mu in 1..4.
  double component(int mu) const;

  friend FourVector operator+(const FourVector &a, const FourVector &b) {
    return {a.p1 + b.p1, a.p2 + b.p2, a.p3 + b.p3, a.p4 + b.p4};
  }
  friend FourVector operator-(const FourVector &a, const FourVector &b) {
    return {a.p1 - b.p1, a.p2 - b.p2, a.p3 - b.p3, a.p4 - b.p4};
  }
  friend FourVector operator*(double s, const FourVector &a) {
    return {s * a.p1, s * a.p2, s * a.p3, s * a.p4};
  }
};

inline double dot(const FourVector &a, const FourVector &b) noexcept {
  return a.p1 * b.p1 + a.p2 * b.p2 + a.p3 * b.p3 + a.p4 * b.p4;
}

namespace dirac {

//! Pauli matrix sigma_k, k in 1..3.
ComplexMatrix pauli(int k);
//! alpha_k = [[0, sigma_k], [sigma_k, 0]], k in 1..3.
ComplexMatrix alpha(int k);
//! beta = diag(I2, -I2).
ComplexMatrix beta();
//! gamma_j = beta alpha_j (j = 1..3), gamma_4 = beta.
//!
//! With this convention gamma_j^dagger = -gamma_j for j <= 3 and gamma_4 is
//! Hermitian; {gamma_j, gamma_k} = -2 delta_jk for spatial indices.
ComplexMatrix gamma(int mu);
//! p-slash = sum_mu p_mu gamma_mu.
ComplexMatrix slash(const FourVector &p);
//! sum_mu gamma_mu X gamma_mu, evaluated by explicit products.
ComplexMatrix gamma_contraction(const ComplexMatrix &x);

//! Free Dirac Hamiltonian H(q) in momentum space (4x4, Hermitian).
ComplexMatrix hamiltonian(const Momentum3 &q, double m);
//! diag(H(q), H(q)) (8x8).
ComplexMatrix hamiltonian8(const Momentum3 &q, double m);

struct EigenSystem {
  //! (-E, -E, +E, +E), E = sqrt(m^2 + |q|^2).
  std::array<double, 4> eigenvalues{};
  //! Columns g_1..g_4, unit length.
  ComplexMatrix eigenvectors;
  //! Orthonormal bases of the negative- and positive-energy subspaces.
  ComplexMatrix m1;
  ComplexMatrix m2;
  //! Set when m = 0 and q = 0, where H vanishes identically.
  bool degenerate = false;
};

//! Closed-form spectral decomposition of H(q).
//!
//! Eigenvectors follow the explicit (unnormalised) formulas for g_1..g_4,
//! scaled to unit length with the last nonzero component real positive.
//! At |q| < 1e-14 max(m, 1) the canonical basis is returned: g1 = e4,
//! g2 = e3 for -m and g3 = e1, g4 = e2 for +m.
EigenSystem eigensystem(const Momentum3 &q, double m);

//! S = [M1 M2] diag(block1, block2) [M1 M2]^dagger.
//!
//! Both blocks must be 2x2 unitary; the result is unitary and commutes
//! with H(q). Throws DomainError for non-unitary blocks.
ComplexMatrix commuting_scattering_matrix(const Momentum3 &q, double m,
                                          const ComplexMatrix &block1,
                                          const ComplexMatrix &block2,
                                          double tol = kDefaultMatrixTolerance);

} // namespace dirac
} // namespace divreg
