#include "divreg/dirac.hpp"

#include "divreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace divreg {

double FourVector::component(int mu) const {
  switch (mu) {
  case 1:
    return p1;
  case 2:
    return p2;
  case 3:
    return p3;
  case 4:
    return p4;
  default:
    throw DomainError("FourVector::component: index " + std::to_string(mu) +
                      " not in 1..4");
  }
}

namespace dirac {

namespace {

constexpr Complex I{0.0, 1.0};

void require_index(int k, int lo, int hi, const char *what) {
  if (k < lo || k > hi) {
    throw DomainError(std::string(what) + ": index " + std::to_string(k) +
                      " not in " + std::to_string(lo) + ".." +
                      std::to_string(hi));
  }
}

// Scale v to unit length and rotate its phase so the last nonzero entry is
// real and positive.
std::array<Complex, 4> normalized(std::array<Complex, 4> v) {
  double n = 0.0;
  for (const auto &z : v)
    n += std::norm(z);
  n = std::sqrt(n);
  Complex phase = 1.0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (std::abs(*it) > 0.0) {
      phase = std::conj(*it) / std::abs(*it);
      break;
    }
  }
  for (auto &z : v)
    z *= phase / n;
  return v;
}

} // namespace

ComplexMatrix pauli(int k) {
  require_index(k, 1, 3, "pauli");
  switch (k) {
  case 1:
    return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
  case 2:
    return ComplexMatrix(2, 2, {0.0, -I, I, 0.0});
  default:
    return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
  }
}

ComplexMatrix alpha(int k) {
  require_index(k, 1, 3, "alpha");
  const auto s = pauli(k);
  const auto z = ComplexMatrix::zero(2, 2);
  return ComplexMatrix::from_blocks(z, s, s, z);
}

ComplexMatrix beta() {
  const auto id = ComplexMatrix::identity(2);
  const auto z = ComplexMatrix::zero(2, 2);
  return ComplexMatrix::from_blocks(id, z, z, -id);
}

ComplexMatrix gamma(int mu) {
  require_index(mu, 1, 4, "gamma");
  if (mu == 4)
    return beta();
  return beta() * alpha(mu);
}

ComplexMatrix slash(const FourVector &p) {
  ComplexMatrix s = ComplexMatrix::zero(4, 4);
  for (int mu = 1; mu <= 4; ++mu)
    s += p.component(mu) * gamma(mu);
  return s;
}

ComplexMatrix gamma_contraction(const ComplexMatrix &x) {
  if (x.rows() != 4 || x.cols() != 4)
    throw DomainError("gamma_contraction: expected a 4x4 matrix");
  ComplexMatrix s = ComplexMatrix::zero(4, 4);
  for (int mu = 1; mu <= 4; ++mu) {
    const auto g = gamma(mu);
    s += g * x * g;
  }
  return s;
}

ComplexMatrix hamiltonian(const Momentum3 &q, double m) {
  const Complex minus{q.q1, -q.q2};
  const Complex plus{q.q1, q.q2};
  // clang-format off
  return ComplexMatrix(4, 4, {
      m,    0.0,   q.q3,  minus,
      0.0,  m,     plus,  -q.q3,
      q.q3, minus, -m,    0.0,
      plus, -q.q3, 0.0,   -m});
  // clang-format on
}

ComplexMatrix hamiltonian8(const Momentum3 &q, double m) {
  const auto h = hamiltonian(q, m);
  return ComplexMatrix::block_diagonal(h, h);
}

EigenSystem eigensystem(const Momentum3 &q, double m) {
  if (m < 0.0)
    throw DomainError("eigensystem: mass must be non-negative");

  const double q2 = q.norm_sq();
  const double energy = std::sqrt(m * m + q2);

  EigenSystem es;
  es.eigenvalues = {-energy, -energy, energy, energy};

  std::array<std::array<Complex, 4>, 4> g{};
  if (std::sqrt(q2) < 1e-14 * std::max(m, 1.0)) {
    if (m == 0.0) {
      es.eigenvalues = {0.0, 0.0, 0.0, 0.0};
      es.degenerate = true;
    }
    g[0] = {0.0, 0.0, 0.0, 1.0};
    g[1] = {0.0, 0.0, 1.0, 0.0};
    g[2] = {1.0, 0.0, 0.0, 0.0};
    g[3] = {0.0, 1.0, 0.0, 0.0};
  } else {
    // Negative energy: divide by m + E > 0 as written.
    const double d = m + energy;
    g[0] = {Complex(-q.q1, q.q2) / d, q.q3 / d, 0.0, 1.0};
    g[1] = {-q.q3 / d, Complex(-q.q1, -q.q2) / d, 1.0, 0.0};
    // Positive energy: the explicit vectors divide by m - E, which cancels
    // catastrophically for small |q|. Multiply through by m - E and use
    // E - m = |q|^2 / (m + E); normalisation removes the scale.
    const double e_minus_m = q2 / d;
    g[2] = {Complex(q.q1, -q.q2), -q.q3, 0.0, e_minus_m};
    g[3] = {q.q3, Complex(q.q1, q.q2), e_minus_m, 0.0};
  }

  es.eigenvectors = ComplexMatrix(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto v = normalized(g[k]);
    for (std::size_t r = 0; r < 4; ++r)
      es.eigenvectors(r, k) = v[r];
  }
  es.m1 = es.eigenvectors.column_block(0, 2);
  es.m2 = es.eigenvectors.column_block(2, 2);
  return es;
}

ComplexMatrix commuting_scattering_matrix(const Momentum3 &q, double m,
                                          const ComplexMatrix &block1,
                                          const ComplexMatrix &block2,
                                          double tol) {
  for (const auto *b : {&block1, &block2}) {
    if (b->rows() != 2 || b->cols() != 2)
      throw DomainError("commuting_scattering_matrix: blocks must be 2x2");
    if (!b->is_unitary(tol))
      throw DomainError("commuting_scattering_matrix: block is not unitary");
  }
  const auto es = eigensystem(q, m);
  const auto basis = ComplexMatrix::hstack(es.m1, es.m2);
  return basis * ComplexMatrix::block_diagonal(block1, block2) *
         basis.adjoint();
}

} // namespace dirac
} // namespace divreg
