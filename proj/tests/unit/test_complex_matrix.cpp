#include "divreg/complex_matrix.hpp"
#include "divreg/errors.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace divreg;

TEST(ComplexMatrix, ConstructionAndAccess) {
  ComplexMatrix m(2, 3, {1, 2, 3, Complex(0, 1), 5, 6});
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 0), Complex(0, 1));
  EXPECT_THROW(m(2, 0), DomainError);
  EXPECT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), DomainError);
}

TEST(ComplexMatrix, IdentityAndProduct) {
  const ComplexMatrix a(2, 2, {1, Complex(0, 2), 3, 4});
  EXPECT_EQ(a * ComplexMatrix::identity(2), a);
  const ComplexMatrix b(2, 2, {0, 1, 1, 0});
  const ComplexMatrix ab(2, 2, {Complex(0, 2), 1, 4, 3});
  EXPECT_EQ(a * b, ab);
  EXPECT_THROW(a * ComplexMatrix(3, 3), DomainError);
}

TEST(ComplexMatrix, AdjointTraceNorms) {
  const ComplexMatrix a(2, 2, {1, Complex(0, 2), 3, Complex(4, -1)});
  const auto ad = a.adjoint();
  EXPECT_EQ(ad(0, 1), Complex(3, 0));
  EXPECT_EQ(ad(1, 0), Complex(0, -2));
  EXPECT_EQ(a.trace(), Complex(5, -1));
  EXPECT_DOUBLE_EQ(a.frobenius_norm(), std::sqrt(1.0 + 4 + 9 + 17));
  EXPECT_DOUBLE_EQ(a.max_abs(), std::sqrt(17.0));
}

TEST(ComplexMatrix, HermitianDecomposition) {
  const ComplexMatrix a(2, 2, {Complex(1, 1), Complex(2, 3), -1, Complex(0, 5)});
  const auto h = a.hermitian_part();
  const auto s = a.skew_hermitian_part();
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_TRUE(s.is_skew_hermitian());
  EXPECT_TRUE(approx_equal(h + s, a, 1e-15));
}

TEST(ComplexMatrix, BlocksAndStacking) {
  const auto i2 = ComplexMatrix::identity(2);
  const auto z2 = ComplexMatrix::zero(2, 2);
  const auto m = ComplexMatrix::from_blocks(z2, i2, i2, z2);
  EXPECT_EQ(m(0, 2), Complex(1));
  EXPECT_EQ(m(2, 0), Complex(1));
  EXPECT_EQ(m(0, 0), Complex(0));
  const auto d = ComplexMatrix::block_diagonal(i2, 2.0 * i2);
  EXPECT_EQ(d(3, 3), Complex(2));
  const auto h = ComplexMatrix::hstack(d.column_block(0, 1), d.column_block(3, 1));
  EXPECT_EQ(h.cols(), 2u);
  EXPECT_EQ(h(3, 1), Complex(2));
}

TEST(ComplexMatrix, ApplyMatchesProduct) {
  const ComplexMatrix a(2, 2, {1, 2, Complex(0, 1), 3});
  const std::vector<Complex> v{Complex(1, 1), 2};
  const auto w = a.apply(v);
  EXPECT_EQ(w[0], Complex(5, 1));
  EXPECT_EQ(w[1], Complex(5, 1));
}

TEST(ComplexMatrix, CommutatorIdentities) {
  const ComplexMatrix a(2, 2, {0, 1, 1, 0});
  const ComplexMatrix b(2, 2, {1, 0, 0, -1});
  EXPECT_TRUE(approx_equal(anticommutator(a, b), ComplexMatrix::zero(2, 2)));
  EXPECT_TRUE(approx_equal(commutator(a, b), ComplexMatrix(2, 2, {0, -2, 2, 0})));
}

TEST(ComplexMatrix, UnitaryCheck) {
  const ComplexMatrix u(2, 2, {0, Complex(0, 1), Complex(0, 1), 0});
  EXPECT_TRUE(u.is_unitary());
  EXPECT_FALSE((2.0 * u).is_unitary());
}
