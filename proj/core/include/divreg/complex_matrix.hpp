#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace divreg {

using Complex = std::complex<double>;

inline constexpr double kDefaultMatrixTolerance = 1e-12;

//! Dense row-major complex matrix.
//!
//! Sized for the small Dirac-algebra objects (2x2, 4x4, 8x8) and the 1x1
//! scalar case of expansions, but nothing here assumes a particular size.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<Complex> row_major);
  //! 1x1 matrix holding a scalar.
  explicit ComplexMatrix(Complex scalar);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  //! diag(a, b) for square blocks a and b.
  static ComplexMatrix block_diagonal(const ComplexMatrix &a,
                                      const ComplexMatrix &b);
  //! [[tl, tr], [bl, br]] from four equally sized square blocks.
  static ComplexMatrix from_blocks(const ComplexMatrix &tl,
                                   const ComplexMatrix &tr,
                                   const ComplexMatrix &bl,
                                   const ComplexMatrix &br);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  //! Bounds-checked element access; throws DomainError when out of range.
  Complex &operator()(std::size_t r, std::size_t c);
  const Complex &operator()(std::size_t r, std::size_t c) const;

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  //! Largest entry modulus.
  double max_abs() const;

  //! Columns [first, first + count) as a rows x count matrix.
  ComplexMatrix column_block(std::size_t first, std::size_t count) const;
  //! Horizontal concatenation [a b].
  static ComplexMatrix hstack(const ComplexMatrix &a, const ComplexMatrix &b);

  //! (A + A^dagger) / 2
  ComplexMatrix hermitian_part() const;
  //! (A - A^dagger) / 2
  ComplexMatrix skew_hermitian_part() const;

  bool is_hermitian(double tol = kDefaultMatrixTolerance) const;
  bool is_skew_hermitian(double tol = kDefaultMatrixTolerance) const;
  //! ||U^dagger U - I||_F <= tol.
  bool is_unitary(double tol = kDefaultMatrixTolerance) const;

  ComplexMatrix &operator+=(const ComplexMatrix &rhs);
  ComplexMatrix &operator-=(const ComplexMatrix &rhs);
  ComplexMatrix &operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(ComplexMatrix m, double s) {
    return m *= Complex(s);
  }
  friend ComplexMatrix operator*(double s, ComplexMatrix m) {
    return m *= Complex(s);
  }
  friend ComplexMatrix operator*(const ComplexMatrix &a,
                                 const ComplexMatrix &b);

  //! Matrix-vector product.
  std::vector<Complex> apply(std::span<const Complex> v) const;

  //! Exact entrywise equality; use approx_equal for numerics.
  friend bool operator==(const ComplexMatrix &,
                         const ComplexMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

//! max_ij |a_ij - b_ij| <= tol; false when shapes differ.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                  double tol = kDefaultMatrixTolerance);

//! {a, b} = ab + ba
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);
//! [a, b] = ab - ba
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

std::ostream &operator<<(std::ostream &os, const ComplexMatrix &m);

} // namespace divreg
