#include "divreg/complex_matrix.hpp"

#include "divreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace divreg {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b,
                        const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError(std::string("ComplexMatrix ") + op + ": shape mismatch " +
                      std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> row_major)
    : rows_(rows), cols_(cols), data_(row_major) {
  if (data_.size() != rows * cols) {
    throw DomainError("ComplexMatrix: initializer has " +
                      std::to_string(data_.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
}

ComplexMatrix::ComplexMatrix(Complex scalar)
    : rows_(1), cols_(1), data_{scalar} {}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.data_[i * n + i] = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i)
    m.data_[i * diag.size() + i] = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::block_diagonal(const ComplexMatrix &a,
                                            const ComplexMatrix &b) {
  if (!a.is_square() || !b.is_square())
    throw DomainError("block_diagonal: blocks must be square");
  const std::size_t n = a.rows() + b.rows();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      m.data_[r * n + c] = a.data_[r * a.cols_ + c];
  const std::size_t off = a.rows();
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      m.data_[(r + off) * n + c + off] = b.data_[r * b.cols_ + c];
  return m;
}

ComplexMatrix ComplexMatrix::from_blocks(const ComplexMatrix &tl,
                                         const ComplexMatrix &tr,
                                         const ComplexMatrix &bl,
                                         const ComplexMatrix &br) {
  const std::size_t k = tl.rows();
  for (const auto *blk : {&tl, &tr, &bl, &br}) {
    if (blk->rows() != k || blk->cols() != k)
      throw DomainError("from_blocks: blocks must be equally sized squares");
  }
  const std::size_t n = 2 * k;
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      m.data_[r * n + c] = tl.data_[r * k + c];
      m.data_[r * n + c + k] = tr.data_[r * k + c];
      m.data_[(r + k) * n + c] = bl.data_[r * k + c];
      m.data_[(r + k) * n + c + k] = br.data_[r * k + c];
    }
  }
  return m;
}

Complex &ComplexMatrix::operator()(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_)
    throw DomainError("ComplexMatrix: index (" + std::to_string(r) + "," +
                      std::to_string(c) + ") out of range");
  return data_[r * cols_ + c];
}

const Complex &ComplexMatrix::operator()(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw DomainError("ComplexMatrix: index (" + std::to_string(r) + "," +
                      std::to_string(c) + ") out of range");
  return data_[r * cols_ + c];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m.data_[c * rows_ + r] = std::conj(data_[r * cols_ + c]);
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m.data_[c * rows_ + r] = data_[r * cols_ + c];
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
    t += data_[i * cols_ + i];
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto &z : data_)
    s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto &z : data_)
    m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix ComplexMatrix::column_block(std::size_t first,
                                          std::size_t count) const {
  if (first + count > cols_)
    throw DomainError("column_block: range exceeds column count");
  ComplexMatrix m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c)
      m.data_[r * count + c] = data_[r * cols_ + first + c];
  return m;
}

ComplexMatrix ComplexMatrix::hstack(const ComplexMatrix &a,
                                    const ComplexMatrix &b) {
  if (a.rows() != b.rows())
    throw DomainError("hstack: row counts differ");
  const std::size_t n = a.cols() + b.cols();
  ComplexMatrix m(a.rows(), n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      m.data_[r * n + c] = a.data_[r * a.cols_ + c];
    for (std::size_t c = 0; c < b.cols(); ++c)
      m.data_[r * n + a.cols() + c] = b.data_[r * b.cols_ + c];
  }
  return m;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix h = *this + adjoint();
  return h *= 0.5;
}

ComplexMatrix ComplexMatrix::skew_hermitian_part() const {
  ComplexMatrix s = *this - adjoint();
  return s *= 0.5;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && approx_equal(*this, adjoint(), tol);
}

bool ComplexMatrix::is_skew_hermitian(double tol) const {
  return is_square() && approx_equal(*this, -adjoint(), tol);
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square())
    return false;
  return (adjoint() * *this - identity(rows_)).frobenius_norm() <= tol;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
  require_same_shape(*this, rhs, "+");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
  require_same_shape(*this, rhs, "-");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
  for (auto &z : data_)
    z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols_ != b.rows_)
    throw DomainError("ComplexMatrix *: inner dimensions differ");
  ComplexMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex x = a.data_[r * a.cols_ + k];
      if (x == Complex{})
        continue;
      for (std::size_t c = 0; c < b.cols_; ++c)
        m.data_[r * b.cols_ + c] += x * b.data_[k * b.cols_ + c];
    }
  }
  return m;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_)
    throw DomainError("ComplexMatrix::apply: vector length mismatch");
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex s{};
    for (std::size_t c = 0; c < cols_; ++c)
      s += data_[r * cols_ + c] * v[c];
    out[r] = s;
  }
  return out;
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (std::abs(da[i] - db[i]) > tol)
      return false;
  }
  return true;
}

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  return a * b + b * a;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  return a * b - b * a;
}

std::ostream &operator<<(std::ostream &os, const ComplexMatrix &m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto z = m(r, c);
      os << (c ? ", " : " ") << z.real() << (z.imag() < 0 ? "-" : "+")
         << std::abs(z.imag()) << "i";
    }
    os << " ]\n";
  }
  return os;
}

} // namespace divreg
