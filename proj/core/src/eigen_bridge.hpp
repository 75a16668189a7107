#pragma once

#include "divreg/complex_matrix.hpp"

#include <Eigen/Dense>

namespace divreg::detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(Eigen::Index(r), Eigen::Index(c)) = m(r, c);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
  ComplexMatrix out(std::size_t(m.rows()), std::size_t(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(std::size_t(r), std::size_t(c)) = m(r, c);
  return out;
}

} // namespace divreg::detail
