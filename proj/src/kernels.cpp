#include "tccr/kernels.hpp"

#include <cassert>

namespace tccr::kernels {

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  const Eigen::Index rows = a.rows();
  const Eigen::Index inner = a.cols();
  const Eigen::Index cols = b.cols();
  Matrix c = Matrix::Zero(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < inner; ++k) {
      const auto bkj = b(k, j);
      for (Eigen::Index i = 0; i < rows; ++i) {
        c(i, j) += a(i, k) * bkj;
      }
    }
  }
  return c;
}

Matrix multiply_parallel(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  const Eigen::Index rows = a.rows();
  const Eigen::Index inner = a.cols();
  const Eigen::Index cols = b.cols();
  Matrix c = Matrix::Zero(rows, cols);
  // Column j of c only reads column j of b, so columns are independent and
  // the summation order inside a column is fixed.
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) {
    auto out = c.col(j);
    for (Eigen::Index k = 0; k < inner; ++k) {
      const auto bkj = b(k, j);
      if (bkj == std::complex<double>(0.0, 0.0)) continue;
      out += a.col(k) * bkj;
    }
  }
  return c;
}

double nonzero_density(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::Index nnz = (m.array() != std::complex<double>(0.0, 0.0)).count();
  return static_cast<double>(nnz) / static_cast<double>(m.size());
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (nonzero_density(b) <= kSparseDensityLimit) {
    return multiply_parallel(a, b);
  }
  if (nonzero_density(a) <= kSparseDensityLimit) {
    // (a b)^* = b^* a^*, with the sparse factor now on the right.
    const Matrix bt = b.adjoint();
    const Matrix at = a.adjoint();
    return multiply_parallel(bt, at).adjoint();
  }
  Matrix c(a.rows(), b.cols());
  c.noalias() = a * b;
  return c;
}

}  // namespace tccr::kernels
