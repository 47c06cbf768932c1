#pragma once

// Dense complex matrix product kernels.
//
// Generators built from truncated shifts are partial permutations with a few
// weights: almost every entry is an exact zero. multiply_parallel exploits
// that by skipping zero entries of the right factor and splitting output
// columns across OpenMP threads. multiply_serial is the plain reference
// product kept for tests and benchmarks; multiply picks between the sparse
// path and Eigen's GEMM by density.

#include <cstddef>

#include <Eigen/Dense>

namespace tccr::kernels {

using Matrix = Eigen::MatrixXcd;

// Density of exactly-nonzero entries above which multiply() uses GEMM.
inline constexpr double kSparseDensityLimit = 0.2;

Matrix multiply_serial(const Matrix& a, const Matrix& b);
Matrix multiply_parallel(const Matrix& a, const Matrix& b);
Matrix multiply(const Matrix& a, const Matrix& b);

double nonzero_density(const Matrix& m);

}  // namespace tccr::kernels
