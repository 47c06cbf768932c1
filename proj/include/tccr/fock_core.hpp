#pragma once

// Truncated Fock space linear algebra.
//
// A FockBasis enumerates occupation tuples (n_1, ..., n_m) with every
// n_k <= cap in lexicographic order, so the first slot is the most
// significant digit and operators on individual slots combine by Kronecker
// product. Index 0 is the vacuum.
//
// Relations between generators only hold below the cap. The "core" at level
// L is the span of basis vectors with all n_k <= L; a relation whose longest
// word has length D holds exactly on the core at level cap - D.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tccr/errors.hpp"

namespace tccr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultMaxDimension = 20000;

// Dimension limit for any basis; TCCR_MAX_DIM in the environment overrides
// the default.
std::size_t max_dimension();

struct MultiIndex {
  std::vector<int> entries;

  std::size_t size() const { return entries.size(); }
  int operator[](std::size_t k) const { return entries[k]; }
  auto operator<=>(const MultiIndex&) const = default;
};

class FockBasis {
 public:
  // slots == 0 gives the one-dimensional space (only the empty tuple). The
  // cap is still recorded so that relation degrees can be validated.
  FockBasis(int slots, int cap);

  static FockBasis scalar(int cap) { return FockBasis(0, cap); }

  int slots() const { return slots_; }
  int cap() const { return cap_; }
  std::size_t size() const { return size_; }

  MultiIndex at(std::size_t index) const;
  std::size_t index_of(const MultiIndex& index) const;
  std::vector<MultiIndex> enumerate() const;

  // True when every occupation number of basis vector `index` is <= level.
  bool in_core(std::size_t index, int level) const;
  std::vector<std::size_t> core_indices(int level) const;

  bool operator==(const FockBasis&) const = default;

 private:
  int slots_;
  int cap_;
  std::size_t size_;
};

// Validated public constructor: slots >= 1, cap >= 1, size within limit.
FockBasis enumerate_basis(int slots, int cap);

class LinearOperator {
 public:
  LinearOperator(FockBasis basis, Matrix matrix);

  static LinearOperator identity(const FockBasis& basis);
  static LinearOperator zero(const FockBasis& basis);

  const FockBasis& basis() const { return basis_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return basis_.size(); }

  LinearOperator adjoint() const;
  bool is_finite() const;

  LinearOperator& operator+=(const LinearOperator& other);
  LinearOperator& operator-=(const LinearOperator& other);
  LinearOperator& operator*=(Complex scale);

  friend LinearOperator operator+(LinearOperator lhs, const LinearOperator& rhs) { return lhs += rhs; }
  friend LinearOperator operator-(LinearOperator lhs, const LinearOperator& rhs) { return lhs -= rhs; }
  friend LinearOperator operator*(Complex scale, LinearOperator op) { return op *= scale; }
  friend LinearOperator operator*(LinearOperator op, Complex scale) { return op *= scale; }
  friend LinearOperator operator-(LinearOperator op) { return op *= Complex(-1.0); }

  // Composition (lhs after rhs).
  friend LinearOperator operator*(const LinearOperator& lhs, const LinearOperator& rhs);

 private:
  void require_same_basis(const LinearOperator& other, const char* op) const;

  FockBasis basis_;
  Matrix matrix_;
};

// Product of a sequence of operators, left to right. Empty sequence is not
// allowed since the basis would be unknown.
LinearOperator compose_all(std::span<const LinearOperator> factors);

// Integer power; power 0 gives the identity.
LinearOperator power(const LinearOperator& op, int exponent);

struct PolarPair {
  LinearOperator isometric_part;  // S
  LinearOperator positive_part;   // C, with A = C * S
};

double operator_norm(const Matrix& m);
double operator_norm(const LinearOperator& op);

struct PsdSqrtOptions {
  double hermitian_tolerance = 1e-10;
  double negative_tolerance = 1e-10;
  double clamp_threshold = 1e-12;
};

// Hermitian PSD square root by eigendecomposition. Eigenvalues in
// [-negative_tolerance, clamp_threshold) are set to zero.
LinearOperator psd_sqrt(const LinearOperator& op, const PsdSqrtOptions& options = {});

// A = C * S with C = (A A*)^{1/2} and S = U_r V_r^* from the SVD, restricted to
// singular values above rank_tol * sigma_max.
PolarPair polar_left(const LinearOperator& op, double rank_tol = 1e-8);

// ||x Q|| where Q projects onto the core at level cap - degree.
double core_norm(const LinearOperator& x, int degree);

double core_residual(const LinearOperator& lhs, const LinearOperator& rhs, int degree);

// Single-slot building blocks on C^{cap+1}.
Matrix truncated_shift(int cap);
Matrix vacuum_projector(int cap);

// Kronecker product of slot matrices, first factor most significant.
Matrix kron(std::span<const Matrix> factors);

// JSON debug dump: {"slots", "cap", "dimension", "data": rows of [re, im]}.
nlohmann::json to_json(const LinearOperator& op);
LinearOperator operator_from_json(const nlohmann::json& j);

}  // namespace tccr
