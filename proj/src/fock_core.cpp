#include "tccr/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "tccr/kernels.hpp"

namespace tccr {

std::size_t max_dimension() {
  if (const char* env = std::getenv("TCCR_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return kDefaultMaxDimension;
}

namespace {

std::size_t checked_size(int slots, int cap) {
  if (slots < 0 || cap < 0) {
    throw ParameterError("basis needs slots >= 0 and cap >= 0");
  }
  const std::size_t limit = max_dimension();
  const std::size_t per_slot = static_cast<std::size_t>(cap) + 1;
  std::size_t size = 1;
  for (int k = 0; k < slots; ++k) {
    if (size > limit / per_slot) {
      std::ostringstream msg;
      msg << "basis dimension (" << per_slot << ")^" << slots << " exceeds the limit " << limit;
      throw CapacityError(msg.str());
    }
    size *= per_slot;
  }
  if (size > limit) {
    std::ostringstream msg;
    msg << "basis dimension " << size << " exceeds the limit " << limit;
    throw CapacityError(msg.str());
  }
  return size;
}

}  // namespace

FockBasis::FockBasis(int slots, int cap) : slots_(slots), cap_(cap), size_(checked_size(slots, cap)) {}

MultiIndex FockBasis::at(std::size_t index) const {
  if (index >= size_) throw ParameterError("basis index out of range");
  MultiIndex out;
  out.entries.assign(static_cast<std::size_t>(slots_), 0);
  const std::size_t base = static_cast<std::size_t>(cap_) + 1;
  for (int k = slots_ - 1; k >= 0; --k) {
    out.entries[static_cast<std::size_t>(k)] = static_cast<int>(index % base);
    index /= base;
  }
  return out;
}

std::size_t FockBasis::index_of(const MultiIndex& index) const {
  if (index.size() != static_cast<std::size_t>(slots_)) {
    throw ParameterError("multi-index length does not match slot count");
  }
  const std::size_t base = static_cast<std::size_t>(cap_) + 1;
  std::size_t out = 0;
  for (int n : index.entries) {
    if (n < 0 || n > cap_) throw ParameterError("occupation number outside 0..cap");
    out = out * base + static_cast<std::size_t>(n);
  }
  return out;
}

std::vector<MultiIndex> FockBasis::enumerate() const {
  std::vector<MultiIndex> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(at(i));
  return out;
}

bool FockBasis::in_core(std::size_t index, int level) const {
  const std::size_t base = static_cast<std::size_t>(cap_) + 1;
  for (int k = 0; k < slots_; ++k) {
    if (static_cast<int>(index % base) > level) return false;
    index /= base;
  }
  return true;
}

std::vector<std::size_t> FockBasis::core_indices(int level) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (in_core(i, level)) out.push_back(i);
  }
  return out;
}

FockBasis enumerate_basis(int slots, int cap) {
  if (slots < 1) throw ParameterError("enumerate_basis: slots must be >= 1");
  if (cap < 1) throw ParameterError("enumerate_basis: cap must be >= 1");
  return FockBasis(slots, cap);
}

// ---------------------------------------------------------------------------

LinearOperator::LinearOperator(FockBasis basis, Matrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    std::ostringstream msg;
    msg << "matrix is " << matrix_.rows() << "x" << matrix_.cols() << " but the basis has dimension " << n;
    throw BasisMismatchError(msg.str());
  }
}

LinearOperator LinearOperator::identity(const FockBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return LinearOperator(basis, Matrix::Identity(n, n));
}

LinearOperator LinearOperator::zero(const FockBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return LinearOperator(basis, Matrix::Zero(n, n));
}

LinearOperator LinearOperator::adjoint() const { return LinearOperator(basis_, matrix_.adjoint()); }

bool LinearOperator::is_finite() const { return matrix_.allFinite(); }

void LinearOperator::require_same_basis(const LinearOperator& other, const char* op) const {
  if (!(basis_ == other.basis_)) {
    std::ostringstream msg;
    msg << op << ": operands live on different bases (slots " << basis_.slots() << ", cap " << basis_.cap()
        << " vs slots " << other.basis_.slots() << ", cap " << other.basis_.cap() << ")";
    throw BasisMismatchError(msg.str());
  }
}

LinearOperator& LinearOperator::operator+=(const LinearOperator& other) {
  require_same_basis(other, "add");
  matrix_ += other.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator-=(const LinearOperator& other) {
  require_same_basis(other, "subtract");
  matrix_ -= other.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator*=(Complex scale) {
  matrix_ *= scale;
  return *this;
}

LinearOperator operator*(const LinearOperator& lhs, const LinearOperator& rhs) {
  lhs.require_same_basis(rhs, "compose");
  return LinearOperator(lhs.basis_, kernels::multiply(lhs.matrix_, rhs.matrix_));
}

LinearOperator compose_all(std::span<const LinearOperator> factors) {
  if (factors.empty()) throw ParameterError("compose_all needs at least one factor");
  LinearOperator out = factors.back();
  for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) {
    out = *it * out;
  }
  return out;
}

LinearOperator power(const LinearOperator& op, int exponent) {
  if (exponent < 0) throw ParameterError("negative operator power");
  LinearOperator out = LinearOperator::identity(op.basis());
  for (int k = 0; k < exponent; ++k) out = op * out;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Rows and columns joined by exactly-nonzero entries. Generator words are
// weighted partial permutations, so these blocks are usually tiny.
struct Block {
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
};

Eigen::Index find_root(std::vector<Eigen::Index>& parent, Eigen::Index x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Blocks of the bipartite row/column graph; blocks missing rows or columns
// carry no entries and are dropped.
std::vector<Block> coupled_blocks(const Matrix& m) {
  const Eigen::Index r = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(r + m.cols()));
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<Eigen::Index>(k);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      if (m(i, j) == Complex(0.0)) continue;
      const Eigen::Index a = find_root(parent, i);
      const Eigen::Index b = find_root(parent, r + j);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<Eigen::Index> slot(parent.size(), -1);
  std::vector<Block> blocks;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(parent.size()); ++k) {
    const Eigen::Index root = find_root(parent, k);
    auto& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    Block& b = blocks[static_cast<std::size_t>(s)];
    if (k < r) {
      b.rows.push_back(k);
    } else {
      b.cols.push_back(k - r);
    }
  }
  std::erase_if(blocks, [](const Block& b) { return b.rows.empty() || b.cols.empty(); });
  return blocks;
}

Matrix gather(const Matrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

void scatter(Matrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols,
             const Matrix& block) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      m(rows[i], cols[j]) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

double dense_norm(const Matrix& m) {
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  // Gram matrix on the smaller side; its largest eigenvalue is sigma_max^2.
  Matrix gram;
  if (m.cols() <= m.rows()) {
    gram.noalias() = m.adjoint() * m;
  } else {
    gram.noalias() = m * m.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("operator_norm: eigensolver failed");
  return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (!m.allFinite()) throw NumericError("operator_norm: non-finite matrix entries");
  double norm = 0.0;
  for (const Block& b : coupled_blocks(m)) norm = std::max(norm, dense_norm(gather(m, b.rows, b.cols)));
  return norm;
}

double operator_norm(const LinearOperator& op) { return operator_norm(op.matrix()); }

LinearOperator psd_sqrt(const LinearOperator& op, const PsdSqrtOptions& options) {
  const Matrix& a = op.matrix();
  if (!a.allFinite()) throw NumericError("psd_sqrt: non-finite matrix entries");
  const double asymmetry = a.size() == 0 ? 0.0 : (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > options.hermitian_tolerance) {
    std::ostringstream msg;
    msg << "psd_sqrt: input is not Hermitian (max asymmetry " << asymmetry << ")";
    throw NumericError(msg.str());
  }
  const Matrix herm = 0.5 * (a + a.adjoint());
  Matrix root = Matrix::Zero(a.rows(), a.cols());
  // The pattern of herm is symmetric, so every block has rows == cols.
  for (const Block& b : coupled_blocks(herm)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gather(herm, b.rows, b.rows));
    if (solver.info() != Eigen::Success) throw NumericError("psd_sqrt: eigensolver failed");
    Eigen::VectorXd values = solver.eigenvalues();
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const double v = values(k);
      if (v < -options.negative_tolerance) {
        std::ostringstream msg;
        msg << "psd_sqrt: input is not positive semidefinite (eigenvalue " << v << ")";
        throw NotPsdError(msg.str(), v);
      }
      values(k) = v < options.clamp_threshold ? 0.0 : std::sqrt(v);
    }
    const Matrix& vectors = solver.eigenvectors();
    Matrix block = vectors * values.asDiagonal() * vectors.adjoint();
    scatter(root, b.rows, b.rows, 0.5 * (block + block.adjoint()));
  }
  return LinearOperator(op.basis(), std::move(root));
}

PolarPair polar_left(const LinearOperator& op, double rank_tol) {
  if (!(rank_tol > 0.0)) throw ParameterError("polar_left: rank_tol must be positive");
  const Matrix& a = op.matrix();
  if (!a.allFinite()) throw NumericError("polar_left: non-finite matrix entries");
  const FockBasis& basis = op.basis();

  struct Factored {
    Block block;
    Matrix u;
    Matrix v;
    Eigen::VectorXd sigma;
  };
  std::vector<Factored> parts;
  double sigma_max = 0.0;
  for (Block& b : coupled_blocks(a)) {
    Eigen::BDCSVD<Matrix> svd(gather(a, b.rows, b.cols), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericError("polar_left: SVD failed");
    parts.push_back({std::move(b), svd.matrixU(), svd.matrixV(), svd.singularValues()});
    if (parts.back().sigma.size() > 0) sigma_max = std::max(sigma_max, parts.back().sigma(0));
  }

  Matrix s = Matrix::Zero(a.rows(), a.cols());
  Matrix c = Matrix::Zero(a.rows(), a.rows());
  const double cutoff = rank_tol * sigma_max;
  for (const Factored& p : parts) {
    const Eigen::Index k = p.sigma.size();
    Eigen::Index rank = 0;
    while (rank < k && p.sigma(rank) > cutoff) ++rank;
    scatter(s, p.block.rows, p.block.cols, p.u.leftCols(rank) * p.v.leftCols(rank).adjoint());
    Matrix positive = p.u.leftCols(k) * p.sigma.cast<Complex>().asDiagonal() * p.u.leftCols(k).adjoint();
    scatter(c, p.block.rows, p.block.rows, 0.5 * (positive + positive.adjoint()));
  }
  return {LinearOperator(basis, std::move(s)), LinearOperator(basis, std::move(c))};
}

double core_norm(const LinearOperator& x, int degree) {
  const FockBasis& basis = x.basis();
  if (degree < 0) throw ParameterError("core_norm: negative degree");
  if (degree > basis.cap()) {
    std::ostringstream msg;
    msg << "relation degree " << degree << " exceeds the truncation cap " << basis.cap();
    throw TruncationError(msg.str());
  }
  const auto core = basis.core_indices(basis.cap() - degree);
  const Matrix& m = x.matrix();
  Matrix restricted(m.rows(), static_cast<Eigen::Index>(core.size()));
  for (std::size_t c = 0; c < core.size(); ++c) {
    restricted.col(static_cast<Eigen::Index>(c)) = m.col(static_cast<Eigen::Index>(core[c]));
  }
  return operator_norm(restricted);
}

double core_residual(const LinearOperator& lhs, const LinearOperator& rhs, int degree) {
  return core_norm(lhs - rhs, degree);
}

// ---------------------------------------------------------------------------

Matrix truncated_shift(int cap) {
  const Eigen::Index n = cap + 1;
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) s(k + 1, k) = 1.0;
  return s;
}

Matrix vacuum_projector(int cap) {
  const Eigen::Index n = cap + 1;
  Matrix p = Matrix::Zero(n, n);
  p(0, 0) = 1.0;
  return p;
}

Matrix kron(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) {
    Matrix next = Matrix::Zero(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        if (out(i, j) == Complex(0.0)) continue;
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

nlohmann::json to_json(const LinearOperator& op) {
  const Matrix& m = op.matrix();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"slots", op.basis().slots()},
          {"cap", op.basis().cap()},
          {"dimension", op.dimension()},
          {"data", std::move(rows)}};
}

LinearOperator operator_from_json(const nlohmann::json& j) {
  FockBasis basis(j.at("slots").get<int>(), j.at("cap").get<int>());
  const auto& rows = j.at("data");
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (static_cast<Eigen::Index>(rows.size()) != n) throw ParameterError("operator JSON: row count mismatch");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw ParameterError("operator JSON: column count mismatch");
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& entry = row.at(static_cast<std::size_t>(k));
      m(i, k) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return LinearOperator(std::move(basis), std::move(m));
}

}  // namespace tccr
