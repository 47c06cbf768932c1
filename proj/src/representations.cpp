#include "tccr/representations.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tccr {

void IrrepSpec::validate() const {
  if (d < 1) throw ParameterError("irrep: d must be >= 1");
  if (class_j < 0 || class_j > d) {
    std::ostringstream msg;
    msg << "irrep: class_j = " << class_j << " outside 0.." << d;
    throw ParameterError(msg.str());
  }
  if (cap < 1) throw ParameterError("irrep: cap must be >= 1");
  if (!(std::abs(mu) < 1.0)) throw ParameterError("irrep: |mu| must be < 1");
  if (!std::isfinite(phase)) throw ParameterError("irrep: phase must be finite");
}

double geometric_sum(double c, int n) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k <= n; ++k) {
    sum += term;
    term *= c;
  }
  return sum;
}

GeneratorFamily build_irrep(const IrrepSpec& spec) {
  spec.validate();
  const int j = spec.class_j;
  FockBasis basis(spec.slots(), spec.cap);
  const Matrix shift = truncated_shift(spec.cap);
  const Matrix defect = vacuum_projector(spec.cap);  // 1 - S S^*
  const auto n = static_cast<Eigen::Index>(spec.cap + 1);
  const Matrix one = Matrix::Identity(n, n);

  GeneratorFamily family{basis, {}, spec};
  family.ops.reserve(static_cast<std::size_t>(spec.d));
  for (int i = 1; i <= spec.d; ++i) {
    if (i <= j) {
      std::vector<Matrix> slots;
      for (int k = 1; k <= j; ++k) {
        slots.push_back(k < i ? defect : (k == i ? shift : one));
      }
      family.ops.emplace_back(basis, kron(slots));
    } else if (i == j + 1) {
      std::vector<Matrix> slots(static_cast<std::size_t>(j), defect);
      const Complex phase = std::polar(1.0, spec.phase);
      family.ops.emplace_back(basis, phase * kron(slots));
    } else {
      family.ops.push_back(LinearOperator::zero(basis));
    }
  }
  return family;
}

TccrFamily build_fock_tccr(int d, double mu, int cap) {
  if (d < 1) throw ParameterError("fock tccr: d must be >= 1");
  if (!(std::abs(mu) < 1.0)) throw ParameterError("fock tccr: |mu| must be < 1");
  if (cap < 1) throw ParameterError("fock tccr: cap must be >= 1");
  FockBasis basis = enumerate_basis(d, cap);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const double mu2 = mu * mu;

  TccrFamily family{basis, {}, mu};
  for (int i = 1; i <= d; ++i) {
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t col = 0; col < basis.size(); ++col) {
      MultiIndex idx = basis.at(col);
      const auto slot = static_cast<std::size_t>(i - 1);
      if (idx.entries[slot] == basis.cap()) continue;
      int lower = 0;
      for (std::size_t k = 0; k < slot; ++k) lower += idx.entries[k];
      const double weight = std::pow(mu, lower) * std::sqrt(geometric_sum(mu2, idx.entries[slot]));
      idx.entries[slot] += 1;
      m(static_cast<Eigen::Index>(basis.index_of(idx)), static_cast<Eigen::Index>(col)) = weight;
    }
    family.ops.emplace_back(basis, std::move(m));
  }
  return family;
}

LinearOperator build_qccr_single(double q, int cap) {
  if (!(std::abs(q) < 1.0)) throw ParameterError("q-CCR: |q| must be < 1");
  FockBasis basis = enumerate_basis(1, cap);
  Matrix m = Matrix::Zero(cap + 1, cap + 1);
  for (int k = 0; k < cap; ++k) {
    m(k + 1, k) = std::sqrt(geometric_sum(q, k));
  }
  return LinearOperator(basis, std::move(m));
}

}  // namespace tccr
