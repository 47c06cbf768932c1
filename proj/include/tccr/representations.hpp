#pragma once

// Concrete operator families: the irreducible representations of the
// partial-isometry algebra, closed-form Fock generators of the twisted CCR
// and the one-mode q-CCR generator.

#include <optional>
#include <vector>

#include "tccr/fock_core.hpp"

namespace tccr {

struct IrrepSpec {
  int d = 2;
  // Number of shift slots j in 0..d; j == d is the Fock class.
  int class_j = 2;
  // Phase of t_{j+1}; unused in the Fock class.
  double phase = 0.0;
  int cap = 8;
  double mu = 0.0;

  void validate() const;
  bool is_fock() const { return class_j == d; }
  // Class j uses j slots; j == 0 is the scalar (one-dimensional) class.
  int slots() const { return class_j; }
};

struct GeneratorFamily {
  FockBasis basis;
  std::vector<LinearOperator> ops;
  std::optional<IrrepSpec> spec;

  int d() const { return static_cast<int>(ops.size()); }
  // 1-based access.
  const LinearOperator& t(int i) const { return ops.at(static_cast<std::size_t>(i - 1)); }
};

struct TccrFamily {
  FockBasis basis;
  std::vector<LinearOperator> ops;
  double mu = 0.0;

  int d() const { return static_cast<int>(ops.size()); }
  const LinearOperator& a(int i) const { return ops.at(static_cast<std::size_t>(i - 1)); }
};

GeneratorFamily build_irrep(const IrrepSpec& spec);

// Fock generators as weighted lattice shifts:
// a_i e_n = mu^{n_1 + ... + n_{i-1}} sqrt((1 - mu^{2(n_i+1)}) / (1 - mu^2)) e_{n + 1_i},
// zero when n_i == cap.
TccrFamily build_fock_tccr(int d, double mu, int cap);

// One-mode generator with a^* a = 1 + q a a^*, a e_n = sqrt((1 - q^{n+1}) / (1 - q)) e_{n+1}.
LinearOperator build_qccr_single(double q, int cap);

// sum_{k=0}^{n} c^k, evaluated without dividing by 1 - c.
double geometric_sum(double c, int n);

}  // namespace tccr
