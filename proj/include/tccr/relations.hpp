#pragma once

// Declarative relation sets and the residual, norm-bound and faithfulness
// checks built on them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tccr/fock_core.hpp"
#include "tccr/report.hpp"
#include "tccr/representations.hpp"
#include "tccr/symbolic.hpp"

namespace tccr {

inline constexpr double kModelTolerance = 1e-10;
inline constexpr double kSvdTolerance = 1e-8;

enum class RelationKind { Tccr, PartialIsometry, Qccr };

std::string to_string(RelationKind kind);

// lhs = rhs in the letters x_1..x_d; the symbol mu in coefficients stands for
// the set's deformation parameter (mu for TCCR, q for the one-mode q-CCR).
struct Relation {
  std::string label;
  symbolic::NcPolynomial lhs;
  symbolic::NcPolynomial rhs;
  int degree = 0;

  Relation adjoint() const;
};

Relation make_relation(std::string label, symbolic::NcPolynomial lhs, symbolic::NcPolynomial rhs);

class RelationSet {
 public:
  static RelationSet tccr(int d);
  static RelationSet partial_isometry(int d);
  static RelationSet qccr();

  RelationKind kind() const { return kind_; }
  int d() const { return d_; }
  const std::vector<Relation>& relations() const { return relations_; }

  // One check per relation: core_residual(lhs, rhs, degree) with x_i -> generators[i-1].
  VerificationReport residuals(std::span<const LinearOperator> generators, double parameter, double tolerance,
                               const std::string& prefix, Execution execution = Execution::Parallel) const;

 private:
  RelationSet(RelationKind kind, int d) : kind_(kind), d_(d) {}
  void add(std::string label, symbolic::NcPolynomial lhs, symbolic::NcPolynomial rhs);

  RelationKind kind_;
  int d_;
  std::vector<Relation> relations_;
};

// Substitutes x_i -> generators[i-1], x_i^* -> adjoint, mu -> parameter.
LinearOperator evaluate(const symbolic::NcPolynomial& p, std::span<const LinearOperator> generators,
                        double parameter);
LinearOperator evaluate_word(const symbolic::Word& w, std::span<const LinearOperator> generators);

VerificationReport tccr_residuals(const TccrFamily& a, double tolerance = kModelTolerance,
                                  Execution execution = Execution::Parallel);
VerificationReport pi_residuals(const GeneratorFamily& t, double tolerance = kModelTolerance,
                                Execution execution = Execution::Parallel);

// ||a_i a_i^*|| <= 1/(1 - mu^2); for Fock closed forms also compares with the
// truncated value (1 - mu^{2N}) / (1 - mu^2).
VerificationReport norm_bound_check(const TccrFamily& a, bool fock_closed_form = true,
                                    double tolerance = kModelTolerance);

// Words in letters t_i / t_i^*; length uniform in 1..max_length, letters
// uniform over the 2d choices, word k drawn from its own substream of seed.
std::vector<symbolic::Word> sample_words(std::size_t count, int d, int max_length, std::uint64_t seed);

// Evidence for faithfulness of the Fock representation: each class norm is
// dominated by the Fock norm, and Fock norms do not decrease along a ladder
// of caps.
VerificationReport norm_domination_sample(std::span<const symbolic::Word> words, std::span<const IrrepSpec> classes,
                                          const IrrepSpec& fock, std::uint64_t seed,
                                          double tolerance = kSvdTolerance);

// Collapse of the Fock generators onto class j (see tensor_word.hpp) compared
// with build_irrep, plus multiplicativity on sampled word pairs.
VerificationReport psi_collapse_check(int d, int class_j, double phase, int cap, std::uint64_t seed = 42,
                                      std::size_t pair_samples = 20);

}  // namespace tccr
