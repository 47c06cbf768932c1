#pragma once

// The two mutually inverse constructions between twisted-CCR generators a_i
// and partial isometries t_i:
//
//   hat_s:   S_i from the polar decomposition a_i = C_i S_i, then
//            S^_1 = S_1, S^_i = (1 - sum_{k<i} S^_k S^_k^*) S_i
//   tilde_a: a_i^(i) = T_i t_i with T_i = (sum_{n>=1} mu^{2(n-1)} t_i^n t_i^{*n})^{1/2},
//            a_i^(j) = sum_{n>=0} mu^n t_j^n a_i^(j+1) t_j^{*n},  a~_i = a_i^(1)
//
// plus the lemma suite over the intermediate stages and the roundtrip check.

#include <map>
#include <utility>
#include <vector>

#include "tccr/fock_core.hpp"
#include "tccr/report.hpp"
#include "tccr/representations.hpp"

namespace tccr {

inline constexpr double kPreconditionTolerance = 1e-8;

struct ReconstructionTrace {
  // (i, j) -> a_i^(j) for 1 <= j <= i.
  std::map<std::pair<int, int>, LinearOperator> stages;
  // T_1..T_d, stored at index i-1.
  std::vector<LinearOperator> positive_parts;
  // P_0..P_d with P_j = 1 - sum_{k<=j} t_k t_k^*.
  std::vector<LinearOperator> defects;

  const LinearOperator& stage(int i, int j) const { return stages.at({i, j}); }
  const LinearOperator& T(int i) const { return positive_parts.at(static_cast<std::size_t>(i - 1)); }
  const LinearOperator& P(int j) const { return defects.at(static_cast<std::size_t>(j)); }
};

// sum_{n>=0} c^n t^n x t^{*n}. Stops on an exactly vanishing term (t nilpotent)
// or once the term is below 1e-15 of the partial sum in Frobenius norm.
LinearOperator conjugation_series(const LinearOperator& t, const LinearOperator& x, double c);

GeneratorFamily hat_s_family(const TccrFamily& a, double rank_tol = 1e-8);

struct TildeResult {
  TccrFamily family;
  ReconstructionTrace trace;
};

TildeResult tilde_a_family(const GeneratorFamily& t, double mu);

VerificationReport verify_lemma_suite(const GeneratorFamily& t, double mu, Execution execution = Execution::Parallel);

// Direction A: t -> a~(t) -> S^(a~) against t. Direction B: a -> S^(a) ->
// a~(S^) against a, where a is the closed-form Fock family for the Fock class
// and a~(t) otherwise. Both directions re-check the relations on the
// intermediate families.
VerificationReport roundtrip_check(const GeneratorFamily& t, double mu, double rank_tol = 1e-8);

// Relations between the polar factors C_i, S_i of a Fock family and the
// expansion a_i = sum_n mu^n S_1^n (1 - S_1 S_1^*) a_i S_1^{*n}.
VerificationReport polar_structure_checks(const TccrFamily& a, double rank_tol = 1e-8);

// One-mode q-CCR: the polar factor S of a is an isometry on the core and
// a = (sum_{n=1}^{N} q^{n-1} S^n S^{*n})^{1/2} S.
VerificationReport one_mode_polar_check(double q, int cap, double rank_tol = 1e-8);

}  // namespace tccr
