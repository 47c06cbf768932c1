#pragma once

// Formal tensor words: a scalar times a tensor product of per-slot words in
// the letters S, S^* and D = 1 - S S^*. The Fock generators are
//
//   t_i = D (x) ... (x) D (x) S (x) 1 (x) ... (x) 1      (S in slot i)
//
// and collapse(j, phase) is the substitution that keeps slots 1..j, sends
// S -> e^{i phase} in slot j+1 and S -> 1 in later slots, evaluating D there
// as 1 - s s^* for the scalar image s.

#include <vector>

#include "tccr/fock_core.hpp"

namespace tccr {

enum class SlotLetter { Shift, ShiftAdjoint, Defect };

using SlotWord = std::vector<SlotLetter>;

struct TensorWord {
  Complex scalar{1.0, 0.0};
  std::vector<SlotWord> slots;

  TensorWord adjoint() const;
  friend TensorWord operator*(const TensorWord& a, const TensorWord& b);
};

TensorWord fock_generator_word(int d, int i);

// Image in class j: j slots remain, the rest folds into the scalar.
TensorWord collapse(const TensorWord& w, int class_j, double phase);

// Matrix on the slot-count/cap basis of the word.
LinearOperator evaluate(const TensorWord& w, int cap);

}  // namespace tccr
