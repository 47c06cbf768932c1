#include "tccr/tensor_word.hpp"

#include <complex>

#include "tccr/errors.hpp"

namespace tccr {

namespace {

SlotLetter adjoint_letter(SlotLetter l) {
  switch (l) {
    case SlotLetter::Shift:
      return SlotLetter::ShiftAdjoint;
    case SlotLetter::ShiftAdjoint:
      return SlotLetter::Shift;
    case SlotLetter::Defect:
      return SlotLetter::Defect;
  }
  return l;
}

Complex scalar_image(const SlotWord& w, Complex shift_image) {
  Complex out(1.0, 0.0);
  for (SlotLetter l : w) {
    switch (l) {
      case SlotLetter::Shift:
        out *= shift_image;
        break;
      case SlotLetter::ShiftAdjoint:
        out *= std::conj(shift_image);
        break;
      case SlotLetter::Defect:
        out *= Complex(1.0) - shift_image * std::conj(shift_image);
        break;
    }
  }
  return out;
}

Matrix slot_matrix(const SlotWord& w, int cap) {
  const auto n = static_cast<Eigen::Index>(cap + 1);
  const Matrix shift = truncated_shift(cap);
  Matrix out = Matrix::Identity(n, n);
  for (SlotLetter l : w) {
    switch (l) {
      case SlotLetter::Shift:
        out = (out * shift).eval();
        break;
      case SlotLetter::ShiftAdjoint:
        out = (out * shift.adjoint()).eval();
        break;
      case SlotLetter::Defect:
        out = (out * vacuum_projector(cap)).eval();
        break;
    }
  }
  return out;
}

}  // namespace

TensorWord TensorWord::adjoint() const {
  TensorWord out;
  out.scalar = std::conj(scalar);
  for (const SlotWord& w : slots) {
    SlotWord rev(w.rbegin(), w.rend());
    for (SlotLetter& l : rev) l = adjoint_letter(l);
    out.slots.push_back(std::move(rev));
  }
  return out;
}

TensorWord operator*(const TensorWord& a, const TensorWord& b) {
  if (a.slots.size() != b.slots.size()) throw BasisMismatchError("tensor words with different slot counts");
  TensorWord out;
  out.scalar = a.scalar * b.scalar;
  for (std::size_t k = 0; k < a.slots.size(); ++k) {
    SlotWord w = a.slots[k];
    w.insert(w.end(), b.slots[k].begin(), b.slots[k].end());
    out.slots.push_back(std::move(w));
  }
  return out;
}

TensorWord fock_generator_word(int d, int i) {
  if (i < 1 || i > d) throw ParameterError("fock_generator_word: index outside 1..d");
  TensorWord out;
  for (int k = 1; k <= d; ++k) {
    if (k < i) {
      out.slots.push_back({SlotLetter::Defect});
    } else if (k == i) {
      out.slots.push_back({SlotLetter::Shift});
    } else {
      out.slots.push_back({});
    }
  }
  return out;
}

TensorWord collapse(const TensorWord& w, int class_j, double phase) {
  const int d = static_cast<int>(w.slots.size());
  if (class_j < 0 || class_j >= d) throw ParameterError("collapse: class_j must satisfy 0 <= j < d");
  TensorWord out;
  out.scalar = w.scalar;
  for (int k = 0; k < d; ++k) {
    const auto& slot = w.slots[static_cast<std::size_t>(k)];
    if (k < class_j) {
      out.slots.push_back(slot);
    } else if (k == class_j) {
      out.scalar *= scalar_image(slot, std::polar(1.0, phase));
    } else {
      out.scalar *= scalar_image(slot, Complex(1.0, 0.0));
    }
  }
  return out;
}

LinearOperator evaluate(const TensorWord& w, int cap) {
  FockBasis basis(static_cast<int>(w.slots.size()), cap);
  std::vector<Matrix> factors;
  factors.reserve(w.slots.size());
  for (const SlotWord& s : w.slots) factors.push_back(slot_matrix(s, cap));
  return LinearOperator(std::move(basis), w.scalar * kron(factors));
}

}  // namespace tccr
