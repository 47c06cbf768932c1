#pragma once

// Exact *-algebra engine for the twisted CCR.
//
// Elements of the free *-algebra on x_1..x_d are finite sums of words with
// coefficients in Q[mu]. normal_order applies the rewrite rules
//
//   R1  x_i^* x_i -> 1 + mu^2 x_i x_i^* - (1 - mu^2) sum_{k<i} x_k x_k^*
//   R2  x_i^* x_j -> mu x_j x_i^*                         (i != j)
//   R3  x_j x_i   -> mu x_i x_j                           (j > i)
//   R4  x_i^* x_j^* -> mu x_j^* x_i^*                     (i < j)
//
// until no rule applies. Normal words list unstarred letters with
// non-decreasing indices followed by starred letters with non-increasing
// indices, so the vacuum expectation is the coefficient of the empty word.

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Dense>

#include "tccr/report.hpp"
#include "tccr/representations.hpp"

namespace tccr::symbolic {

using Rational = mpq_class;

struct Letter {
  int index = 1;
  bool starred = false;

  Letter adjoint() const { return {index, !starred}; }
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Length first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const;
};

Word adjoint(const Word& w);
bool is_normal(const Word& w);
std::string to_string(const Word& w);

// Polynomial in mu with rational coefficients; zero coefficients never stored.
class MuPoly {
 public:
  MuPoly() = default;
  MuPoly(long constant);  // NOLINT(google-explicit-constructor)
  explicit MuPoly(const Rational& constant);
  static MuPoly monomial(const Rational& coeff, int exponent);
  static MuPoly mu() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int exponent) const;
  int degree() const;

  double evaluate(double mu) const;

  MuPoly& operator+=(const MuPoly& other);
  MuPoly& operator-=(const MuPoly& other);
  MuPoly& operator*=(const MuPoly& other);
  friend MuPoly operator+(MuPoly a, const MuPoly& b) { return a += b; }
  friend MuPoly operator-(MuPoly a, const MuPoly& b) { return a -= b; }
  friend MuPoly operator*(MuPoly a, const MuPoly& b) { return a *= b; }
  friend MuPoly operator-(const MuPoly& a) { return MuPoly() - a; }
  bool operator==(const MuPoly& other) const { return coeffs_ == other.coeffs_; }

 private:
  void add_term(int exponent, const Rational& coeff);
  std::map<int, Rational> coeffs_;
};

std::string to_string(const MuPoly& p);

class NcPolynomial {
 public:
  using TermMap = std::map<Word, MuPoly, WordOrder>;

  NcPolynomial() = default;
  static NcPolynomial constant(const MuPoly& c);
  static NcPolynomial word(Word w, const MuPoly& c = MuPoly(1));
  static NcPolynomial letter(int index, bool starred = false);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_length() const;
  int max_index() const;

  void add_term(const Word& w, const MuPoly& c);

  NcPolynomial adjoint() const;

  NcPolynomial& operator+=(const NcPolynomial& other);
  NcPolynomial& operator-=(const NcPolynomial& other);
  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);
  friend NcPolynomial operator*(const MuPoly& c, const NcPolynomial& p);
  bool operator==(const NcPolynomial& other) const { return terms_ == other.terms_; }

 private:
  TermMap terms_;
};

std::string to_string(const NcPolynomial& p);

// Text format: letters a1, a1*, juxtaposition for products, + and -,
// rational coefficients (3, 3/4, 0.25) and mu or mu^k factors.
NcPolynomial parse_polynomial(const std::string& text, int d);

enum class Strategy {
  // Normalize the suffix first, then resolve the redex at the front.
  LeftmostInnermost,
  // Always rewrite the leftmost redex of the whole word.
  LeftmostOutermost,
};

NcPolynomial normal_order(const NcPolynomial& p, int d, Strategy strategy = Strategy::LeftmostInnermost);

MuPoly vacuum_expectation(const NcPolynomial& p, int d);

inline constexpr int kDefaultGramLevel = 4;
inline constexpr int kMaxGramD = 3;

// Unstarred words of length <= level, length-then-lexicographic.
std::vector<Word> gram_basis(int level, int d);

using GramMatrix = std::vector<std::vector<MuPoly>>;

// entry(v, w) = <w Omega, v Omega> = vacuum_expectation(w^* v).
GramMatrix gram_matrix(int level, int d, int max_level = kDefaultGramLevel);

Eigen::MatrixXd evaluate(const GramMatrix& gram, double mu);
double min_eigenvalue(const Eigen::MatrixXd& symmetric);

// <Omega, p(a) Omega> in the truncated model, with x_i -> a_i.
Complex model_vacuum_expectation(const NcPolynomial& p, const TccrFamily& family);

VerificationReport eval_and_bridge(const NcPolynomial& p, const TccrFamily& family, double tolerance = 1e-10);

// Random element with 1..max_terms terms, words of length <= max_degree over
// x_1..x_d (starred or not) and small rational coefficients times mu^k.
NcPolynomial random_polynomial(std::mt19937_64& rng, int d, int max_degree, int max_terms = 4);

}  // namespace tccr::symbolic
