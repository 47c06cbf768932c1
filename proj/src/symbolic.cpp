#include "tccr/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "tccr/errors.hpp"

namespace tccr::symbolic {

bool WordOrder::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word adjoint(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->adjoint());
  return out;
}

namespace {

// Whether the adjacent pair (p, q) is the left side of a rewrite rule.
bool reducible(const Letter& p, const Letter& q) {
  if (p.starred && !q.starred) return true;                     // R1, R2
  if (!p.starred && !q.starred) return p.index > q.index;       // R3
  if (p.starred && q.starred) return p.index < q.index;         // R4
  return false;
}

}  // namespace

bool is_normal(const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (reducible(w[k], w[k + 1])) return false;
  }
  return true;
}

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += 'a' + std::to_string(w[k].index);
    if (w[k].starred) out += '*';
  }
  return out;
}

// ---------------------------------------------------------------------------

MuPoly::MuPoly(long constant) {
  if (constant != 0) coeffs_.emplace(0, Rational(constant));
}

MuPoly::MuPoly(const Rational& constant) {
  if (constant != 0) coeffs_.emplace(0, constant);
}

MuPoly MuPoly::monomial(const Rational& coeff, int exponent) {
  if (exponent < 0) throw ParameterError("negative power of mu");
  MuPoly p;
  p.add_term(exponent, coeff);
  return p;
}

Rational MuPoly::coefficient(int exponent) const {
  const auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

int MuPoly::degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

double MuPoly::evaluate(double mu) const {
  // Horner from the top exponent down.
  double acc = 0.0;
  int current = degree();
  if (current < 0) return 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (; current > it->first; --current) acc *= mu;
    acc += it->second.get_d();
  }
  for (; current > 0; --current) acc *= mu;
  return acc;
}

void MuPoly::add_term(int exponent, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
}

MuPoly& MuPoly::operator+=(const MuPoly& other) {
  for (const auto& [e, c] : other.coeffs_) add_term(e, c);
  return *this;
}

MuPoly& MuPoly::operator-=(const MuPoly& other) {
  for (const auto& [e, c] : other.coeffs_) add_term(e, -c);
  return *this;
}

MuPoly& MuPoly::operator*=(const MuPoly& other) {
  MuPoly out;
  for (const auto& [e1, c1] : coeffs_) {
    for (const auto& [e2, c2] : other.coeffs_) out.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

namespace {

// One signed monomial c mu^k [word]; `first` suppresses a leading "+ ".
void append_monomial(std::string& out, bool first, const Rational& c, int exponent, const std::string& word) {
  const bool negative = c < 0;
  if (first) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  const Rational magnitude = abs(c);
  std::vector<std::string> factors;
  if (magnitude != 1 || (exponent == 0 && word.empty())) factors.push_back(magnitude.get_str());
  if (exponent == 1) factors.emplace_back("mu");
  if (exponent > 1) factors.push_back("mu^" + std::to_string(exponent));
  if (!word.empty()) factors.push_back(word);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) out += ' ';
    out += factors[k];
  }
}

}  // namespace

std::string to_string(const MuPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.coefficients()) {
    append_monomial(out, first, c, e, "");
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

NcPolynomial NcPolynomial::constant(const MuPoly& c) { return word({}, c); }

NcPolynomial NcPolynomial::word(Word w, const MuPoly& c) {
  NcPolynomial p;
  p.add_term(w, c);
  return p;
}

NcPolynomial NcPolynomial::letter(int index, bool starred) { return word({Letter{index, starred}}); }

std::size_t NcPolynomial::max_length() const {
  std::size_t out = 0;
  for (const auto& [w, c] : terms_) out = std::max(out, w.size());
  return out;
}

int NcPolynomial::max_index() const {
  int out = 0;
  for (const auto& [w, c] : terms_) {
    for (const Letter& l : w) out = std::max(out, l.index);
  }
  return out;
}

void NcPolynomial::add_term(const Word& w, const MuPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NcPolynomial NcPolynomial::adjoint() const {
  // Coefficients are real, so only the words change.
  NcPolynomial out;
  for (const auto& [w, c] : terms_) out.add_term(symbolic::adjoint(w), c);
  return out;
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
  NcPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

NcPolynomial operator*(const MuPoly& c, const NcPolynomial& p) {
  NcPolynomial out;
  for (const auto& [w, cw] : p.terms_) out.add_term(w, c * cw);
  return out;
}

std::string to_string(const NcPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    const std::string word = to_string(w);
    for (const auto& [e, r] : c.coefficients()) {
      append_monomial(out, first, r, e, word);
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_indices(const NcPolynomial& p, int d) {
  for (const auto& [w, c] : p.terms()) {
    for (const Letter& l : w) {
      if (l.index < 1 || l.index > d) {
        std::ostringstream msg;
        msg << "letter index " << l.index << " outside 1.." << d;
        throw ParameterError(msg.str());
      }
    }
  }
}

// Right-hand side of the rule for the reducible pair (p, q).
std::vector<std::pair<Word, MuPoly>> rewrite_pair(const Letter& p, const Letter& q) {
  const MuPoly mu = MuPoly::mu();
  if (p.starred && !q.starred) {
    if (p.index == q.index) {
      const int i = p.index;
      std::vector<std::pair<Word, MuPoly>> out;
      out.emplace_back(Word{}, MuPoly(1));
      out.emplace_back(Word{Letter{i, false}, Letter{i, true}}, mu * mu);
      const MuPoly defect = MuPoly(-1) + mu * mu;  // -(1 - mu^2)
      for (int k = 1; k < i; ++k) {
        out.emplace_back(Word{Letter{k, false}, Letter{k, true}}, defect);
      }
      return out;
    }
    return {{Word{q, p}, mu}};
  }
  // R3 and R4 both swap the pair with a factor mu.
  return {{Word{q, p}, mu}};
}

// Replaces positions (pos, pos + 1) of w with the rule output.
std::vector<std::pair<Word, MuPoly>> rewrite_at(const Word& w, std::size_t pos) {
  std::vector<std::pair<Word, MuPoly>> out;
  for (auto& [replacement, c] : rewrite_pair(w[pos], w[pos + 1])) {
    Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    next.insert(next.end(), replacement.begin(), replacement.end());
    next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
    out.emplace_back(std::move(next), std::move(c));
  }
  return out;
}

class InnermostReducer {
 public:
  const NcPolynomial& reduce(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    NcPolynomial result;
    if (w.size() <= 1 || is_normal(w)) {
      result = NcPolynomial::word(w);
    } else {
      const Word tail(w.begin() + 1, w.end());
      const NcPolynomial tail_nf = reduce(tail);
      for (const auto& [u, c] : tail_nf.terms()) {
        Word v;
        v.reserve(u.size() + 1);
        v.push_back(w.front());
        v.insert(v.end(), u.begin(), u.end());
        if (v.size() < 2 || !reducible(v[0], v[1])) {
          result.add_term(v, c);
          continue;
        }
        for (const auto& [next, rc] : rewrite_at(v, 0)) {
          result += (c * rc) * reduce(next);
        }
      }
    }
    return memo_.emplace(w, std::move(result)).first->second;
  }

 private:
  std::map<Word, NcPolynomial, WordOrder> memo_;
};

NcPolynomial reduce_outermost(const NcPolynomial& p) {
  NcPolynomial current = p;
  NcPolynomial done;
  while (!current.is_zero()) {
    NcPolynomial next;
    for (const auto& [w, c] : current.terms()) {
      std::size_t pos = 0;
      while (pos + 1 < w.size() && !reducible(w[pos], w[pos + 1])) ++pos;
      if (pos + 1 >= w.size()) {
        done.add_term(w, c);
        continue;
      }
      for (const auto& [nw, rc] : rewrite_at(w, pos)) next.add_term(nw, c * rc);
    }
    current = std::move(next);
  }
  return done;
}

}  // namespace

NcPolynomial normal_order(const NcPolynomial& p, int d, Strategy strategy) {
  check_indices(p, d);
  if (strategy == Strategy::LeftmostOutermost) return reduce_outermost(p);
  InnermostReducer reducer;
  NcPolynomial out;
  for (const auto& [w, c] : p.terms()) out += c * reducer.reduce(w);
  return out;
}

MuPoly vacuum_expectation(const NcPolynomial& p, int d) {
  const NcPolynomial nf = normal_order(p, d);
  const auto it = nf.terms().find(Word{});
  return it == nf.terms().end() ? MuPoly() : it->second;
}

// ---------------------------------------------------------------------------

std::vector<Word> gram_basis(int level, int d) {
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= level; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int i = 1; i <= d; ++i) {
        Word v = w;
        v.push_back(Letter{i, false});
        next.push_back(std::move(v));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

GramMatrix gram_matrix(int level, int d, int max_level) {
  if (level < 0 || level > max_level) {
    std::ostringstream msg;
    msg << "gram level " << level << " outside 0.." << max_level;
    throw CapacityError(msg.str());
  }
  if (d < 1 || d > kMaxGramD) {
    std::ostringstream msg;
    msg << "gram matrix supports 1 <= d <= " << kMaxGramD << ", got " << d;
    throw CapacityError(msg.str());
  }
  const auto basis = gram_basis(level, d);
  const std::size_t n = basis.size();
  GramMatrix gram(n, std::vector<MuPoly>(n));
  InnermostReducer reducer;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      Word w = adjoint(basis[c]);
      w.insert(w.end(), basis[r].begin(), basis[r].end());
      const NcPolynomial& nf = reducer.reduce(w);
      const auto it = nf.terms().find(Word{});
      MuPoly value = it == nf.terms().end() ? MuPoly() : it->second;
      gram[r][c] = value;
      gram[c][r] = std::move(value);
    }
  }
  return gram;
}

Eigen::MatrixXd evaluate(const GramMatrix& gram, double mu) {
  const auto n = static_cast<Eigen::Index>(gram.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].evaluate(mu);
    }
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

Complex model_vacuum_expectation(const NcPolynomial& p, const TccrFamily& family) {
  const int cap = family.basis.cap();
  if (p.max_length() > static_cast<std::size_t>(cap)) {
    std::ostringstream msg;
    msg << "word length " << p.max_length() << " exceeds the truncation cap " << cap;
    throw TruncationError(msg.str());
  }
  check_indices(p, family.d());
  const auto dim = static_cast<Eigen::Index>(family.basis.size());
  Complex total(0.0);
  for (const auto& [w, c] : p.terms()) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const Matrix& m = family.a(it->index).matrix();
      if (it->starred) {
        v = (m.adjoint() * v).eval();
      } else {
        v = (m * v).eval();
      }
    }
    total += c.evaluate(family.mu) * v(0);
  }
  return total;
}

VerificationReport eval_and_bridge(const NcPolynomial& p, const TccrFamily& family, double tolerance) {
  VerificationReport report("eval_and_bridge");
  report.set_param("polynomial", to_string(p));
  report.set_param("mu", family.mu);
  report.set_param("cap", static_cast<std::int64_t>(family.basis.cap()));
  const Complex model = model_vacuum_expectation(p, family);
  const double exact = vacuum_expectation(p, family.d()).evaluate(family.mu);
  report.add("bridge", "<Omega, p(a) Omega> in the truncated model equals the normal-ordered vacuum coefficient",
             std::abs(model - Complex(exact)), tolerance);
  return report;
}

NcPolynomial random_polynomial(std::mt19937_64& rng, int d, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> length(0, max_degree);
  std::uniform_int_distribution<int> index(1, d);
  std::uniform_int_distribution<int> star(0, 1);
  std::uniform_int_distribution<int> numerator(-5, 5);
  std::uniform_int_distribution<int> denominator(1, 4);
  std::uniform_int_distribution<int> mu_power(0, 2);
  NcPolynomial p;
  const int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int len = length(rng);
    for (int k = 0; k < len; ++k) w.push_back(Letter{index(rng), star(rng) == 1});
    int num = numerator(rng);
    if (num == 0) num = 1;
    Rational coeff(mpz_class(num), mpz_class(denominator(rng)));
    coeff.canonicalize();
    p.add_term(w, MuPoly::monomial(coeff, mu_power(rng)));
  }
  return p;
}

}  // namespace tccr::symbolic
