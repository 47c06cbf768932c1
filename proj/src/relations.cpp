#include "tccr/relations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tccr/tensor_word.hpp"

namespace tccr {

using symbolic::Letter;
using symbolic::MuPoly;
using symbolic::NcPolynomial;
using symbolic::Word;

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Tccr:
      return "TCCR";
    case RelationKind::PartialIsometry:
      return "PI";
    case RelationKind::Qccr:
      return "QCCR";
  }
  return "?";
}

Relation make_relation(std::string label, NcPolynomial lhs, NcPolynomial rhs) {
  const auto degree = static_cast<int>(std::max(lhs.max_length(), rhs.max_length()));
  return Relation{std::move(label), std::move(lhs), std::move(rhs), degree};
}

Relation Relation::adjoint() const { return make_relation(label + "^*", lhs.adjoint(), rhs.adjoint()); }

void RelationSet::add(std::string label, NcPolynomial lhs, NcPolynomial rhs) {
  relations_.push_back(make_relation(std::move(label), std::move(lhs), std::move(rhs)));
}

namespace {

NcPolynomial x(int i) { return NcPolynomial::letter(i, false); }
NcPolynomial xs(int i) { return NcPolynomial::letter(i, true); }

std::string pair_label(const char* name, int i, int j) {
  std::ostringstream out;
  out << name << '[' << i << ',' << j << ']';
  return out.str();
}

}  // namespace

RelationSet RelationSet::tccr(int d) {
  if (d < 1) throw ParameterError("relation set needs d >= 1");
  RelationSet set(RelationKind::Tccr, d);
  const MuPoly mu = MuPoly::mu();
  const MuPoly mu2 = mu * mu;
  for (int i = 1; i <= d; ++i) {
    NcPolynomial rhs = NcPolynomial::constant(MuPoly(1)) + mu2 * (x(i) * xs(i));
    for (int k = 1; k < i; ++k) rhs -= (MuPoly(1) - mu2) * (x(k) * xs(k));
    set.add("diag[" + std::to_string(i) + "]", xs(i) * x(i), rhs);
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      if (i != j) set.add(pair_label("twist", i, j), xs(i) * x(j), mu * (x(j) * xs(i)));
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      set.add(pair_label("order", j, i), x(j) * x(i), mu * (x(i) * x(j)));
    }
  }
  return set;
}

RelationSet RelationSet::partial_isometry(int d) {
  if (d < 1) throw ParameterError("relation set needs d >= 1");
  RelationSet set(RelationKind::PartialIsometry, d);
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      NcPolynomial rhs;
      if (i == j) {
        rhs = NcPolynomial::constant(MuPoly(1));
        for (int k = 1; k < i; ++k) rhs -= x(k) * xs(k);
      }
      set.add(pair_label("inner", i, j), xs(i) * x(j), rhs);
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      set.add(pair_label("order", j, i), x(j) * x(i), NcPolynomial());
    }
  }
  return set;
}

RelationSet RelationSet::qccr() {
  RelationSet set(RelationKind::Qccr, 1);
  set.add("qccr", xs(1) * x(1), NcPolynomial::constant(MuPoly(1)) + MuPoly::mu() * (x(1) * xs(1)));
  return set;
}

VerificationReport RelationSet::residuals(std::span<const LinearOperator> generators, double parameter,
                                          double tolerance, const std::string& prefix, Execution execution) const {
  if (static_cast<int>(generators.size()) != d_) {
    throw ParameterError("relation set expects " + std::to_string(d_) + " generators");
  }
  std::vector<CheckTask> tasks;
  for (const Relation& rel : relations_) {
    tasks.push_back({prefix + rel.label,
                     to_string(kind_) + ": " + symbolic::to_string(rel.lhs) + " = " + symbolic::to_string(rel.rhs),
                     tolerance, [&rel, generators, parameter] {
                       return core_residual(evaluate(rel.lhs, generators, parameter),
                                            evaluate(rel.rhs, generators, parameter), rel.degree);
                     }});
  }
  VerificationReport report("relation_residuals");
  for (Check& c : run_checks(tasks, execution)) report.add(std::move(c));
  return report;
}

LinearOperator evaluate_word(const Word& w, std::span<const LinearOperator> generators) {
  if (generators.empty()) throw ParameterError("evaluate_word: no generators");
  LinearOperator out = LinearOperator::identity(generators.front().basis());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->index < 1 || it->index > static_cast<int>(generators.size())) {
      throw ParameterError("evaluate_word: letter index outside the family");
    }
    const LinearOperator& g = generators[static_cast<std::size_t>(it->index - 1)];
    out = (it->starred ? g.adjoint() : g) * out;
  }
  return out;
}

LinearOperator evaluate(const NcPolynomial& p, std::span<const LinearOperator> generators, double parameter) {
  if (generators.empty()) throw ParameterError("evaluate: no generators");
  LinearOperator out = LinearOperator::zero(generators.front().basis());
  for (const auto& [w, c] : p.terms()) {
    out += Complex(c.evaluate(parameter)) * evaluate_word(w, generators);
  }
  return out;
}

VerificationReport tccr_residuals(const TccrFamily& a, double tolerance, Execution execution) {
  VerificationReport report = RelationSet::tccr(a.d()).residuals(a.ops, a.mu, tolerance, "tccr.", execution);
  VerificationReport out("tccr_residuals");
  out.set_param("d", static_cast<std::int64_t>(a.d()));
  out.set_param("mu", a.mu);
  out.set_param("cap", static_cast<std::int64_t>(a.basis.cap()));
  out.append(report);
  return out;
}

VerificationReport pi_residuals(const GeneratorFamily& t, double tolerance, Execution execution) {
  VerificationReport report =
      RelationSet::partial_isometry(t.d()).residuals(t.ops, 0.0, tolerance, "pi.", execution);
  VerificationReport out("pi_residuals");
  out.set_param("d", static_cast<std::int64_t>(t.d()));
  out.set_param("cap", static_cast<std::int64_t>(t.basis.cap()));
  if (t.spec) {
    out.set_param("class_j", static_cast<std::int64_t>(t.spec->class_j));
    out.set_param("phase", t.spec->phase);
  }
  out.append(report);
  return out;
}

VerificationReport norm_bound_check(const TccrFamily& a, bool fock_closed_form, double tolerance) {
  if (!(std::abs(a.mu) < 1.0)) throw ParameterError("norm_bound_check: |mu| must be < 1");
  VerificationReport report("norm_bound_check");
  const double mu2 = a.mu * a.mu;
  const double bound = 1.0 / (1.0 - mu2);
  const int cap = a.basis.cap();
  // (1 - mu^{2N}) / (1 - mu^2) = sum_{k<N} mu^{2k}
  const double truncated = geometric_sum(mu2, cap - 1);
  report.set_param("mu", a.mu);
  report.set_param("cap", static_cast<std::int64_t>(cap));
  report.set_param("bound", bound);
  if (fock_closed_form) report.set_param("truncated_value", truncated);
  for (int i = 1; i <= a.d(); ++i) {
    const double norm = operator_norm(a.a(i) * a.a(i).adjoint());
    const std::string idx = "[" + std::to_string(i) + "]";
    report.add("bound" + idx, "||a_i a_i^*|| <= 1/(1-mu^2) (norm " + format_double(norm) + ")",
               std::max(0.0, norm - bound), tolerance);
    if (fock_closed_form) {
      report.add("truncated" + idx, "||a_i a_i^*|| equals (1-mu^{2N})/(1-mu^2)", std::abs(norm - truncated),
                 tolerance);
    }
  }
  return report;
}

std::vector<Word> sample_words(std::size_t count, int d, int max_length, std::uint64_t seed) {
  if (d < 1 || max_length < 1) throw ParameterError("sample_words: need d >= 1 and max_length >= 1");
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> length(1, max_length);
    std::uniform_int_distribution<int> letter(0, 2 * d - 1);
    Word w;
    const int len = length(rng);
    for (int p = 0; p < len; ++p) {
      const int l = letter(rng);
      w.push_back(Letter{l % d + 1, l >= d});
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

std::string word_label(const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += 't' + std::to_string(l.index);
    if (l.starred) out += '*';
  }
  return out;
}

}  // namespace

VerificationReport norm_domination_sample(std::span<const Word> words, std::span<const IrrepSpec> classes,
                                          const IrrepSpec& fock, std::uint64_t seed, double tolerance) {
  if (!fock.is_fock()) throw ParameterError("norm_domination_sample: reference spec must be the Fock class");
  std::size_t longest = 0;
  for (const Word& w : words) longest = std::max(longest, w.size());
  if (longest > static_cast<std::size_t>(fock.cap)) {
    throw TruncationError("norm_domination_sample: word longer than the cap");
  }

  const GeneratorFamily fock_family = build_irrep(fock);
  std::vector<GeneratorFamily> class_families;
  for (IrrepSpec spec : classes) {
    spec.d = fock.d;
    spec.cap = fock.cap;
    class_families.push_back(build_irrep(spec));
  }
  std::vector<int> ladder;
  for (int cap = fock.cap - 4; cap <= fock.cap; cap += 2) {
    if (cap >= 1) ladder.push_back(cap);
  }
  std::vector<GeneratorFamily> ladder_families;
  for (int cap : ladder) {
    IrrepSpec spec = fock;
    spec.cap = cap;
    ladder_families.push_back(build_irrep(spec));
  }

  std::vector<CheckTask> tasks;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const Word& w = words[k];
    const std::string label = word_label(w);
    for (const GeneratorFamily& fam : class_families) {
      const IrrepSpec& spec = *fam.spec;
      std::ostringstream id;
      id << "dominate[w" << k << ",j=" << spec.class_j << ",phi=" << format_double(spec.phase) << "]";
      tasks.push_back({id.str(), "evidence: ||pi_j(" + label + ")|| <= ||pi_F(" + label + ")||", tolerance,
                       [&w, &fam, &fock_family] {
                         const double pi_norm = operator_norm(evaluate_word(w, fam.ops));
                         const double fock_norm = operator_norm(evaluate_word(w, fock_family.ops));
                         return std::max(0.0, pi_norm - fock_norm);
                       }});
    }
    tasks.push_back({"ladder[w" + std::to_string(k) + "]",
                     "evidence: ||pi_F(" + label + ")||_N non-decreasing in N", tolerance,
                     [&w, &ladder_families] {
                       double worst = 0.0;
                       double previous = -1.0;
                       for (const GeneratorFamily& fam : ladder_families) {
                         if (w.size() > static_cast<std::size_t>(fam.basis.cap())) continue;
                         const double norm = operator_norm(evaluate_word(w, fam.ops));
                         if (previous >= 0.0) worst = std::max(worst, previous - norm);
                         previous = norm;
                       }
                       return worst;
                     }});
  }

  VerificationReport report("norm_domination_sample");
  report.set_param("d", static_cast<std::int64_t>(fock.d));
  report.set_param("cap", static_cast<std::int64_t>(fock.cap));
  report.set_param("seed", static_cast<std::int64_t>(seed));
  report.set_param("words", static_cast<std::int64_t>(words.size()));
  for (Check& c : run_checks(tasks)) report.add(std::move(c));
  return report;
}

VerificationReport psi_collapse_check(int d, int class_j, double phase, int cap, std::uint64_t seed,
                                      std::size_t pair_samples) {
  if (d < 1) throw ParameterError("psi_collapse_check: d must be >= 1");
  if (class_j < 0 || class_j >= d) {
    throw ParameterError("psi_collapse_check: class_j must satisfy 0 <= j < d (the Fock class needs no collapse)");
  }
  constexpr double kExact = 1e-12;
  constexpr double kProduct = 1e-10;
  const GeneratorFamily fock = build_irrep({d, d, 0.0, cap, 0.0});
  const GeneratorFamily target = build_irrep({d, class_j, phase, cap, 0.0});

  VerificationReport report("psi_collapse_check");
  report.set_param("d", static_cast<std::int64_t>(d));
  report.set_param("class_j", static_cast<std::int64_t>(class_j));
  report.set_param("phase", phase);
  report.set_param("cap", static_cast<std::int64_t>(cap));
  report.set_param("seed", static_cast<std::int64_t>(seed));

  std::vector<TensorWord> generators;
  for (int i = 1; i <= d; ++i) {
    const TensorWord w = fock_generator_word(d, i);
    generators.push_back(w);
    const std::string idx = "[" + std::to_string(i) + "]";
    report.add("fock_word" + idx, "tensor word of pi_F(t_i) evaluates to the Fock generator",
               operator_norm((evaluate(w, cap) - fock.t(i)).matrix()), kExact);
    const TensorWord image = collapse(w, class_j, phase);
    report.add("psi" + idx, "psi(pi_F(t_i)) equals pi_j(t_i)", operator_norm((evaluate(image, cap) - target.t(i)).matrix()),
               kExact);
    report.add("psi_adjoint" + idx, "psi(pi_F(t_i)^*) equals pi_j(t_i)^*",
               operator_norm((evaluate(collapse(w.adjoint(), class_j, phase), cap) - target.t(i).adjoint()).matrix()),
               kExact);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, 3);
  std::uniform_int_distribution<int> pick(0, 2 * d - 1);
  auto random_word = [&] {
    const int len = length(rng);
    TensorWord out;
    out.slots.assign(static_cast<std::size_t>(d), {});
    for (int k = 0; k < len; ++k) {
      const int l = pick(rng);
      const TensorWord& g = generators[static_cast<std::size_t>(l % d)];
      out = out * (l >= d ? g.adjoint() : g);
    }
    return out;
  };
  for (std::size_t s = 0; s < pair_samples; ++s) {
    const TensorWord u = random_word();
    const TensorWord v = random_word();
    const LinearOperator whole = evaluate(collapse(u * v, class_j, phase), cap);
    const LinearOperator split = evaluate(collapse(u, class_j, phase), cap) * evaluate(collapse(v, class_j, phase), cap);
    report.add("multiplicative[" + std::to_string(s) + "]", "psi(uv) = psi(u) psi(v)",
               operator_norm((whole - split).matrix()), kProduct);
  }
  return report;
}

}  // namespace tccr
