#include <cctype>
#include <sstream>

#include "tccr/errors.hpp"
#include "tccr/symbolic.hpp"

namespace tccr::symbolic {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int d) : text_(text), d_(d) {}

  NcPolynomial parse() {
    NcPolynomial out;
    skip_space();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      out += parse_term(sign);
      first = false;
      skip_space();
    }
    return out;
  }

 private:
  NcPolynomial parse_term(int sign) {
    Rational coeff(sign);
    int mu_power = 0;
    Word word;
    bool any = false;
    while (true) {
      skip_space();
      if (at_end() || peek() == '+' || peek() == '-') break;
      const std::size_t start = pos_;
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff *= parse_number();
      } else if (text_.compare(pos_, 2, "mu") == 0) {
        pos_ += 2;
        int power = 1;
        if (!at_end() && peek() == '^') {
          ++pos_;
          power = parse_integer("exponent after '^'");
        }
        mu_power += power;
      } else if (ch == 'a') {
        ++pos_;
        const int index = parse_integer("generator index after 'a'");
        if (index < 1 || index > d_) {
          std::ostringstream msg;
          msg << "generator index " << index << " outside 1.." << d_;
          throw ParseError(msg.str(), start);
        }
        bool starred = false;
        if (!at_end() && peek() == '*') {
          starred = true;
          ++pos_;
        }
        word.push_back(Letter{index, starred});
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
      }
      any = true;
    }
    if (!any) throw ParseError("expected a term", pos_);
    return NcPolynomial::word(std::move(word), MuPoly::monomial(coeff, mu_power));
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
    Rational value{mpz_class(digits)};
    if (!at_end() && peek() == '.') {
      ++pos_;
      std::string frac;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) frac += text_[pos_++];
      if (frac.empty()) throw ParseError("digits expected after '.'", pos_);
      mpz_class scale = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
      value += Rational(mpz_class(frac), scale);
    } else if (!at_end() && peek() == '/') {
      ++pos_;
      std::string den;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) den += text_[pos_++];
      if (den.empty()) throw ParseError("denominator expected after '/'", pos_);
      mpz_class denominator(den);
      if (denominator == 0) throw ParseError("zero denominator", start);
      value /= Rational(denominator);
    }
    value.canonicalize();
    return value;
  }

  int parse_integer(const char* what) {
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
    if (digits.empty() || digits.size() > 6) throw ParseError(std::string("expected ") + what, pos_);
    return std::stoi(digits);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  const std::string& text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

NcPolynomial parse_polynomial(const std::string& text, int d) { return Parser(text, d).parse(); }

}  // namespace tccr::symbolic
