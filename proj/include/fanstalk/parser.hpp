// fanstalk: binomial parsing, normalization, and formatting.
//
// A system file declares an ordered variable list ("vars: x y z") and one
// binomial per line.  Every line is parsed as a general arithmetic expression,
// expanded exactly over Q, and then normalized to the shape
//
//     unit * x^C * (x^A - lambda * x^B),    supp(A) disjoint from supp(B),
//
// or to a plain monomial unit * x^C.  Expressions that expand to three or
// more terms (or to zero) are rejected.
// Distributed under the MIT license; see LICENSE.

#ifndef FANSTALK_PARSER_HPP
#define FANSTALK_PARSER_HPP

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanstalk/numeric.hpp"

namespace fanstalk {

/// Ordered list of variable names; the coordinate order of every exponent
/// vector in the system.
struct VariableOrder {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const VariableOrder& other) const = default;
};

/// A variable name is a letter followed by letters, digits, underscores or
/// primes.
inline bool valid_variable_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '\'')
      return false;
  return true;
}

enum class BinomialKind { Monomial, Pure };

/// Normalized binomial.  The monomial factor C is the componentwise gcd of
/// the two terms; A and B then have disjoint supports and are not both zero.
/// `unit` is the leading coefficient divided out during normalization; it
/// never affects any downstream geometry.
struct Binomial {
  VariableOrder order;
  IntVec c;
  BinomialKind kind = BinomialKind::Monomial;
  IntVec a, b;     // Pure only
  Rat lambda = 1;  // Pure only, nonzero
  Rat unit = 1;

  bool is_pure() const { return kind == BinomialKind::Pure; }

  bool operator==(const Binomial& other) const = default;
};

struct BinomialSystem {
  VariableOrder order;
  std::vector<Binomial> members;
};

namespace detail {

// --- expression expansion --------------------------------------------------

/// Exact multivariate polynomial; terms keep first-appearance order so the
/// "leading" term of a two-term expansion is well defined and deterministic.
struct Poly {
  std::vector<std::pair<IntVec, Rat>> terms;
  std::size_t dim = 0;

  void add_term(const IntVec& e, const Rat& c) {
    if (c == 0) return;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      if (it->first == e) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
        return;
      }
    }
    terms.emplace_back(e, c);
  }
};

inline Poly poly_const(std::size_t dim, const Rat& c) {
  Poly p;
  p.dim = dim;
  p.add_term(IntVec(dim, Int(0)), c);
  return p;
}

inline Poly poly_var(std::size_t dim, std::size_t i) {
  Poly p;
  p.dim = dim;
  p.add_term(unit_vector(dim, i), 1);
  return p;
}

inline Poly poly_add(const Poly& a, const Poly& b, bool subtract) {
  Poly r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, subtract ? Rat(-c) : c);
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.dim = a.dim;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) r.add_term(add(ea, eb), ca * cb);
  return r;
}

// --- tokenizer ---------------------------------------------------------------

enum class TokKind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::size_t pos;   // byte offset into the expression
  std::string text;  // identifier text
  Rat value;         // number value
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) return {TokKind::End, start, "", 0};
    char ch = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(ch))) return lex_ident(start);
    ++i_;
    switch (ch) {
      case '+': return {TokKind::Plus, start, "+", 0};
      case '-': return {TokKind::Minus, start, "-", 0};
      case '*': return {TokKind::Star, start, "*", 0};
      case '^': return {TokKind::Caret, start, "^", 0};
      case '(': return {TokKind::LParen, start, "(", 0};
      case ')': return {TokKind::RParen, start, ")", 0};
      default:
        throw Error(ErrorKind::SyntaxError,
                    "unexpected character '" + std::string(1, ch) + "' at column " +
                        std::to_string(start + 1));
    }
  }

 private:
  Token lex_number(std::size_t start) {
    Int num = read_digits();
    Int den = 1;
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        throw Error(ErrorKind::SyntaxError,
                    "expected digits after '/' at column " + std::to_string(i_ + 1));
      den = read_digits();
      if (den == 0)
        throw Error(ErrorKind::SyntaxError,
                    "zero denominator at column " + std::to_string(start + 1));
    }
    return {TokKind::Number, start, "", Rat(num, den)};
  }

  Token lex_ident(std::size_t start) {
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                             s_[j] == '_' || s_[j] == '\''))
      ++j;
    std::string name = s_.substr(i_, j - i_);
    i_ = j;
    return {TokKind::Ident, start, name, 0};
  }

  Int read_digits() {
    Int v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_] - '0');
      ++i_;
    }
    return v;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

/// Recursive-descent expansion.  Implicit multiplication ("2x", "x y") is a
/// deliberate syntax error so exponent typos never parse as products.
class ExprParser {
 public:
  ExprParser(const std::string& s, const VariableOrder& order)
      : lexer_(s), order_(order) {
    advance();
  }

  Poly parse() {
    Poly p = parse_expr();
    if (tok_.kind != TokKind::End)
      throw Error(ErrorKind::SyntaxError,
                  "unexpected trailing input at column " + std::to_string(tok_.pos + 1));
    return p;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  Poly parse_expr() {
    bool negative = false;
    if (tok_.kind == TokKind::Plus || tok_.kind == TokKind::Minus) {
      negative = tok_.kind == TokKind::Minus;
      advance();
    }
    Poly p = parse_term();
    if (negative) p = poly_add(poly_const(order_.size(), 0), p, true);
    while (tok_.kind == TokKind::Plus || tok_.kind == TokKind::Minus) {
      bool subtract = tok_.kind == TokKind::Minus;
      advance();
      p = poly_add(p, parse_term(), subtract);
    }
    return p;
  }

  Poly parse_term() {
    Poly p = parse_factor();
    while (true) {
      if (tok_.kind == TokKind::Star) {
        advance();
        p = poly_mul(p, parse_factor());
      } else if (tok_.kind == TokKind::Number || tok_.kind == TokKind::Ident ||
                 tok_.kind == TokKind::LParen) {
        throw Error(ErrorKind::SyntaxError,
                    "implicit multiplication at column " + std::to_string(tok_.pos + 1) +
                        " (write '*' explicitly)");
      } else {
        return p;
      }
    }
  }

  Poly parse_factor() {
    Poly base = parse_atom();
    if (tok_.kind != TokKind::Caret) return base;
    advance();
    bool negative = false;
    std::size_t sign_pos = tok_.pos;
    if (tok_.kind == TokKind::Minus) {
      negative = true;
      advance();
    }
    if (tok_.kind != TokKind::Number || denominator(tok_.value) != 1)
      throw Error(ErrorKind::SyntaxError,
                  "expected integer exponent at column " + std::to_string(tok_.pos + 1));
    Int e = numerator(tok_.value);
    if (negative)
      throw Error(ErrorKind::NegativeExponent,
                  "negative exponent at column " + std::to_string(sign_pos + 1));
    advance();
    return pow_poly(base, e);
  }

  Poly parse_atom() {
    if (tok_.kind == TokKind::Number) {
      Poly p = poly_const(order_.size(), tok_.value);
      advance();
      return p;
    }
    if (tok_.kind == TokKind::Ident) {
      auto idx = order_.index_of(tok_.text);
      if (!idx)
        throw Error(ErrorKind::UnknownVariable,
                    "unknown variable '" + tok_.text + "' at column " +
                        std::to_string(tok_.pos + 1));
      Poly p = poly_var(order_.size(), *idx);
      advance();
      return p;
    }
    if (tok_.kind == TokKind::LParen) {
      advance();
      Poly p = parse_expr();
      if (tok_.kind != TokKind::RParen)
        throw Error(ErrorKind::SyntaxError,
                    "expected ')' at column " + std::to_string(tok_.pos + 1));
      advance();
      return p;
    }
    throw Error(ErrorKind::SyntaxError,
                "expected a number, variable or '(' at column " +
                    std::to_string(tok_.pos + 1));
  }

  Poly pow_poly(const Poly& base, const Int& e) {
    if (e == 0) return poly_const(order_.size(), 1);
    if (base.terms.size() <= 1) {
      // Monomial powers stay monomials: scale exponents, power the coefficient.
      Poly p;
      p.dim = base.dim;
      if (!base.terms.empty()) {
        const auto& [exps, coeff] = base.terms.front();
        p.add_term(scale(e, exps), rat_pow(coeff, e));
      }
      return p;
    }
    if (e > 64)
      throw Error(ErrorKind::SyntaxError,
                  "exponent too large to expand a multi-term base");
    Poly r = poly_const(order_.size(), 1);
    Poly b = base;
    Int k = e;
    while (k > 0) {
      if (boost::multiprecision::bit_test(k, 0)) r = poly_mul(r, b);
      k >>= 1;
      if (k > 0) b = poly_mul(b, b);
    }
    return r;
  }

  Lexer lexer_;
  Token tok_{TokKind::End, 0, "", 0};
  const VariableOrder& order_;
};

} // namespace detail

/// Parses one expression and normalizes it to a Binomial.  The expansion must
/// have exactly one or two terms; the first term's coefficient becomes the
/// stored unit, and for two-term input the monomial gcd is split off into C.
inline Binomial parse_binomial(const std::string& text, const VariableOrder& order) {
  detail::ExprParser parser(text, order);
  detail::Poly poly = parser.parse();

  Binomial b;
  b.order = order;
  if (poly.terms.empty())
    throw Error(ErrorKind::NotBinomial, "expression expands to the zero polynomial");
  if (poly.terms.size() > 2)
    throw Error(ErrorKind::NotBinomial,
                "expression expands to " + std::to_string(poly.terms.size()) +
                    " terms; at most two are allowed");

  const auto& [p_exps, p_coeff] = poly.terms.front();
  if (poly.terms.size() == 1) {
    b.kind = BinomialKind::Monomial;
    b.c = p_exps;
    b.unit = p_coeff;
    b.a.assign(order.size(), Int(0));
    b.b.assign(order.size(), Int(0));
    return b;
  }

  const auto& [q_exps, q_coeff] = poly.terms.back();
  b.kind = BinomialKind::Pure;
  b.c = vmin(p_exps, q_exps);
  b.a = sub(p_exps, b.c);
  b.b = sub(q_exps, b.c);
  b.unit = p_coeff;
  b.lambda = -q_coeff / p_coeff;
  return b;
}

/// Canonical text form; parse_binomial(format_binomial(b), b.order) == b.
inline std::string format_binomial(const Binomial& b) {
  const auto& names = b.order.names;
  auto monomial_string = [&](const IntVec& e) -> std::string {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names[i];
      if (e[i] != 1) s += "^" + e[i].str();
    }
    return s;
  };
  auto term_string = [&](const Rat& coeff, const IntVec& e) -> std::string {
    std::string mono = monomial_string(e);
    if (mono.empty()) return rat_to_string(coeff);
    if (coeff == 1) return mono;
    if (coeff == -1) return "-" + mono;
    return rat_to_string(coeff) + "*" + mono;
  };

  if (b.kind == BinomialKind::Monomial) return term_string(b.unit, b.c);

  Rat second = -b.unit * b.lambda;
  std::string head = term_string(b.unit, add(b.c, b.a));
  std::string tail = term_string(boost::multiprecision::abs(second), add(b.c, b.b));
  return head + (second < 0 ? " - " : " + ") + tail;
}

/// Parses a whole system file.  Lines are LF or CRLF terminated; '#' starts a
/// comment; the first contentful line must be "vars: <name> <name> ...".
inline BinomialSystem parse_system(const std::string& text) {
  BinomialSystem system;
  bool have_vars = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = eol == std::string::npos ? text.substr(pos)
                                                : text.substr(pos, eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::size_t last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);

    if (!have_vars) {
      if (line.rfind("vars:", 0) != 0)
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(line_no) +
                        ": expected a 'vars:' header before any binomials");
      std::string rest = line.substr(5);
      std::size_t i = 0;
      while (i < rest.size()) {
        while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t') ++j;
        if (j > i) {
          std::string name = rest.substr(i, j - i);
          if (!valid_variable_name(name))
            throw Error(ErrorKind::SyntaxError,
                        "line " + std::to_string(line_no) + ": invalid variable name '" +
                            name + "'");
          if (system.order.index_of(name))
            throw Error(ErrorKind::SyntaxError,
                        "line " + std::to_string(line_no) + ": duplicate variable '" +
                            name + "'");
          system.order.names.push_back(name);
        }
        i = j;
      }
      if (system.order.names.empty())
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(line_no) + ": empty variable list");
      have_vars = true;
      continue;
    }

    try {
      system.members.push_back(parse_binomial(line, system.order));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.message());
    }
  }

  if (!have_vars)
    throw Error(ErrorKind::EmptySystem, "input contains no 'vars:' header");
  if (system.members.empty())
    throw Error(ErrorKind::EmptySystem, "input contains no binomial lines");
  return system;
}

} // namespace fanstalk

#endif // FANSTALK_PARSER_HPP
