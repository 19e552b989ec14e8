// problem.cpp -- the textual problem format.
//
// Sections are separated by '/' followed by a keyword, which keeps the
// separator unambiguous against rational literals: inside an expression a
// '/' must be followed by an integer.  The expression grammar is
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' factor) | ('/' INT))*
//   factor  := '-'* primary ('^' INT)?
//   primary := INT | VARIABLE | '(' expr ')'
//
// with all arithmetic exact over Q.  Every rejection carries the line and
// column of the offending token and what was expected there.

#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "desing/errors.hpp"
#include "desing/problem.hpp"

namespace desing {
namespace {

struct Token {
  enum class Kind { Ident, Int, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::string("+-*^/(),").find(c) != std::string::npos) {
      t.kind = Token::Kind::Symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line) + " col " + std::to_string(col) +
                      ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "ring" || s == "ideal" || s == "exceptional" || s == "threshold";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(at.line) +
                                           " col " + std::to_string(at.col) +
                                           ": expected " + expected);
  }
  bool at_symbol(const std::string& s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }
  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail(peek(), "'" + s + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail(peek(), what);
    return next().text;
  }
  std::uint32_t expect_uint(const std::string& what) {
    if (peek().kind != Token::Kind::Int) fail(peek(), what);
    const Token& t = next();
    unsigned long v = 0;
    try {
      v = std::stoul(t.text);
    } catch (...) {
      fail(t, what + " in range");
    }
    return static_cast<std::uint32_t>(v);
  }

  // True when the upcoming tokens are '/' KEYWORD (a section boundary).
  bool at_section_break() const {
    return at_symbol("/") && peek(1).kind == Token::Kind::Ident &&
           is_keyword(peek(1).text);
  }

  // ---- expression grammar over a fixed ring ----

  Polynomial expr(const RingPtr& ring) {
    Polynomial acc = term(ring);
    while (at_symbol("+") || at_symbol("-")) {
      const bool plus = peek().text == "+";
      next();
      Polynomial rhs = term(ring);
      acc = plus ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Polynomial term(const RingPtr& ring) {
    Polynomial acc = factor(ring);
    for (;;) {
      if (at_symbol("*")) {
        next();
        acc = acc * factor(ring);
      } else if (at_symbol("/") && peek(1).kind == Token::Kind::Int) {
        next();
        const Token& t = peek();
        const std::uint32_t den = expect_uint("nonzero integer divisor");
        if (den == 0) fail(t, "nonzero integer divisor");
        acc = acc * (Rational(1) / Rational(static_cast<int>(den)));
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor(const RingPtr& ring) {
    bool negate = false;
    while (at_symbol("-")) {
      negate = !negate;
      next();
    }
    Polynomial base = primary(ring);
    if (at_symbol("^")) {
      next();
      const std::uint32_t e = expect_uint("integer exponent");
      Polynomial pow = Polynomial::constant(ring, 1);
      for (std::uint32_t k = 0; k < e; ++k) pow = pow * base;
      base = std::move(pow);
    }
    return negate ? Polynomial::constant(ring, -1) * base : base;
  }

  Polynomial primary(const RingPtr& ring) {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      next();
      return Polynomial::constant(ring, rational_from_string(t.text));
    }
    if (t.kind == Token::Kind::Ident) {
      auto idx = ring->index_of(t.text);
      if (!idx) fail(t, "a ring variable (got '" + t.text + "')");
      next();
      return Polynomial::variable(ring, *idx);
    }
    if (at_symbol("(")) {
      next();
      Polynomial inner = expr(ring);
      expect_symbol(")");
      return inner;
    }
    fail(t, "a variable, integer, or '('");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Parser p(text);
  ProblemFile out;

  // ring x1 x2 ...
  {
    const Token& kw = p.peek();
    if (p.expect_ident("'ring'") != "ring") p.fail(kw, "'ring'");
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (p.peek().kind == Token::Kind::Ident) {
      const Token& t = p.peek();
      const std::string name = p.expect_ident("a variable name");
      if (is_keyword(name)) p.fail(t, "a variable name (keywords are reserved)");
      if (!seen.insert(name).second) p.fail(t, "a fresh variable name");
      names.push_back(name);
    }
    if (names.empty()) p.fail(p.peek(), "at least one variable name");
    out.ring = make_ring(std::move(names));
  }

  // / ideal f, g, ...
  {
    if (!p.at_section_break()) p.fail(p.peek(), "'/ ideal'");
    p.next();
    const Token& kw = p.peek();
    if (p.expect_ident("'ideal'") != "ideal") p.fail(kw, "'ideal'");
    out.ideal = Ideal(out.ring, {});
    out.ideal.gens.push_back(p.expr(out.ring));
    while (p.at_symbol(",")) {
      p.next();
      out.ideal.gens.push_back(p.expr(out.ring));
    }
  }

  // optional / exceptional xi, xj
  if (p.at_section_break() && p.peek(1).text == "exceptional") {
    p.next();
    p.next();
    for (;;) {
      const Token& t = p.peek();
      const std::string name = p.expect_ident("a ring variable");
      auto idx = out.ring->index_of(name);
      if (!idx) p.fail(t, "a ring variable (got '" + name + "')");
      out.seeded_exceptional.push_back(*idx);
      if (!p.at_symbol(",")) break;
      p.next();
    }
  }

  // optional / threshold b
  if (p.at_section_break() && p.peek(1).text == "threshold") {
    p.next();
    p.next();
    const Token& t = p.peek();
    out.threshold = p.expect_uint("a positive threshold");
    if (out.threshold == 0) p.fail(t, "a positive threshold");
  }

  if (p.peek().kind != Token::Kind::End) p.fail(p.peek(), "end of input");
  return out;
}

std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  out << "ring";
  for (const std::string& v : p.ring->vars) out << " " << v;
  out << " / ideal ";
  for (std::size_t i = 0; i < p.ideal.gens.size(); ++i) {
    if (i) out << ", ";
    out << p.ideal.gens[i].to_string();
  }
  if (!p.seeded_exceptional.empty()) {
    out << " / exceptional ";
    for (std::size_t i = 0; i < p.seeded_exceptional.size(); ++i) {
      if (i) out << ", ";
      out << p.ring->vars[p.seeded_exceptional[i]];
    }
  }
  if (p.threshold != 1) out << " / threshold " << p.threshold;
  return out.str();
}

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
  Parser p(text);
  Polynomial f = p.expr(ring);
  if (p.peek().kind != Token::Kind::End) p.fail(p.peek(), "end of input");
  return f;
}

}  // namespace desing
