// polynomial.hpp -- sparse multivariate polynomials over Q.
//
// A Ring is an ordered list of variable names; a Polynomial is a sparse map
// from exponent tuples to nonzero rational coefficients, tied to its ring.
// Polynomials from different rings never mix: every binary operation asserts
// ring identity.  Terms are stored (and printed) in descending graded
// reverse-lexicographic order, the engine's display order.
//
// Beyond ring arithmetic this header provides the local-analysis primitives
// the resolution invariants are built from: the order of vanishing at a
// rational point (minimum total degree after translating the point to the
// origin, +infinity for the zero polynomial), formal partial derivatives, and
// substitution of polynomials for variables (the workhorse behind chart
// pullbacks and coordinate changes).

#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "desing/rational.hpp"

namespace desing {

// Exponent tuple; size always equals the ring arity.
using Mono = std::vector<std::uint32_t>;

inline std::uint64_t mono_degree(const Mono& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded reverse-lexicographic comparison: first by total degree; on ties the
// monomial with the SMALLER exponent in the LAST differing position is the
// larger one.  Returns <0, 0, >0 like a three-way compare, a > b positive.
int grevlex_cmp(const Mono& a, const Mono& b);

// Ring of polynomials: an ordered list of variable names.  Rings are shared
// immutably via shared_ptr; two polynomials are compatible iff they share the
// pointer or the name lists coincide.
struct Ring {
  std::vector<std::string> vars;

  std::size_t arity() const { return vars.size(); }
  // Index of a named variable, or nullopt.
  std::optional<std::size_t> index_of(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars);

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->vars == b->vars);
}

class Polynomial {
 public:
  // Descending grevlex: leading term first when iterating.
  struct TermCmp {
    bool operator()(const Mono& a, const Mono& b) const {
      return grevlex_cmp(a, b) > 0;
    }
  };
  using TermMap = std::map<Mono, Rational, TermCmp>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial from_terms(RingPtr ring,
                               std::vector<std::pair<Mono, Rational>> terms);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Nonzero constant (unit of the polynomial ring).
  bool is_unit_constant() const { return is_constant() && !is_zero(); }

  // Total degree; -1 represented as nullopt for the zero polynomial.
  std::optional<std::uint64_t> total_degree() const;

  // Coefficient of an exponent tuple (0 if absent).
  Rational coeff(const Mono& m) const;

  // Add c * x^m, erasing the term if the sum cancels.
  void add_term(const Mono& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(std::uint32_t e) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // d/dx_i, formal.
  Polynomial differentiate(std::size_t var) const;

  // Value at a rational point (size = arity).
  Rational evaluate(const std::vector<Rational>& point) const;

  // Order of vanishing at a rational point: minimum total degree of the
  // Taylor expansion at the point, i.e. of f(x + p).  nullopt encodes
  // +infinity (f = 0).  order_at_point(origin) is the minimum term degree.
  std::optional<std::uint64_t> order_at_point(
      const std::vector<Rational>& point) const;

  // Simultaneously substitute images[i] for x_i.  Images live in `target`
  // (which may be the same ring).  This is a straight ring homomorphism.
  Polynomial substitute(const RingPtr& target,
                        const std::vector<Polynomial>& images) const;

  // Divisibility by a single variable: largest k with x_i^k | f
  // (f = 0 gives nullopt = infinity).
  std::optional<std::uint32_t> divisibility_by_var(std::size_t var) const;

  // Quotient of f by x_i^k; every term must be divisible (asserted).
  Polynomial divide_by_var_power(std::size_t var, std::uint32_t k) const;

  // Exact division by g: returns f/g when g | f exactly, nullopt otherwise.
  std::optional<Polynomial> exact_divide(const Polynomial& g) const;

  // Leading data under descending grevlex (the stored order).
  const Mono& leading_mono() const;
  const Rational& leading_coeff() const;

  // Multiply every coefficient so the polynomial has integer coprime
  // coefficients and positive leading (grevlex) coefficient.
  Polynomial primitive_integer_normalized() const;

  // Monic under grevlex (divide by leading coefficient); f must be nonzero.
  Polynomial monic() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) {
  return p * c;
}

// x^m as a polynomial.
Polynomial mono_poly(const RingPtr& ring, const Mono& m);

}  // namespace desing
