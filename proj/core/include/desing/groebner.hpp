// groebner.hpp -- Groebner bases over Q and the membership machinery.
//
// Buchberger's algorithm with the two classical pair-discarding criteria
// (coprime leading terms; the chain criterion), pairs processed by ascending
// lcm degree.  Bases are returned REDUCED and MONIC: no leading term divides
// another, every tail term is reduced against the rest, and all leading
// coefficients are 1.  A reduced monic basis is uniquely determined by the
// ideal and the order, which is what makes ideal_equal and the byte-stable
// artifacts work.
//
// Three monomial orders are supported: graded reverse-lexicographic (the
// default), lexicographic, and a block elimination order that ranks a chosen
// front group of variables before the rest (grevlex within each block).
// Elimination ideals fall out of the latter: the basis elements free of the
// front block generate the intersection with the subring.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "desing/ideal.hpp"

namespace desing {

enum class OrderKind { Grevlex, Lex, Elim };

struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  // For Elim: mask[i] true puts x_i in the front (eliminated) block.
  std::vector<bool> elim_mask;

  static MonomialOrder grevlex() { return {OrderKind::Grevlex, {}}; }
  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder elim(std::vector<bool> mask) {
    return {OrderKind::Elim, std::move(mask)};
  }

  // Three-way compare, a > b positive.
  int cmp(const Mono& a, const Mono& b) const;
  bool equal(const MonomialOrder& o) const {
    return kind == o.kind && elim_mask == o.elim_mask;
  }
};

struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order;
  // Reduced, monic, sorted ascending by leading term under `order`.
  std::vector<Polynomial> elements;

  bool is_unit() const;  // basis == {1}
  bool is_zero() const { return elements.empty(); }
};

// Leading monomial of f under an order (f nonzero).
const Mono& leading_mono(const Polynomial& f, const MonomialOrder& order);

// Full reduction of f modulo the basis: no term of the result is divisible by
// any basis leading term.  reduce(f) == 0 iff f is in the ideal.
Polynomial reduce(const Polynomial& f, const GroebnerBasis& gb);

// Compute the reduced monic basis of <gens>.
GroebnerBasis groebner(const Ideal& ideal,
                       const MonomialOrder& order = MonomialOrder::grevlex());

// Equality of ideals: identical reduced bases under the same order.
bool ideal_equal(const Ideal& a, const Ideal& b);

// Membership f in I (reduce against a grevlex basis).
bool ideal_member(const Polynomial& f, const Ideal& ideal);

bool is_unit_ideal(const Ideal& ideal);

// Intersection of two ideals via the t-trick: I cap J = (t I + (1-t) J) cap R.
Ideal ideal_intersect(const Ideal& a, const Ideal& b);

// Colon ideal (I : f) and (I : J) = cap_g (I : g).
Ideal colon(const Ideal& ideal, const Polynomial& f);
Ideal colon(const Ideal& ideal, const Ideal& j);

// Saturation (I : J^infty) together with the least N such that
// (I : J^N) = (I : J^{N+1}).
std::pair<Ideal, std::uint32_t> saturate(const Ideal& ideal, const Ideal& j);

// Radical membership via the Rabinowitsch trick: f in sqrt(I) iff
// 1 in I + <1 - t f> in an extended ring.
bool radical_member(const Polynomial& f, const Ideal& ideal);

// sqrt(A) subset sqrt(B) and mutual containment (same vanishing locus).
bool radical_contains(const Ideal& big, const Ideal& small);
bool same_radical(const Ideal& a, const Ideal& b);

// Eliminate the variables flagged in `front`: generators of I cap
// Q[remaining variables], expressed in the SAME ring (front variables absent).
Ideal eliminate(const Ideal& ideal, const std::vector<bool>& front);

// Krull dimension of V(I): the maximum size over variable subsets S meeting
// no leading-term support of the reduced grevlex basis; -1 for the unit
// ideal.
int dimension(const Ideal& ideal);

}  // namespace desing
