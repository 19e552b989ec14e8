// ideal_ops.hpp -- differential-operator calculus on ideals.
//
// The resolution invariants are all phrased through the filtration
// Delta(J) = J + <all first partials of generators>, iterated s times as
// Delta^s(J).  The key local facts the engine relies on:
//
//   * ord_P(J) >= s at every point of V(P) iff Delta^{s-1}(J) subset P,
//     so order-along-a-subvariety is a membership question;
//   * Sing(J, b) = V(Delta^{b-1}(J)) is the locus where J has order >= b;
//   * Delta is well defined on ideals (Leibniz: the partials of a product
//     g*f stay inside) -- independent of the generating set.
//
// max_order_on(J, S) computes the largest order J attains on a closed set
// V(S) together with the ideal cutting the locus where the maximum is
// attained: the largest m with Delta^{m-1}(J) + S proper.
//
// jacobian_smoothness implements the Jacobian criterion at a fixed expected
// codimension c: V(I) is smooth of codimension c iff I has dimension
// arity - c and I + (c x c minors of the Jacobian of the generators) has no
// common zero.

#pragma once

#include <cstdint>
#include <optional>

#include "desing/groebner.hpp"

namespace desing {

// Delta^s(J): J together with all partial derivatives up to total order s.
Ideal delta_power(const Ideal& ideal, std::uint32_t s);

// Ideal of Sing(J, b) = V(Delta^{b-1}(J)); b >= 1.
Ideal singular_locus_ideal(const Ideal& ideal, std::uint32_t b);

// Generic order of J along V(P): min { s >= 0 : Delta^s(J) not subset P }.
// Requires P proper; J nonzero.  Bounded by the least generator degree.
std::uint32_t order_along(const Ideal& ideal, const Ideal& p);

struct MaxOrderResult {
  std::uint32_t max_order = 0;  // largest order of J attained on V(S); 0 if J unit
  Ideal locus;                  // ideal of the sub-locus where it is attained
};

// Largest m with Delta^{m-1}(J) + S proper, together with that sum ideal.
// For the unit ideal J the result is (0, S).
MaxOrderResult max_order_on(const Ideal& ideal, const Ideal& on);

struct SmoothnessReport {
  bool smooth = false;
  // When not smooth: an ideal whose zero set contains the obstruction.
  std::optional<Ideal> obstruction;
};

// Jacobian criterion for V(I) smooth (equidimensional) of codimension c.
SmoothnessReport jacobian_smoothness(const Ideal& ideal, std::uint32_t codim);

}  // namespace desing
