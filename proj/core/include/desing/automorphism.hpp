// automorphism.hpp -- tame coordinate changes of affine space.
//
// The engine only ever changes coordinates by tame automorphisms: finite
// compositions of invertible linear maps and triangular shifts
// x_i |-> x_i + h where h does not involve x_i.  Both kinds have syntactic
// inverses (matrix inverse, resp. x_i |-> x_i - h), so an Automorphism can be
// inverted by reversing its move list without any implicit function theorem.
//
// Coordinates carrying exceptional divisors are FROZEN: a move that changes
// the image of a frozen coordinate throws FrozenCoordinateViolation.  This is
// what keeps the exceptional monomial factorizations meaningful across
// coordinate changes.

#pragma once

#include <cstdint>
#include <set>
#include <variant>
#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// Invertible linear substitution x_i |-> sum_j M[i][j] x_j.
struct LinearMove {
  std::vector<std::vector<Rational>> matrix;  // row i = image of x_i
};

// Triangular substitution x_target |-> x_target + shift, shift free of
// x_target.
struct TriangularMove {
  std::size_t target;
  Polynomial shift;
};

using Move = std::variant<LinearMove, TriangularMove>;

class Automorphism {
 public:
  Automorphism(RingPtr ring, std::set<std::size_t> frozen)
      : ring_(std::move(ring)), frozen_(std::move(frozen)) {}

  static Automorphism identity(RingPtr ring, std::set<std::size_t> frozen = {}) {
    return Automorphism(std::move(ring), std::move(frozen));
  }

  const RingPtr& ring() const { return ring_; }
  const std::set<std::size_t>& frozen() const { return frozen_; }
  const std::vector<Move>& moves() const { return moves_; }
  bool is_identity() const { return moves_.empty(); }

  // Append a move; throws FrozenCoordinateViolation if it moves a frozen
  // coordinate, InvalidInput if a linear move is singular or a triangular
  // shift involves its own target.
  void push(Move m);

  // Image of f under the composition of all moves (applied in push order).
  Polynomial apply(const Polynomial& f) const;

  // The exact inverse automorphism (moves reversed and individually
  // inverted).  Round trip apply(inverse().apply(f)) == f.
  Automorphism inverse() const;

  // Compose: first this, then o (same ring; frozen sets are united).
  Automorphism then(const Automorphism& o) const;

  // Images of all variables as polynomials (the substitution tuple).
  std::vector<Polynomial> variable_images() const;

 private:
  RingPtr ring_;
  std::set<std::size_t> frozen_;
  std::vector<Move> moves_;
};

}  // namespace desing
