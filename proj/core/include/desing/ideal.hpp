// ideal.hpp -- finitely generated ideals of a polynomial ring.
//
// An Ideal is just its generator list; all structural questions (membership,
// equality, dimension, ...) go through Groebner bases.  Generators may be
// redundant or zero; normalization happens in the engine, not here.

#pragma once

#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> gens;

  Ideal() = default;
  Ideal(RingPtr r, std::vector<Polynomial> g)
      : ring(std::move(r)), gens(std::move(g)) {}

  static Ideal zero(RingPtr r) { return Ideal(std::move(r), {}); }
  static Ideal unit(RingPtr r) {
    auto one = Polynomial::constant(r, 1);
    return Ideal(std::move(r), {one});
  }

  // Drop zero generators (in place convenience).
  void prune_zeros();
};

// I + J, I * J, I + <f> on a shared ring.
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_plus(const Ideal& a, const Polynomial& f);
// I^e (e >= 1); I^0 = unit.
Ideal ideal_pow(const Ideal& a, std::uint32_t e);

}  // namespace desing
