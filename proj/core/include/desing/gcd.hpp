// gcd.hpp -- multivariate gcd and squarefree parts over Q.
//
// Implemented with the classical primitive polynomial remainder sequence:
// recurse on the highest variable actually present, splitting each input into
// content (a polynomial in the remaining variables) and primitive part, and
// run pseudo-remainders on the primitive parts.  Everything is exact; the
// result is normalized to integer coprime coefficients with positive leading
// (grevlex) coefficient, which makes gcds unique and stable across runs.
//
// The squarefree part sqfp(f) = f / gcd(f, df/dx_1, ..., df/dx_n) drops
// repeated factors; it is the radical of a principal ideal and the engine
// uses it to extract reduced codimension-1 centers.

#pragma once

#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// gcd of two polynomials (zero acts as the absorbing element: gcd(f,0) = f).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

struct GcdSquarefree {
  Polynomial gcd;             // normalized gcd of the list
  Polynomial squarefree_part; // squarefree part of the gcd
};

// gcd of a nonempty list together with the squarefree part of that gcd.
GcdSquarefree gcd_squarefree(const std::vector<Polynomial>& fs);

// Squarefree part of a single nonzero polynomial.
Polynomial squarefree_part(const Polynomial& f);

}  // namespace desing
