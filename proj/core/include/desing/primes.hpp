// primes.hpp -- best-effort minimal prime decomposition over Q.
//
// The engine needs minimal primes only for radical-level questions: grouping
// components by codimension, separating split-off smooth pieces, and the
// singular-locus computation.  It therefore implements a splitting loop with
// certified leaves rather than a general primary decomposition:
//
//   splitting moves: factor out monomial content, replace generators by
//   squarefree parts, split off content in a single variable, factor
//   univariate generators by rational-root search, branch on any generator
//   that factors, and saturate branches against each other;
//
//   leaf certificates: all-linear generators; principal with an
//   irreducibility certificate; smooth complete intersections (Jacobian
//   criterion); coordinates plus one principal irreducible.
//
// Anything that survives all moves without earning a certificate throws
// DecompositionIncomplete naming the stuck ideal -- loud, never silently
// wrong.  Branches are discarded when their radical contains another branch.

#pragma once

#include <vector>

#include "desing/ideal_ops.hpp"

namespace desing {

// Minimal primes of sqrt(I), each as an ideal with a primality certificate
// behind it.  Sorted deterministically (by dimension, then generator print).
// Throws DecompositionIncomplete when certification fails, InvalidInput for
// the unit or zero ideal.
std::vector<Ideal> minimal_primes(const Ideal& ideal);

}  // namespace desing
