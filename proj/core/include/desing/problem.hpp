// problem.hpp -- problem files: the textual input format.
//
// A problem is a ring declaration, a generator list, optional seeded
// exceptional coordinates, and an optional threshold:
//
//     ring x1 x2 x3 / ideal x1, x2*x3 + x2^3 + x3^3 [/ exceptional x1, x2]
//     [/ threshold 2]
//
// Expressions use infix + - * ^ with integer or rational literals and
// parentheses; division is allowed only by nonzero integer literals.  Parse
// errors carry line, column, and what was expected.  print_problem is the
// exact inverse of parse_problem on canonical forms.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "desing/ideal.hpp"

namespace desing {

struct ProblemFile {
  RingPtr ring;
  Ideal ideal;
  std::vector<std::size_t> seeded_exceptional;  // coordinate indices
  std::uint32_t threshold = 1;
};

// Parse the textual form; throws Error(ParseError) with "line L col C:
// expected ..." messages.
ProblemFile parse_problem(const std::string& text);

// Canonical rendering; parse_problem(print_problem(p)) reproduces p.
std::string print_problem(const ProblemFile& p);

// Parse a single polynomial over a given ring (same expression grammar);
// used by tests and tools.
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

}  // namespace desing
