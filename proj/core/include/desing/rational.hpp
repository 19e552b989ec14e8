// rational.hpp -- exact rational scalars.
//
// The whole engine computes over Q with no floating point anywhere.  We use
// GMP's mpq_class as the scalar type: it keeps numerator/denominator reduced
// with a positive denominator (after canonicalize()), which is exactly the
// canonical form the rest of the library expects.  The helpers below add the
// few operations GMP does not spell the way we need: parsing from "p/q"
// strings, printing in that form, and small integer powers.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace desing {

using Rational = mpq_class;

// Parse "p", "-p", or "p/q" (q > 0 after canonicalization).  Throws
// Error(ParseError) on malformed input.
Rational rational_from_string(const std::string& s);

// Render canonically: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& r);

// r^e for e >= 0 (0^0 = 1).
Rational rational_pow(const Rational& r, std::uint32_t e);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace desing
