// rational.cpp -- parsing, printing, and powers of exact rationals.

#include "desing/rational.hpp"

#include "desing/errors.hpp"

namespace desing {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::FrozenCoordinateViolation: return "FrozenCoordinateViolation";
    case ErrorKind::ImpermissibleCenter: return "ImpermissibleCenter";
    case ErrorKind::R1NotRealizable: return "R1NotRealizable";
    case ErrorKind::MaximalContactNotRealizable: return "MaximalContactNotRealizable";
    case ErrorKind::CenterNotRealizable: return "CenterNotRealizable";
    case ErrorKind::MonomialCase: return "MonomialCase";
    case ErrorKind::DecompositionIncomplete: return "DecompositionIncomplete";
    case ErrorKind::NonPureDimensional: return "NonPureDimensional";
    case ErrorKind::RelativePropertyViolated: return "RelativePropertyViolated";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotCompleteIntersection: return "NotCompleteIntersection";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational literal");
  // Validate shape by hand; mpq_class accepts more than we want to allow.
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string body = s;
  bool neg = false;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  auto slash = body.find('/');
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!digits(num) || !digits(den) || den == "0")
    throw Error(ErrorKind::ParseError, "malformed rational literal '" + s + "'");
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_pow(const Rational& r, std::uint32_t e) {
  Rational acc(1);
  Rational base = r;
  std::uint32_t k = e;
  while (k > 0) {
    if (k & 1u) acc *= base;
    base *= base;
    k >>= 1u;
  }
  return acc;
}

}  // namespace desing
