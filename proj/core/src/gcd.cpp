// gcd.cpp -- multivariate gcd via the primitive polynomial remainder
// sequence, plus squarefree parts.

#include "desing/gcd.hpp"

#include <algorithm>

#include "desing/errors.hpp"

namespace desing {
namespace {

// Highest variable index appearing in f, or nullopt when f is constant.
std::optional<std::size_t> max_var_present(const Polynomial& f) {
  std::optional<std::size_t> best;
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = m.size(); i-- > 0;) {
      if (m[i] > 0) {
        if (!best || i > *best) best = i;
        break;
      }
    }
  }
  return best;
}

std::uint32_t degree_in(const Polynomial& f, std::size_t v) {
  std::uint32_t d = 0;
  for (const auto& [m, c] : f.terms()) d = std::max(d, m[v]);
  return d;
}

// Coefficient of v^k in f, as a polynomial free of v.
Polynomial coeff_in(const Polynomial& f, std::size_t v, std::uint32_t k) {
  std::vector<std::pair<Mono, Rational>> terms;
  for (const auto& [m, c] : f.terms()) {
    if (m[v] != k) continue;
    Mono stripped = m;
    stripped[v] = 0;
    terms.emplace_back(std::move(stripped), c);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// Content of f with respect to v: gcd of the coefficients of the powers of v.
Polynomial content_in(const Polynomial& f, std::size_t v) {
  Polynomial g = Polynomial::zero(f.ring());
  std::uint32_t d = degree_in(f, v);
  for (std::uint32_t k = 0; k <= d; ++k) {
    Polynomial c = coeff_in(f, v, k);
    if (!c.is_zero()) g = gcd_impl(g, c);
    if (g.is_constant() && !g.is_zero()) break;  // content already trivial
  }
  return g;
}

// Pseudo-remainder of f by g in the variable v.  Each round multiplies by the
// leading coefficient of g, so the result stays polynomial; deg_v strictly
// decreases because the leading terms cancel exactly.
Polynomial pseudo_remainder(Polynomial f, const Polynomial& g, std::size_t v) {
  std::uint32_t eg = degree_in(g, v);
  Polynomial lcg = coeff_in(g, v, eg);
  while (!f.is_zero()) {
    std::uint32_t ef = degree_in(f, v);
    if (ef < eg) break;
    Polynomial lcf = coeff_in(f, v, ef);
    Mono shift(f.ring()->arity(), 0);
    shift[v] = ef - eg;
    f = f * lcg - lcf * mono_poly(f.ring(), shift) * g;
  }
  return f;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant())
    return Polynomial::constant(a.ring(), 1);

  std::size_t va = *max_var_present(a);
  std::size_t vb = *max_var_present(b);
  std::size_t v = std::max(va, vb);
  // If only one side involves the top variable, the gcd divides the other
  // side and therefore the content of the first.
  if (va != vb) {
    const Polynomial& with = va > vb ? a : b;
    const Polynomial& without = va > vb ? b : a;
    return gcd_impl(content_in(with, v), without);
  }

  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial ppa = *a.exact_divide(ca);
  Polynomial ppb = *b.exact_divide(cb);

  // Primitive remainder sequence on the primitive parts.
  Polynomial r0 = ppa, r1 = ppb;
  if (degree_in(r0, v) < degree_in(r1, v)) std::swap(r0, r1);
  while (!r1.is_zero()) {
    Polynomial r = pseudo_remainder(r0, r1, v);
    r0 = std::move(r1);
    if (!r.is_zero()) {
      Polynomial cont = content_in(r, v);
      r = *r.exact_divide(cont);
    }
    r1 = std::move(r);
  }
  Polynomial prim = degree_in(r0, v) > 0 ? *r0.exact_divide(content_in(r0, v))
                                         : Polynomial::constant(a.ring(), 1);
  return gcd_impl(ca, cb) * prim;
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  assert(same_ring(a.ring(), b.ring()));
  Polynomial g = gcd_impl(a, b);
  if (g.is_zero()) return g;
  return g.primitive_integer_normalized();
}

GcdSquarefree gcd_squarefree(const std::vector<Polynomial>& fs) {
  if (fs.empty()) throw Error(ErrorKind::InvalidInput, "gcd of empty list");
  Polynomial g = Polynomial::zero(fs.front().ring());
  for (const auto& f : fs) {
    g = poly_gcd(g, f);
    if (g.is_unit_constant()) break;
  }
  GcdSquarefree out{g, g};
  if (!g.is_zero() && !g.is_constant()) out.squarefree_part = squarefree_part(g);
  return out;
}

Polynomial squarefree_part(const Polynomial& f) {
  assert(!f.is_zero());
  if (f.is_constant()) return Polynomial::constant(f.ring(), 1);
  Polynomial s = f;
  for (std::size_t i = 0; i < f.ring()->arity(); ++i) {
    Polynomial d = f.differentiate(i);
    if (!d.is_zero()) s = poly_gcd(s, d);
    if (s.is_unit_constant()) break;
  }
  auto q = f.exact_divide(s);
  assert(q.has_value());  // the gcd of f with its partials divides f
  return q->primitive_integer_normalized();
}

}  // namespace desing
