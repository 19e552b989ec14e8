// primes.cpp -- best-effort minimal prime decomposition: splitting moves plus
// certified leaves, loud failure otherwise.

#include "desing/primes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "desing/errors.hpp"
#include "desing/gcd.hpp"

namespace desing {
namespace {

// ---------------------------------------------------------------- univariate

// Dense univariate view of a polynomial involving exactly one variable.
struct UniPoly {
  std::size_t var = 0;
  std::vector<Rational> coeffs;  // coeffs[i] multiplies x^i; back() nonzero

  std::size_t degree() const { return coeffs.size() - 1; }
};

std::optional<std::size_t> only_variable(const Polynomial& f) {
  std::optional<std::size_t> var;
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) {
        if (var && *var != i) return std::nullopt;
        var = i;
      }
  return var;
}

UniPoly to_uni(const Polynomial& f, std::size_t var) {
  std::uint32_t deg = 0;
  for (const auto& [m, c] : f.terms()) deg = std::max(deg, m[var]);
  UniPoly u;
  u.var = var;
  u.coeffs.assign(deg + 1, Rational(0));
  for (const auto& [m, c] : f.terms()) u.coeffs[m[var]] = c;
  return u;
}

Polynomial from_uni(const RingPtr& ring, const UniPoly& u) {
  Polynomial f = Polynomial::zero(ring);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    if (u.coeffs[i] == 0) continue;
    Mono m(ring->arity(), 0);
    m[u.var] = static_cast<std::uint32_t>(i);
    f.add_term(m, u.coeffs[i]);
  }
  return f;
}

Rational uni_eval(const UniPoly& u, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = u.coeffs.size(); i-- > 0;) acc = acc * x + u.coeffs[i];
  return acc;
}

// Exact division of dense univariate polynomials; nullopt when not exact.
std::optional<UniPoly> uni_divide(const UniPoly& f, const UniPoly& g) {
  if (g.coeffs.empty() || f.coeffs.size() < g.coeffs.size()) return std::nullopt;
  std::vector<Rational> rem = f.coeffs;
  std::size_t dq = f.coeffs.size() - g.coeffs.size();
  std::vector<Rational> quot(dq + 1, Rational(0));
  for (std::size_t k = dq + 1; k-- > 0;) {
    Rational q = rem[k + g.degree()] / g.coeffs.back();
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i < g.coeffs.size(); ++i)
      rem[k + i] -= q * g.coeffs[i];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  UniPoly out;
  out.var = f.var;
  out.coeffs = std::move(quot);
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  return out;
}

// All positive divisors of |n|, or nullopt when n is too hard to factor.
std::optional<std::vector<mpz_class>> positive_divisors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  assert(n != 0);
  std::vector<std::pair<mpz_class, unsigned>> fact;
  for (mpz_class p = 2; p * p <= n && p < 1000000; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fact.emplace_back(p, e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) return std::nullopt;
    fact.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs = {1};
  for (const auto& [p, e] : fact) {
    std::vector<mpz_class> next;
    mpz_class pk = 1;
    for (unsigned k = 0; k <= e; ++k) {
      for (const auto& d : divs) next.push_back(d * pk);
      pk *= p;
    }
    divs = std::move(next);
    if (divs.size() > 4096) return std::nullopt;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

UniPoly uni_normalize(UniPoly u) {
  // Integer coprime coefficients, positive leading coefficient.
  mpz_class den(1), num(0);
  for (const auto& c : u.coeffs) {
    mpz_class d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& c : u.coeffs) {
    mpz_class s = c.get_num() * (den / c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), s.get_mpz_t());
  }
  Rational scale = Rational(den) / Rational(num);
  if (u.coeffs.back() * scale < 0) scale = -scale;
  for (auto& c : u.coeffs) c *= scale;
  return u;
}

// Complete factorization of a squarefree univariate polynomial into monic--
// normalized irreducible factors: rational-root stripping followed by a
// factor search over integer interpolation (complete for integer
// polynomials since a factor's values divide the polynomial's values).
// nullopt when the integer factoring budget runs out.
std::optional<std::vector<UniPoly>> uni_factor(UniPoly f) {
  std::vector<UniPoly> out;
  f = uni_normalize(std::move(f));
  // Strip a power of the variable.
  std::size_t val = 0;
  while (val < f.coeffs.size() && f.coeffs[val] == 0) ++val;
  if (val > 0) {
    UniPoly x{f.var, {Rational(0), Rational(1)}};
    out.push_back(x);
    f.coeffs.erase(f.coeffs.begin(), f.coeffs.begin() + val);
  }
  // Rational roots p/q with p | constant, q | leading.
  bool found_root = true;
  while (f.degree() >= 1 && found_root) {
    found_root = false;
    auto ps = positive_divisors(f.coeffs.front().get_num());
    auto qs = positive_divisors(f.coeffs.back().get_num());
    if (!ps || !qs) return std::nullopt;
    for (const auto& p : *ps) {
      for (const auto& q : *qs) {
        for (int sign : {1, -1}) {
          Rational r = Rational(p * sign) / Rational(q);
          if (uni_eval(f, r) != 0) continue;
          UniPoly lin{f.var, {-r, Rational(1)}};
          auto quo = uni_divide(f, lin);
          assert(quo.has_value());
          out.push_back(uni_normalize(lin));
          f = uni_normalize(std::move(*quo));
          found_root = true;
          break;
        }
        if (found_root) break;
      }
      if (found_root) break;
    }
  }
  if (f.degree() == 0) return out;
  if (f.degree() <= 3) {
    // Squarefree of degree 2 or 3 without rational roots is irreducible.
    out.push_back(std::move(f));
    return out;
  }
  // Interpolation search for a factor of degree k <= deg/2.
  for (std::size_t k = 2; k <= f.degree() / 2; ++k) {
    std::vector<Rational> points;
    for (long a = 0; points.size() < k + 1; a = a <= 0 ? 1 - a : -a)
      points.push_back(Rational(a));
    std::vector<std::vector<mpz_class>> value_divs;
    std::size_t combos = 1;
    for (const auto& a : points) {
      Rational v = uni_eval(f, a);
      assert(v != 0);  // integer roots were stripped above
      auto divs = positive_divisors(v.get_num());
      if (!divs) return std::nullopt;
      combos *= divs->size() * 2;
      if (combos > 200000) return std::nullopt;
      value_divs.push_back(std::move(*divs));
    }
    std::vector<std::size_t> pick(k + 1, 0);
    std::vector<int> signs(k + 1, 1);
    // Odometer over all signed divisor choices.
    for (;;) {
      // Lagrange-interpolate candidate values.
      std::vector<Rational> vals(k + 1);
      for (std::size_t i = 0; i <= k; ++i)
        vals[i] = Rational(value_divs[i][pick[i]] * signs[i]);
      std::vector<Rational> g(1, Rational(0));
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Rational> basis(1, vals[i]);
        for (std::size_t j = 0; j <= k; ++j) {
          if (j == i) continue;
          // multiply basis by (x - a_j) / (a_i - a_j)
          Rational d = points[i] - points[j];
          std::vector<Rational> next(basis.size() + 1, Rational(0));
          for (std::size_t t = 0; t < basis.size(); ++t) {
            next[t + 1] += basis[t] / d;
            next[t] -= basis[t] * points[j] / d;
          }
          basis = std::move(next);
        }
        if (basis.size() > g.size()) g.resize(basis.size(), Rational(0));
        for (std::size_t t = 0; t < basis.size(); ++t) g[t] += basis[t];
      }
      while (g.size() > 1 && g.back() == 0) g.pop_back();
      if (g.size() == k + 1) {
        UniPoly cand{f.var, g};
        auto quo = uni_divide(f, cand);
        if (quo.has_value()) {
          auto left = uni_factor(uni_normalize(std::move(cand)));
          auto right = uni_factor(uni_normalize(std::move(*quo)));
          if (!left || !right) return std::nullopt;
          out.insert(out.end(), left->begin(), left->end());
          out.insert(out.end(), right->begin(), right->end());
          return out;
        }
      }
      // advance odometer
      std::size_t i = 0;
      for (; i <= k; ++i) {
        if (signs[i] == 1) {
          signs[i] = -1;
          break;
        }
        signs[i] = 1;
        if (++pick[i] < value_divs[i].size()) break;
        pick[i] = 0;
      }
      if (i > k) break;
    }
  }
  out.push_back(std::move(f));
  return out;
}

bool uni_irreducible(const Polynomial& f, std::size_t var) {
  UniPoly u = uni_normalize(to_uni(f, var));
  if (u.degree() == 0) return false;
  auto factors = uni_factor(u);
  if (!factors)
    throw Error(ErrorKind::DecompositionIncomplete,
                "integer factoring budget exhausted on " + f.to_string());
  return factors->size() == 1;
}

// ------------------------------------------------------------- certification

std::uint32_t degree_in_var(const Polynomial& f, std::size_t v) {
  std::uint32_t d = 0;
  for (const auto& [m, c] : f.terms()) d = std::max(d, m[v]);
  return d;
}

Polynomial coeff_of_power(const Polynomial& f, std::size_t v, std::uint32_t k) {
  std::vector<std::pair<Mono, Rational>> terms;
  for (const auto& [m, c] : f.terms()) {
    if (m[v] != k) continue;
    Mono s = m;
    s[v] = 0;
    terms.emplace_back(std::move(s), c);
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

// gcd of the coefficients of the powers of v (a polynomial free of v).
Polynomial content_in_var(const Polynomial& f, std::size_t v) {
  Polynomial g = Polynomial::zero(f.ring());
  for (std::uint32_t k = 0; k <= degree_in_var(f, v); ++k) {
    Polynomial c = coeff_of_power(f, v, k);
    if (!c.is_zero()) g = poly_gcd(g, c);
    if (g.is_unit_constant()) break;
  }
  return g;
}

std::vector<std::size_t> variables_present(const Polynomial& f) {
  std::vector<bool> seen(f.ring()->arity(), false);
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) seen[i] = true;
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) vars.push_back(i);
  return vars;
}

// Irreducibility certificate for a single non-constant polynomial.  Either a
// definite yes, or a definite "reducible / could not certify" (false).
bool certify_irreducible(const Polynomial& f) {
  auto vars = variables_present(f);
  assert(!vars.empty());
  if (vars.size() == 1) return uni_irreducible(f, vars.front());
  // Multivariate: for a variable y with trivial content, an irreducible
  // specialization of the other variables preserving deg_y certifies
  // irreducibility (a factorization would specialize to one).
  for (std::size_t y : vars) {
    if (!content_in_var(f, y).is_unit_constant()) continue;
    std::uint32_t dy = degree_in_var(f, y);
    if (dy == 0) continue;
    std::vector<std::size_t> others;
    for (std::size_t v : vars)
      if (v != y) others.push_back(v);
    // Grid of small integer specializations.
    const long grid[] = {0, 1, -1, 2, -2, 3, -3};
    std::size_t total = 1;
    for (std::size_t i = 0; i < others.size() && total <= 3000; ++i) total *= 7;
    if (total > 3000) total = 3000;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<Polynomial> images;
      images.reserve(f.ring()->arity());
      for (std::size_t v = 0; v < f.ring()->arity(); ++v)
        images.push_back(Polynomial::variable(f.ring(), v));
      std::size_t rem = idx;
      for (std::size_t v : others) {
        images[v] = Polynomial::constant(f.ring(), Rational(grid[rem % 7]));
        rem /= 7;
      }
      Polynomial spec = f.substitute(f.ring(), images);
      if (spec.is_zero() || degree_in_var(spec, y) != dy) continue;
      try {
        if (uni_irreducible(spec, y)) return true;
      } catch (const Error&) {
        continue;  // budget blown on this point; try the next
      }
    }
  }
  return false;
}

// Primality certificate for a reduced basis.  Linear generators are
// substituted away (an affine change identifies the quotient with a smaller
// polynomial ring), then: no generators left = affine subspace; one
// generator = principal irreducible; otherwise a smooth complete
// intersection of positive dimension as a last resort.
bool certify_prime(const RingPtr& ring, std::vector<Polynomial> gens) {
  for (;;) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Polynomial& g) { return g.is_zero(); }),
               gens.end());
    if (gens.empty()) return true;
    std::size_t linear = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].total_degree() == 1) {
        linear = i;
        break;
      }
    if (linear == gens.size()) break;
    // Solve the linear generator for its lowest-index variable and
    // substitute; the quotient ring is unchanged up to isomorphism.
    Polynomial f = gens[linear];
    gens.erase(gens.begin() + linear);
    std::size_t v = ring->arity();
    Rational cv;
    for (std::size_t i = 0; i < ring->arity(); ++i) {
      Mono m(ring->arity(), 0);
      m[i] = 1;
      Rational c = f.coeff(m);
      if (c != 0) {
        v = i;
        cv = c;
        break;
      }
    }
    assert(v < ring->arity());
    Polynomial rest = f - Polynomial::variable(ring, v) * cv;
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ring->arity(); ++i)
      images.push_back(Polynomial::variable(ring, i));
    images[v] = rest * (Rational(-1) / cv);
    for (auto& g : gens) g = g.substitute(ring, images);
    Ideal next(ring, gens);
    gens = groebner(next).elements;
    if (gens.size() == 1 && gens.front().is_unit_constant())
      return false;  // substitution exposed a unit; not a proper prime
  }
  if (gens.size() == 1) return certify_irreducible(gens.front());
  // Smooth complete intersection of positive dimension; the Jacobian
  // criterion rules out embedded or crossing components.
  Ideal ideal(ring, gens);
  int dim = dimension(ideal);
  if (dim <= 0) return false;
  std::size_t codim = ring->arity() - static_cast<std::size_t>(dim);
  if (gens.size() != codim) return false;
  return jacobian_smoothness(ideal, static_cast<std::uint32_t>(codim)).smooth;
}

}  // namespace

std::vector<Ideal> minimal_primes(const Ideal& ideal) {
  Ideal start = ideal;
  start.prune_zeros();
  if (start.gens.empty())
    throw Error(ErrorKind::InvalidInput, "minimal primes of the zero ideal");
  GroebnerBasis gb0 = groebner(start);
  if (gb0.is_unit())
    throw Error(ErrorKind::InvalidInput, "minimal primes of the unit ideal");

  std::vector<std::vector<Polynomial>> stack = {gb0.elements};
  std::vector<std::vector<Polynomial>> leaves;
  int budget = 500;
  while (!stack.empty()) {
    if (--budget < 0)
      throw Error(ErrorKind::DecompositionIncomplete,
                  "splitting did not terminate");
    std::vector<Polynomial> gens = std::move(stack.back());
    stack.pop_back();

    auto respawn = [&](std::vector<Polynomial> g) {
      GroebnerBasis gb = groebner(Ideal(ideal.ring, std::move(g)));
      if (!gb.is_unit()) stack.push_back(gb.elements);
    };

    // Move: replace generators by their squarefree parts.
    {
      bool changed = false;
      std::vector<Polynomial> next;
      for (const auto& g : gens) {
        Polynomial s = squarefree_part(g);
        if (s != g.primitive_integer_normalized()) changed = true;
        next.push_back(std::move(s));
      }
      if (changed) {
        respawn(std::move(next));
        continue;
      }
    }

    // Move: split off monomial factors x^m * h -> branches per variable + h.
    {
      bool split = false;
      for (std::size_t gi = 0; gi < gens.size() && !split; ++gi) {
        const Polynomial& g = gens[gi];
        std::vector<std::size_t> content_vars;
        for (std::size_t v = 0; v < ideal.ring->arity(); ++v) {
          auto k = g.divisibility_by_var(v);
          if (k && *k >= 1) content_vars.push_back(v);
        }
        if (content_vars.empty()) continue;
        Polynomial h = g;
        for (std::size_t v : content_vars)
          h = h.divide_by_var_power(v, *g.divisibility_by_var(v));
        bool pure_monomial = h.is_unit_constant();
        if (pure_monomial && content_vars.size() == 1) continue;  // a coordinate
        split = true;
        for (std::size_t v : content_vars) {
          std::vector<Polynomial> branch = gens;
          branch[gi] = Polynomial::variable(ideal.ring, v);
          respawn(std::move(branch));
        }
        if (!pure_monomial) {
          std::vector<Polynomial> branch = gens;
          branch[gi] = h;
          respawn(std::move(branch));
        }
      }
      if (split) continue;
    }

    // Move: split off the content with respect to a single variable.
    {
      bool split = false;
      for (std::size_t gi = 0; gi < gens.size() && !split; ++gi) {
        const Polynomial& g = gens[gi];
        auto vars = variables_present(g);
        if (vars.size() < 2) continue;
        for (std::size_t y : vars) {
          Polynomial cont = content_in_var(g, y);
          if (cont.is_unit_constant() || cont.is_zero()) continue;
          auto pp = g.exact_divide(cont);
          assert(pp.has_value());
          split = true;
          std::vector<Polynomial> branch_a = gens;
          branch_a[gi] = cont;
          respawn(std::move(branch_a));
          std::vector<Polynomial> branch_b = gens;
          branch_b[gi] = *pp;
          respawn(std::move(branch_b));
          break;
        }
      }
      if (split) continue;
    }

    // Move: complete factorization of univariate generators.
    {
      bool split = false;
      for (std::size_t gi = 0; gi < gens.size() && !split; ++gi) {
        auto var = only_variable(gens[gi]);
        if (!var || gens[gi].is_constant()) continue;
        if (degree_in_var(gens[gi], *var) < 2) continue;
        auto factors = uni_factor(to_uni(gens[gi], *var));
        if (!factors)
          throw Error(ErrorKind::DecompositionIncomplete,
                      "integer factoring budget exhausted on " +
                          gens[gi].to_string());
        if (factors->size() < 2) continue;
        split = true;
        for (const auto& u : *factors) {
          std::vector<Polynomial> branch = gens;
          branch[gi] = from_uni(ideal.ring, u);
          respawn(std::move(branch));
        }
      }
      if (split) continue;
    }

    if (!certify_prime(ideal.ring, gens)) {
      std::ostringstream msg;
      msg << "could not certify a component prime:";
      for (const auto& g : gens) msg << " <" << g.to_string() << ">";
      throw Error(ErrorKind::DecompositionIncomplete, msg.str());
    }
    leaves.push_back(std::move(gens));
  }

  // Deduplicate (reduced bases are canonical) ...
  std::vector<std::vector<Polynomial>> unique;
  for (auto& l : leaves) {
    bool dup = false;
    for (const auto& u : unique)
      if (u == l) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(std::move(l));
  }
  // ... and keep only minimal components: drop P when it contains another
  // component Q (then V(P) subset V(Q)).
  std::vector<Ideal> result;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    bool redundant = false;
    GroebnerBasis gi{ideal.ring, MonomialOrder::grevlex(), unique[i]};
    for (std::size_t j = 0; j < unique.size() && !redundant; ++j) {
      if (j == i || unique[j] == unique[i]) continue;
      bool contains_other = true;
      for (const auto& q : unique[j])
        if (!reduce(q, gi).is_zero()) {
          contains_other = false;
          break;
        }
      if (contains_other) redundant = true;
    }
    if (!redundant) result.emplace_back(ideal.ring, unique[i]);
  }
  std::sort(result.begin(), result.end(), [](const Ideal& a, const Ideal& b) {
    int da = dimension(a), db = dimension(b);
    if (da != db) return da > db;
    std::ostringstream sa, sb;
    for (const auto& g : a.gens) sa << g.to_string() << ";";
    for (const auto& g : b.gens) sb << g.to_string() << ";";
    return sa.str() < sb.str();
  });
  return result;
}

}  // namespace desing
