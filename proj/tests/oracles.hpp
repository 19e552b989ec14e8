// oracles.hpp -- independent reference implementations for cross-checks.
//
// Everything here recomputes a quantity the library produces, by a different
// route: Taylor-shift order instead of the derivative filtration, staircase
// enumeration instead of the dimension routine, exhaustive subset search
// instead of the incremental invariant games, term-by-term expansion instead
// of the substitution kernel, and a criterion-free Buchberger loop instead of
// the production one.  Tests compare the two routes exactly.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "desing/groebner.hpp"
#include "desing/invariants.hpp"

namespace oracles {

using desing::GammaVal;
using desing::GroebnerBasis;
using desing::Ideal;
using desing::Mono;
using desing::MonomialOrder;
using desing::Polynomial;
using desing::Rational;
using desing::RingPtr;

// ---------------------------------------------------------------------------
// Order of f at a rational point, by shifting the point to the origin with
// explicit binomial expansion and taking the least total degree present.

inline std::uint32_t binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint32_t>(r);
}

// Infinity sentinel for the zero polynomial.
inline constexpr std::uint32_t kOrderInfinity = UINT32_MAX;

inline std::uint32_t order_at_point(const Polynomial& f,
                                    const std::vector<Rational>& point) {
  if (f.is_zero()) return kOrderInfinity;
  const std::size_t n = point.size();
  std::map<Mono, Rational> shifted;
  for (const auto& [mono, coef] : f.terms()) {
    // Expand c * prod (x_i + p_i)^{e_i} one variable at a time.
    std::map<Mono, Rational> acc{{Mono(n, 0), coef}};
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t e = mono[i];
      if (e == 0) continue;
      std::map<Mono, Rational> next;
      for (std::uint32_t k = 0; k <= e; ++k) {
        const Rational scale =
            Rational(binomial(e, k)) * desing::rational_pow(point[i], e - k);
        if (scale == 0 && k != e) continue;
        for (const auto& [m, c] : acc) {
          Mono m2 = m;
          m2[i] += k;
          next[m2] += c * scale;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [m, c] : acc) shifted[m] += c;
  }
  std::uint32_t best = kOrderInfinity;
  for (const auto& [m, c] : shifted) {
    if (c == 0) continue;
    std::uint32_t deg = 0;
    for (std::uint32_t e : m) deg += e;
    best = std::min(best, deg);
  }
  return best;
}

inline std::uint32_t order_at_point(const Ideal& ideal,
                                    const std::vector<Rational>& point) {
  std::uint32_t best = kOrderInfinity;
  for (const Polynomial& g : ideal.gens)
    best = std::min(best, order_at_point(g, point));
  return best;
}

// ---------------------------------------------------------------------------
// Dimension of a MONOMIAL ideal by the staircase rule: the largest variable
// subset S such that no generator's support is contained in S.

inline int staircase_dimension(const RingPtr& ring,
                               const std::vector<Mono>& gens) {
  const std::size_t n = ring->arity();
  // A unit generator (all-zero mono) kills every subset: dimension -1.
  int best = -1;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    bool ok = true;
    for (const Mono& g : gens) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i)
        if (g[i] > 0 && !(mask & (std::size_t(1) << i))) {
          inside = false;
          break;
        }
      if (inside) {
        ok = false;
        break;
      }
    }
    if (ok) {
      int size = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) ++size;
      best = std::max(best, size);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// The monomial game by exhaustive subset enumeration.

inline GammaVal gamma_by_enumeration(const std::map<int, std::uint32_t>& a,
                                     std::uint32_t b) {
  std::vector<int> ids;
  for (const auto& [id, e] : a)
    if (e > 0) ids.push_back(id);
  GammaVal best;
  bool have = false;
  const std::size_t n = ids.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::uint64_t sum = 0;
    std::vector<int> tuple;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        sum += a.at(ids[i]);
        tuple.push_back(ids[i]);
      }
    if (sum < b) continue;
    GammaVal cand;
    cand.g1 = static_cast<std::uint32_t>(tuple.size());
    cand.g2 = Rational(static_cast<long>(sum)) / Rational(static_cast<long>(b));
    cand.g3 = tuple;  // ids ascend already
    auto better = [](const GammaVal& x, const GammaVal& y) {
      if (x.g1 != y.g1) return x.g1 < y.g1;           // smaller size wins
      if (x.g2 != y.g2) return x.g2 > y.g2;           // larger sum wins
      return x.g3 > y.g3;                             // lex-larger tuple wins
    };
    if (!have || better(cand, best)) {
      best = cand;
      have = true;
    }
  }
  return best;  // g1 == 0 when no subset reaches b
}

// n-part of the t-invariant by exhaustive subset search: the largest s such
// that the locus still meets the intersection of some s of the listed
// divisor hypersurfaces.
inline int n_by_enumeration(const Ideal& locus,
                            const std::vector<std::pair<int, std::size_t>>&
                                divisor_coords /* (id, coord) */) {
  const std::size_t n = divisor_coords.size();
  int best = 0;
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    Ideal sum = locus;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        sum.gens.push_back(
            Polynomial::variable(locus.ring, divisor_coords[i].second));
        ++size;
      }
    if (!desing::is_unit_ideal(sum)) best = std::max(best, size);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Substitution by plain term-by-term expansion.

inline Polynomial substitute_by_expansion(const Polynomial& f,
                                          const RingPtr& target,
                                          const std::vector<Polynomial>& images) {
  Polynomial acc = Polynomial::zero(target);
  for (const auto& [mono, coef] : f.terms()) {
    Polynomial term = Polynomial::constant(target, coef);
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (std::uint32_t k = 0; k < mono[i]; ++k) term = term * images[i];
    acc = acc + term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Criterion-free Buchberger: every S-pair processed, own reduction loop.

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline const Mono& lead(const Polynomial& f, const MonomialOrder& order) {
  const Mono* best = nullptr;
  for (const auto& [m, c] : f.terms()) {
    (void)c;
    if (!best || order.cmp(m, *best) > 0) best = &m;
  }
  return *best;
}

inline Polynomial reduce_full(Polynomial f, const std::vector<Polynomial>& basis,
                              const MonomialOrder& order) {
  const RingPtr ring = f.ring();
  bool changed = true;
  while (changed && !f.is_zero()) {
    changed = false;
    for (const auto& [m, c] : f.terms()) {
      for (const Polynomial& g : basis) {
        if (g.is_zero()) continue;
        const Mono& lg = lead(g, order);
        if (!mono_divides(lg, m)) continue;
        Mono q = m;
        for (std::size_t i = 0; i < q.size(); ++i) q[i] -= lg[i];
        const Rational scale = c / g.coeff(lg);
        f = f - desing::mono_poly(ring, q) * g * scale;
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return f;
}

inline std::vector<Polynomial> buchberger_naive(const Ideal& ideal,
                                                const MonomialOrder& order) {
  const RingPtr ring = ideal.ring;
  std::vector<Polynomial> basis;
  for (const Polynomial& g : ideal.gens)
    if (!g.is_zero()) basis.push_back(g);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const Mono &li = lead(basis[i], order), &lj = lead(basis[j], order);
    const Mono l = mono_lcm(li, lj);
    Mono qi = l, qj = l;
    for (std::size_t k = 0; k < l.size(); ++k) {
      qi[k] -= li[k];
      qj[k] -= lj[k];
    }
    Polynomial s = desing::mono_poly(ring, qi) * basis[i] * basis[j].coeff(lj) -
                   desing::mono_poly(ring, qj) * basis[j] * basis[i].coeff(li);
    Polynomial r = reduce_full(std::move(s), basis, order);
    if (!r.is_zero()) {
      for (std::size_t k = 0; k < basis.size(); ++k)
        pairs.emplace_back(k, basis.size());
      basis.push_back(std::move(r));
    }
  }
  // Interreduce to the canonical form: minimal leads, reduced tails, monic.
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j)
      if (j != i && !basis[j].is_zero() &&
          mono_divides(lead(basis[j], order), lead(basis[i], order))) {
        // Keep the one with the smaller index among equal leads.
        if (order.cmp(lead(basis[j], order), lead(basis[i], order)) != 0 || j < i)
          redundant = true;
      }
    if (!redundant) out.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) others.push_back(out[j]);
    out[i] = reduce_full(out[i], others, order);
  }
  std::vector<Polynomial> final_out;
  for (Polynomial& g : out)
    if (!g.is_zero()) final_out.push_back(g * (Rational(1) / g.coeff(lead(g, order))));
  std::sort(final_out.begin(), final_out.end(),
            [&](const Polynomial& x, const Polynomial& y) {
              return order.cmp(lead(x, order), lead(y, order)) < 0;
            });
  return final_out;
}

// ---------------------------------------------------------------------------
// Deterministic random inputs.

struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}

  int pick(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
  }
  Rational rational(int lo = -5, int hi = 5, int den_hi = 3) {
    const int num = pick(lo, hi);
    const int den = pick(1, den_hi);
    return Rational(num) / Rational(den);
  }
  Mono mono(std::size_t arity, std::uint32_t max_exp) {
    Mono m(arity, 0);
    for (std::size_t i = 0; i < arity; ++i)
      m[i] = static_cast<std::uint32_t>(pick(0, static_cast<int>(max_exp)));
    return m;
  }
  Polynomial polynomial(const RingPtr& ring, int terms, std::uint32_t max_exp) {
    Polynomial f = Polynomial::zero(ring);
    for (int t = 0; t < terms; ++t) {
      Rational c = rational();
      if (c == 0) c = 1;
      f = f + desing::mono_poly(ring, mono(ring->arity(), max_exp)) * c;
    }
    return f;
  }
};

}  // namespace oracles
