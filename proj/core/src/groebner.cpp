// groebner.cpp -- Buchberger's algorithm, reduced monic bases, and the
// derived ideal operations (intersection, colon, saturation, radical
// membership, elimination, dimension).

#include "desing/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "desing/errors.hpp"

namespace desing {

void Ideal::prune_zeros() {
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const Polynomial& f) { return f.is_zero(); }),
             gens.end());
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  assert(same_ring(a.ring, b.ring));
  Ideal r = a;
  r.gens.insert(r.gens.end(), b.gens.begin(), b.gens.end());
  return r;
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  assert(same_ring(a.ring, b.ring));
  Ideal r(a.ring, {});
  for (const auto& f : a.gens)
    for (const auto& g : b.gens) {
      Polynomial p = f * g;
      if (!p.is_zero()) r.gens.push_back(std::move(p));
    }
  return r;
}

Ideal ideal_plus(const Ideal& a, const Polynomial& f) {
  Ideal r = a;
  r.gens.push_back(f);
  return r;
}

Ideal ideal_pow(const Ideal& a, std::uint32_t e) {
  if (e == 0) return Ideal::unit(a.ring);
  Ideal r = a;
  for (std::uint32_t k = 1; k < e; ++k) r = ideal_product(r, a);
  return r;
}

namespace {

bool mono_divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

Mono mono_quot(const Mono& a, const Mono& b) {
  Mono m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    assert(a[i] >= b[i]);
    m[i] = a[i] - b[i];
  }
  return m;
}

int lex_cmp(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

}  // namespace

int MonomialOrder::cmp(const Mono& a, const Mono& b) const {
  switch (kind) {
    case OrderKind::Grevlex:
      return grevlex_cmp(a, b);
    case OrderKind::Lex:
      return lex_cmp(a, b);
    case OrderKind::Elim: {
      assert(elim_mask.size() == a.size());
      Mono fa(a.size(), 0), fb(a.size(), 0), ra(a.size(), 0), rb(a.size(), 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (elim_mask[i]) {
          fa[i] = a[i];
          fb[i] = b[i];
        } else {
          ra[i] = a[i];
          rb[i] = b[i];
        }
      }
      int front = grevlex_cmp(fa, fb);
      return front != 0 ? front : grevlex_cmp(ra, rb);
    }
  }
  return 0;
}

bool GroebnerBasis::is_unit() const {
  return elements.size() == 1 && elements.front().is_unit_constant();
}

const Mono& leading_mono(const Polynomial& f, const MonomialOrder& order) {
  assert(!f.is_zero());
  if (order.kind == OrderKind::Grevlex) return f.leading_mono();
  const Mono* best = nullptr;
  for (const auto& [m, c] : f.terms())
    if (!best || order.cmp(m, *best) > 0) best = &m;
  return *best;
}

Polynomial reduce(const Polynomial& f, const GroebnerBasis& gb) {
  if (gb.elements.empty()) return f;
  Polynomial cur = f;
  Polynomial done = Polynomial::zero(f.ring());
  while (!cur.is_zero()) {
    const Mono lt = leading_mono(cur, gb.order);
    Rational lc = cur.coeff(lt);
    const Polynomial* reducer = nullptr;
    for (const auto& g : gb.elements) {
      if (mono_divides(leading_mono(g, gb.order), lt)) {
        reducer = &g;
        break;
      }
    }
    if (reducer) {
      const Mono& glt = leading_mono(*reducer, gb.order);
      Mono q = mono_quot(lt, glt);
      cur = cur - mono_poly(f.ring(), q) * *reducer * (lc / reducer->coeff(glt));
    } else {
      done.add_term(lt, lc);
      cur.add_term(lt, -lc);
    }
  }
  return done;
}

namespace {

struct Pair {
  std::uint64_t lcm_degree;
  std::size_t i, j;  // i < j
  Mono lcm;
  bool operator<(const Pair& o) const {
    if (lcm_degree != o.lcm_degree) return lcm_degree < o.lcm_degree;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

}  // namespace

GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order) {
  GroebnerBasis gb{ideal.ring, order, {}};
  // Monic with respect to THIS order (grevlex monic() is not enough).
  auto monic_under = [&](const Polynomial& f) {
    return f * (Rational(1) / f.coeff(leading_mono(f, order)));
  };
  std::vector<Polynomial> basis;
  for (const auto& g : ideal.gens)
    if (!g.is_zero()) basis.push_back(monic_under(g));
  if (basis.empty()) return gb;

  std::set<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Mono l = mono_lcm(leading_mono(basis[i], order),
                        leading_mono(basis[j], order));
      queue.insert(Pair{mono_degree(l), i, j, std::move(l)});
      pending.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

  while (!queue.empty()) {
    Pair p = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({p.i, p.j});
    const Mono& li = leading_mono(basis[p.i], order);
    const Mono& lj = leading_mono(basis[p.j], order);
    // Coprime-leading-terms criterion: the S-polynomial reduces to zero.
    {
      bool coprime = true;
      for (std::size_t k = 0; k < li.size(); ++k)
        if (li[k] > 0 && lj[k] > 0) {
          coprime = false;
          break;
        }
      if (coprime) continue;
    }
    // Chain criterion: some other leading term divides the lcm and both
    // flanking pairs were already handled.
    {
      bool skip = false;
      for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
        if (k == p.i || k == p.j) continue;
        if (!mono_divides(leading_mono(basis[k], order), p.lcm)) continue;
        auto ik = std::minmax(p.i, k);
        auto jk = std::minmax(p.j, k);
        if (!pending.count({ik.first, ik.second}) &&
            !pending.count({jk.first, jk.second}))
          skip = true;
      }
      if (skip) continue;
    }
    Polynomial spoly =
        mono_poly(ideal.ring, mono_quot(p.lcm, li)) * basis[p.i] -
        mono_poly(ideal.ring, mono_quot(p.lcm, lj)) * basis[p.j];
    GroebnerBasis current{ideal.ring, order, basis};
    Polynomial nf = reduce(spoly, current);
    if (!nf.is_zero()) {
      basis.push_back(monic_under(nf));
      push_pairs(basis.size() - 1);
    }
  }

  // Minimalize: drop elements whose leading term another element divides.
  std::vector<bool> dropped(basis.size(), false);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (dropped[i]) continue;
    const Mono& li = leading_mono(basis[i], order);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (j == i || dropped[j]) continue;
      const Mono& lj = leading_mono(basis[j], order);
      if (mono_divides(lj, li) && (order.cmp(li, lj) != 0 || j < i)) {
        dropped[i] = true;
        break;
      }
    }
  }
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!dropped[i]) minimal.push_back(basis[i]);

  // Tail-reduce each element against the others; leading terms survive.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    GroebnerBasis others{ideal.ring, order, {}};
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.elements.push_back(minimal[j]);
    Polynomial nf = reduce(minimal[i], others);
    assert(!nf.is_zero());
    reduced.push_back(monic_under(nf));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Polynomial& a, const Polynomial& b) {
              return order.cmp(leading_mono(a, order), leading_mono(b, order)) <
                     0;
            });
  gb.elements = std::move(reduced);
  return gb;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  assert(same_ring(a.ring, b.ring));
  GroebnerBasis ga = groebner(a), gbb = groebner(b);
  return ga.elements == gbb.elements;
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) {
  return reduce(f, groebner(ideal)).is_zero();
}

bool is_unit_ideal(const Ideal& ideal) { return groebner(ideal).is_unit(); }

namespace {

// Lift into a ring with one auxiliary variable at the front.
Polynomial lift_front(const Polynomial& f, const RingPtr& ext) {
  std::vector<std::pair<Mono, Rational>> terms;
  for (const auto& [m, c] : f.terms()) {
    Mono e(m.size() + 1, 0);
    std::copy(m.begin(), m.end(), e.begin() + 1);
    terms.emplace_back(std::move(e), c);
  }
  return Polynomial::from_terms(ext, std::move(terms));
}

// Drop the front auxiliary variable (exponent must be zero).
Polynomial drop_front(const Polynomial& f, const RingPtr& ring) {
  std::vector<std::pair<Mono, Rational>> terms;
  for (const auto& [m, c] : f.terms()) {
    assert(m[0] == 0);
    terms.emplace_back(Mono(m.begin() + 1, m.end()), c);
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  assert(same_ring(a.ring, b.ring));
  std::vector<std::string> ext_vars = {"@t"};
  ext_vars.insert(ext_vars.end(), a.ring->vars.begin(), a.ring->vars.end());
  RingPtr ext = make_ring(std::move(ext_vars));
  Polynomial t = Polynomial::variable(ext, 0);
  Polynomial one_minus_t = Polynomial::constant(ext, 1) - t;
  Ideal mixed(ext, {});
  for (const auto& f : a.gens)
    if (!f.is_zero()) mixed.gens.push_back(t * lift_front(f, ext));
  for (const auto& g : b.gens)
    if (!g.is_zero()) mixed.gens.push_back(one_minus_t * lift_front(g, ext));
  std::vector<bool> mask(ext->arity(), false);
  mask[0] = true;
  GroebnerBasis gb = groebner(mixed, MonomialOrder::elim(mask));
  Ideal result(a.ring, {});
  for (const auto& e : gb.elements) {
    bool free_of_t = true;
    for (const auto& [m, c] : e.terms())
      if (m[0] != 0) {
        free_of_t = false;
        break;
      }
    if (free_of_t) result.gens.push_back(drop_front(e, a.ring));
  }
  return result;
}

Ideal colon(const Ideal& ideal, const Polynomial& f) {
  if (f.is_zero()) return Ideal::unit(ideal.ring);
  Ideal meet = ideal_intersect(ideal, Ideal(ideal.ring, {f}));
  Ideal result(ideal.ring, {});
  for (const auto& g : meet.gens) {
    auto q = g.exact_divide(f);
    assert(q.has_value());  // every element of I cap <f> is a multiple of f
    result.gens.push_back(std::move(*q));
  }
  return result;
}

Ideal colon(const Ideal& ideal, const Ideal& j) {
  std::vector<Polynomial> gens;
  for (const auto& g : j.gens)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return Ideal::unit(ideal.ring);
  Ideal acc = colon(ideal, gens.front());
  for (std::size_t i = 1; i < gens.size(); ++i)
    acc = ideal_intersect(acc, colon(ideal, gens[i]));
  return acc;
}

std::pair<Ideal, std::uint32_t> saturate(const Ideal& ideal, const Ideal& j) {
  Ideal prev = ideal;
  std::uint32_t n = 0;
  for (;;) {
    Ideal next = colon(prev, j);
    if (ideal_equal(prev, next)) return {prev, n};
    prev = std::move(next);
    ++n;
  }
}

bool radical_member(const Polynomial& f, const Ideal& ideal) {
  std::vector<std::string> ext_vars = {"@t"};
  ext_vars.insert(ext_vars.end(), ideal.ring->vars.begin(),
                  ideal.ring->vars.end());
  RingPtr ext = make_ring(std::move(ext_vars));
  Ideal lifted(ext, {});
  for (const auto& g : ideal.gens)
    if (!g.is_zero()) lifted.gens.push_back(lift_front(g, ext));
  Polynomial probe = Polynomial::constant(ext, 1) -
                     Polynomial::variable(ext, 0) * lift_front(f, ext);
  lifted.gens.push_back(std::move(probe));
  return is_unit_ideal(lifted);
}

bool radical_contains(const Ideal& big, const Ideal& small) {
  for (const auto& g : small.gens)
    if (!radical_member(g, big)) return false;
  return true;
}

bool same_radical(const Ideal& a, const Ideal& b) {
  return radical_contains(a, b) && radical_contains(b, a);
}

Ideal eliminate(const Ideal& ideal, const std::vector<bool>& front) {
  assert(front.size() == ideal.ring->arity());
  GroebnerBasis gb = groebner(ideal, MonomialOrder::elim(front));
  Ideal result(ideal.ring, {});
  for (const auto& e : gb.elements) {
    bool free_of_front = true;
    for (const auto& [m, c] : e.terms()) {
      for (std::size_t i = 0; i < m.size() && free_of_front; ++i)
        if (front[i] && m[i] != 0) free_of_front = false;
      if (!free_of_front) break;
    }
    if (free_of_front) result.gens.push_back(e);
  }
  return result;
}

int dimension(const Ideal& ideal) {
  GroebnerBasis gb = groebner(ideal);
  if (gb.is_unit()) return -1;
  std::size_t n = ideal.ring->arity();
  std::vector<Mono> lts;
  for (const auto& e : gb.elements) lts.push_back(e.leading_mono());
  // Largest variable subset S such that no leading term lives entirely on S.
  int best = 0;
  assert(n < 20);  // exhaustive subset scan; ambient dimensions are small
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool independent = true;
    for (const auto& m : lts) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (m[i] > 0 && !(s & (1u << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

}  // namespace desing
