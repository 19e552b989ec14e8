// pointwise.hpp -- local invariant evaluation at a rational point.
//
// An independent rendering of the stratifying function: instead of computing
// global maxima over chart loci (what the engine does), translate one
// rational point to the origin and walk the tower on the localized data.
// Divisors whose coordinate is nonzero at the point are units locally and
// drop out; the w-slot is the Taylor order of the weak part at the origin;
// descent builds the companion, picks a tame contact element, and expands the
// coefficient ideal by hand.  Used for two facts the global engine cannot
// state about itself: the value at a non-center point survives a blowup
// unchanged (mapped into the child chart), and off-center points carry
// strictly smaller values than the reported maximum.
//
// Violations throw std::runtime_error so both the doctest suites and the
// plain acceptance binary can surface them.

#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>

#include "desing/chart.hpp"
#include "desing/invariants.hpp"
#include "oracles.hpp"

namespace pointwise {

using namespace desing;

inline void pw_require(bool cond, const char* msg) {
  if (!cond) throw std::runtime_error(std::string("pointwise: ") + msg);
}

struct LocalModel {
  RingPtr ring;
  Ideal full;                          // translated controlled ideal
  std::uint32_t b = 1;
  std::map<int, std::size_t> divisor_coord;  // divisors THROUGH the point
  std::set<int> eminus;                // ids counted by the n-slot
};

inline std::uint32_t local_order(const Polynomial& g) {
  return oracles::order_at_point(
      g, std::vector<Rational>(g.ring()->arity(), Rational(0)));
}

inline std::uint32_t local_order(const Ideal& ideal) {
  std::uint32_t best = oracles::kOrderInfinity;
  for (const auto& g : ideal.gens)
    if (!g.is_zero()) best = std::min(best, local_order(g));
  return best;
}

inline bool involves(const Polynomial& f, std::size_t var) {
  for (const auto& [m, c] : f.terms()) {
    (void)c;
    if (m[var] > 0) return true;
  }
  return false;
}

// Translate a chart's controlled ideal to a rational point (which becomes the
// origin of the local model).  Divisors not through the point are dropped.
inline LocalModel localize(const Chart& chart, const std::vector<Rational>& point,
                           const std::set<int>& eminus) {
  LocalModel m;
  m.ring = chart.ring;
  m.b = chart.b;
  m.eminus = eminus;
  for (const auto& [id, rec] : chart.divisors)
    if (point[rec.coord] == 0) m.divisor_coord[id] = rec.coord;
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < chart.ring->arity(); ++i)
    images.push_back(Polynomial::variable(chart.ring, i) +
                     Polynomial::constant(chart.ring, point[i]));
  m.full = Ideal(chart.ring, {});
  for (const auto& g : chart.controlled_ideal().gens)
    m.full.gens.push_back(g.substitute(chart.ring, images));
  m.full.prune_zeros();
  return m;
}

// Is the origin an isolated point of V(locus)?  Saturate away the origin: the
// origin survives into the remainder exactly when it sits inside a bigger
// component.
inline bool origin_isolated(const Ideal& locus) {
  Ideal origin(locus.ring, {});
  for (std::size_t i = 0; i < locus.ring->arity(); ++i)
    origin.gens.push_back(Polynomial::variable(locus.ring, i));
  Ideal rest = saturate(locus, origin).first;
  for (const auto& g : rest.gens)
    if (g.evaluate(std::vector<Rational>(locus.ring->arity(), Rational(0))) != 0)
      return true;  // some generator is a local unit: origin not in the rest
  return false;
}

// The local value of the stratifying function at the model's origin.
// Levels unfold top-down exactly like the engine's tower: monomial game when
// the weak order vanishes, otherwise a (w, n) pair followed by the
// codimension-one stop, the isolated-point stop, or a descent.
inline FValue evaluate(LocalModel m) {
  FValue f;
  for (std::size_t level = 0; level <= m.ring->arity() + 1; ++level) {
    // Factor the surviving divisor coordinates out of the full ideal.
    std::map<int, std::uint32_t> a;
    Ideal weak = m.full;
    pw_require(!weak.gens.empty(), "empty local ideal");
    for (const auto& [id, coord] : m.divisor_coord) {
      std::uint32_t e = UINT32_MAX;
      for (const auto& g : weak.gens)
        e = std::min(e, g.divisibility_by_var(coord).value_or(UINT32_MAX));
      if (e == UINT32_MAX || e == 0) continue;
      a[id] = e;
      for (auto& g : weak.gens) g = g.divide_by_var_power(coord, e);
    }

    const std::uint32_t w_ord = local_order(weak);
    pw_require(w_ord != oracles::kOrderInfinity, "zero local weak ideal");
    if (w_ord == 0) {
      // Monomial case: the combinatorial game on the local exponents.
      GammaVal g = oracles::gamma_by_enumeration(a, m.b);
      pw_require(g.g1 > 0, "point outside the controlled locus");
      f.slots.push_back(g);
      return f;
    }

    const Rational w =
        Rational(static_cast<long>(w_ord)) / Rational(static_cast<long>(m.b));
    int n = 0;
    for (const auto& [id, coord] : m.divisor_coord) {
      (void)coord;
      if (m.eminus.count(id)) ++n;
    }
    f.slots.push_back(PairVal{w, n});

    // Companion: restores Sing = Max t locally.
    Ideal j2 = weak;
    std::uint32_t b2 = w_ord;
    if (w < 1) {
      const std::uint32_t mm = w_ord;  // = b * w
      j2 = ideal_pow(weak, m.b - mm);
      Polynomial mono = Polynomial::constant(m.ring, 1);
      for (const auto& [id, e] : a)
        mono = mono * Polynomial::variable(m.ring, m.divisor_coord.at(id)).pow(e);
      for (auto& g : ideal_pow(Ideal(m.ring, {mono}), mm).gens)
        j2.gens.push_back(g);
      b2 = mm * (m.b - mm);
    }
    if (n > 0) {
      // All surviving old divisors pass through the origin, so the single
      // maximal achieving subset is all of them.
      Ideal k(m.ring, {});
      for (const auto& [id, coord] : m.divisor_coord)
        if (m.eminus.count(id))
          k.gens.push_back(Polynomial::variable(m.ring, coord));
      for (auto& g : ideal_pow(k, b2).gens) j2.gens.push_back(g);
    }

    Ideal locus = singular_locus_ideal(j2, b2);
    auto r1 = r1_part(locus);
    if (r1 &&
        r1->evaluate(std::vector<Rational>(m.ring->arity(), Rational(0))) == 0) {
      f.slots.push_back(InfinityVal{});
      return f;
    }
    if (w > 1 && origin_isolated(locus)) return f;

    // Descend: tame contact element of the delta ideal, coefficient ideal.
    Ideal delta = delta_power(j2, b2 - 1);
    std::optional<std::size_t> z;
    std::vector<Polynomial> images;
    std::optional<int> consumed;
    for (const auto& g : delta.gens) {
      if (g.is_zero() || local_order(g) != 1) continue;
      for (std::size_t i = 0; i < m.ring->arity() && !z; ++i) {
        Mono lin(m.ring->arity(), 0);
        lin[i] = 1;
        const Rational c = g.coeff(lin);
        if (c == 0) continue;
        Polynomial rest = g - Polynomial::variable(m.ring, i) * c;
        if (involves(rest, i)) continue;  // not tame in x_i
        bool is_divisor_coord = false;
        int divisor_id = -1;
        for (const auto& [id, coord] : m.divisor_coord)
          if (coord == i) {
            is_divisor_coord = true;
            divisor_id = id;
          }
        if (is_divisor_coord && !rest.is_zero())
          continue;  // exceptional coordinates only serve literally
        z = i;
        if (is_divisor_coord) consumed = divisor_id;
        if (!rest.is_zero()) {
          images.clear();
          for (std::size_t v = 0; v < m.ring->arity(); ++v)
            images.push_back(Polynomial::variable(m.ring, v));
          images[i] =
              (Polynomial::variable(m.ring, i) - rest) * (Rational(1) / c);
        }
      }
      if (z) break;
    }
    pw_require(z.has_value(), "no tame contact element at the point");
    if (!images.empty()) {
      Ideal moved(m.ring, {});
      for (const auto& g : j2.gens)
        moved.gens.push_back(g.substitute(m.ring, images));
      j2 = std::move(moved);
    }

    // Coefficient ideal on V(z) with the factorial weights.
    std::vector<std::string> subvars;
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t v = 0; v < m.ring->arity(); ++v)
      if (v != *z) {
        remap[v] = subvars.size();
        subvars.push_back(m.ring->vars[v]);
      }
    RingPtr subring = make_ring(subvars);
    std::uint64_t fact = 1;
    for (std::uint32_t k = 2; k <= b2; ++k) fact *= k;
    Ideal next(subring, {});
    for (const auto& g : j2.gens) {
      std::map<std::uint32_t, Polynomial> coeffs;  // z-degree -> coefficient
      for (const auto& [mono, c] : g.terms()) {
        Mono sub(subvars.size(), 0);
        for (const auto& [v, nv] : remap) sub[nv] = mono[v];
        auto it = coeffs.emplace(mono[*z], Polynomial::zero(subring)).first;
        it->second.add_term(sub, c);
      }
      for (const auto& [k, ak] : coeffs) {
        if (k >= b2 || ak.is_zero()) continue;
        next.gens.push_back(
            ak.pow(static_cast<std::uint32_t>(fact / (b2 - k))));
      }
    }
    next.prune_zeros();
    pw_require(!next.gens.empty(), "coefficient ideal vanished");

    LocalModel deeper;
    deeper.ring = subring;
    deeper.full = next;
    deeper.b = static_cast<std::uint32_t>(fact);
    deeper.eminus = m.eminus;
    for (const auto& [id, coord] : m.divisor_coord) {
      if (consumed && id == *consumed) continue;
      deeper.divisor_coord[id] = remap.at(coord);
    }
    m = std::move(deeper);
  }
  throw std::runtime_error("pointwise: local tower did not terminate");
}

// Map a point off the center of a blowup into the child chart it lands in:
// the pivot chart of the smallest center coordinate that is nonzero at the
// point.  Returns (child chart id, child point).
inline std::pair<int, std::vector<Rational>> map_through_blowup(
    const ChartTree& tree, int parent_id, const std::vector<Rational>& point) {
  const Chart& parent = tree.chart(parent_id);
  pw_require(parent.center.has_value(), "parent chart was not blown up");
  const auto& coords = parent.center->coords;
  std::optional<std::size_t> pivot;
  for (std::size_t c : coords)
    if (point[c] != 0) {
      pivot = c;
      break;
    }
  pw_require(pivot.has_value(), "point lies on the center");
  int child_id = -1;
  for (const auto& [id, chart] : tree.charts)
    if (chart.parent && chart.parent->first == parent_id &&
        chart.parent->second == *pivot)
      child_id = id;
  pw_require(child_id >= 0, "pivot chart missing");
  const Chart& child = tree.chart(child_id);
  std::vector<Rational> image(point.size());
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (v == *pivot)
      image[v] = point[v];
    else if (std::find(coords.begin(), coords.end(), v) != coords.end())
      image[v] = point[v] / point[*pivot];
    else
      image[v] = point[v];
  }
  // Sanity: the child's parent images evaluated at the image recover the
  // original point.
  for (std::size_t v = 0; v < point.size(); ++v)
    pw_require(child.parent_images[v].evaluate(image) == point[v],
               "blowup image does not project back to the point");
  return {child_id, image};
}

}  // namespace pointwise
