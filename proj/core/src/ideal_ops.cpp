// ideal_ops.cpp -- the Delta filtration, order along subvarieties, and the
// Jacobian smoothness test.

#include "desing/ideal_ops.hpp"

#include <algorithm>
#include <functional>

#include "desing/errors.hpp"

namespace desing {
namespace {

// J + <all first partials of the generators>.
Ideal delta_once(const Ideal& ideal) {
  Ideal r = ideal;
  for (const auto& g : ideal.gens) {
    for (std::size_t i = 0; i < ideal.ring->arity(); ++i) {
      Polynomial d = g.differentiate(i);
      if (!d.is_zero()) r.gens.push_back(std::move(d));
    }
  }
  return r;
}

}  // namespace

Ideal delta_power(const Ideal& ideal, std::uint32_t s) {
  Ideal r = ideal;
  r.prune_zeros();
  for (std::uint32_t k = 0; k < s; ++k) {
    r = delta_once(r);
    // Keep the generator list from exploding: replace by the reduced basis.
    r = Ideal(r.ring, groebner(r).elements);
    if (is_unit_ideal(r)) return Ideal::unit(ideal.ring);
  }
  return r;
}

Ideal singular_locus_ideal(const Ideal& ideal, std::uint32_t b) {
  assert(b >= 1);
  return delta_power(ideal, b - 1);
}

std::uint32_t order_along(const Ideal& ideal, const Ideal& p) {
  assert(!is_unit_ideal(p));
  Ideal d = ideal;
  d.prune_zeros();
  assert(!d.gens.empty());
  // Bounded: Delta^s of a degree-d generator reaches a constant at s = d.
  std::uint64_t bound = UINT64_MAX;
  for (const auto& g : d.gens)
    bound = std::min(bound, *g.total_degree());
  GroebnerBasis pb = groebner(p);
  for (std::uint32_t s = 0; s <= bound; ++s) {
    bool inside = true;
    for (const auto& g : d.gens)
      if (!reduce(g, pb).is_zero()) {
        inside = false;
        break;
      }
    if (!inside) return s;
    d = delta_once(d);
    d = Ideal(d.ring, groebner(d).elements);
  }
  return static_cast<std::uint32_t>(bound) + 1;
}

MaxOrderResult max_order_on(const Ideal& ideal, const Ideal& on) {
  Ideal d = ideal;
  d.prune_zeros();
  if (d.gens.empty() || is_unit_ideal(d)) {
    // Unit (or zero) ideal: no positive order anywhere.
    return MaxOrderResult{0, on};
  }
  MaxOrderResult best{0, on};
  Ideal current = d;
  for (std::uint32_t m = 1;; ++m) {
    // current == Delta^{m-1}(J) at the top of each round.
    Ideal sum = ideal_sum(current, on);
    if (is_unit_ideal(sum)) break;
    best.max_order = m;
    best.locus = Ideal(sum.ring, groebner(sum).elements);
    current = delta_once(current);
    current = Ideal(current.ring, groebner(current).elements);
    if (current.gens.size() == 1 && current.gens.front().is_unit_constant())
      break;
  }
  return best;
}

SmoothnessReport jacobian_smoothness(const Ideal& ideal, std::uint32_t codim) {
  std::size_t n = ideal.ring->arity();
  assert(codim >= 1 && codim <= n);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.gens)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return SmoothnessReport{false, Ideal::zero(ideal.ring)};

  // Jacobian matrix: rows = generators, columns = variables.
  std::vector<std::vector<Polynomial>> jac;
  jac.reserve(gens.size());
  for (const auto& g : gens) {
    std::vector<Polynomial> row;
    row.reserve(n);
    for (std::size_t i = 0; i < n; ++i) row.push_back(g.differentiate(i));
    jac.push_back(std::move(row));
  }

  // All codim x codim minors, computed by cofactor expansion.
  std::vector<std::size_t> rows(gens.size()), cols(n);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  Ideal minors(ideal.ring, {});
  std::vector<std::size_t> rsel, csel;
  std::function<Polynomial(const std::vector<std::size_t>&,
                           const std::vector<std::size_t>&)>
      det = [&](const std::vector<std::size_t>& rs,
                const std::vector<std::size_t>& cs) -> Polynomial {
    if (rs.size() == 1) return jac[rs[0]][cs[0]];
    Polynomial acc = Polynomial::zero(ideal.ring);
    std::vector<std::size_t> sub_rs(rs.begin() + 1, rs.end());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (jac[rs[0]][cs[k]].is_zero()) continue;
      std::vector<std::size_t> sub_cs;
      for (std::size_t t = 0; t < cs.size(); ++t)
        if (t != k) sub_cs.push_back(cs[t]);
      Polynomial m = jac[rs[0]][cs[k]] * det(sub_rs, sub_cs);
      acc = (k % 2 == 0) ? acc + m : acc - m;
    }
    return acc;
  };
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows =
      [&](std::size_t start, std::size_t need) {
        if (need == 0) {
          csel.clear();
          pick_cols(0, codim);
          return;
        }
        for (std::size_t i = start; i + need <= rows.size(); ++i) {
          rsel.push_back(rows[i]);
          pick_rows(i + 1, need - 1);
          rsel.pop_back();
        }
      };
  pick_cols = [&](std::size_t start, std::size_t need) {
    if (need == 0) {
      Polynomial m = det(rsel, csel);
      if (!m.is_zero()) minors.gens.push_back(std::move(m));
      return;
    }
    for (std::size_t i = start; i + need <= cols.size(); ++i) {
      csel.push_back(cols[i]);
      pick_cols(i + 1, need - 1);
      csel.pop_back();
    }
  };
  if (gens.size() >= codim) pick_rows(0, codim);

  // Dimension check first: smooth of codimension c needs pure dimension n-c.
  int dim = dimension(Ideal(ideal.ring, gens));
  if (dim != static_cast<int>(n - codim)) {
    SmoothnessReport r;
    r.smooth = false;
    r.obstruction = Ideal(ideal.ring, gens);
    return r;
  }
  Ideal obstruction = ideal_sum(Ideal(ideal.ring, gens), minors);
  if (is_unit_ideal(obstruction)) return SmoothnessReport{true, std::nullopt};
  SmoothnessReport r;
  r.smooth = false;
  r.obstruction = Ideal(obstruction.ring, groebner(obstruction).elements);
  return r;
}

}  // namespace desing
