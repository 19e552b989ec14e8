// invariants.cpp -- slot values, level objects, histories, and the
// companion / maximal-contact / coefficient-ideal descent machinery.

#include "desing/invariants.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "desing/errors.hpp"
#include "desing/gcd.hpp"

namespace desing {
namespace {

int rational_cmp(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int id_tuple_cmp(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace

int tvalue_cmp(const TValue& a, const TValue& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (std::holds_alternative<GammaVal>(a)) {
    const auto& x = std::get<GammaVal>(a);
    const auto& y = std::get<GammaVal>(b);
    // Ordered by (-Gamma_1, Gamma_2, Gamma_3): fewer divisors ranks higher.
    if (x.g1 != y.g1) return x.g1 > y.g1 ? -1 : 1;
    if (int c = rational_cmp(x.g2, y.g2)) return c;
    return id_tuple_cmp(x.g3, y.g3);
  }
  if (std::holds_alternative<PairVal>(a)) {
    const auto& x = std::get<PairVal>(a);
    const auto& y = std::get<PairVal>(b);
    if (int c = rational_cmp(x.w, y.w)) return c;
    if (x.n != y.n) return x.n < y.n ? -1 : 1;
    return 0;
  }
  return 0;  // infinity == infinity
}

std::string gamma_to_string(const GammaVal& g) {
  std::ostringstream out;
  out << "Gamma(" << g.g1 << "," << rational_to_string(g.g2) << ",(";
  for (std::size_t i = 0; i < g.g3.size(); ++i)
    out << (i ? "," : "") << g.g3[i];
  out << "))";
  return out.str();
}

std::string tvalue_to_string(const TValue& v) {
  if (std::holds_alternative<GammaVal>(v))
    return gamma_to_string(std::get<GammaVal>(v));
  if (std::holds_alternative<PairVal>(v)) {
    const auto& p = std::get<PairVal>(v);
    return "(" + rational_to_string(p.w) + "," + std::to_string(p.n) + ")";
  }
  return "inf";
}

int fvalue_cmp(const FValue& a, const FValue& b) {
  for (std::size_t i = 0; i < std::min(a.slots.size(), b.slots.size()); ++i)
    if (int c = tvalue_cmp(a.slots[i], b.slots[i])) return c;
  // Shared slots all tie: the shorter tuple ranks HIGHER (it stopped early).
  if (a.slots.size() != b.slots.size())
    return a.slots.size() < b.slots.size() ? 1 : -1;
  return 0;
}

std::string fvalue_to_string(const FValue& f) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < f.slots.size(); ++i)
    out << (i ? ", " : "") << tvalue_to_string(f.slots[i]);
  out << "]";
  return out.str();
}

// ---------------------------------------------------------------------------

LevelObject top_level_object(const Chart& chart) {
  LevelObject obj;
  obj.ring = chart.ring;
  for (std::size_t i = 0; i < chart.ring->arity(); ++i) obj.to_chart.push_back(i);
  obj.full = chart.controlled_ideal();
  obj.b = chart.b;
  obj.a = chart.a_exp;
  for (const auto& [id, rec] : chart.divisors) obj.divisor_coord[id] = rec.coord;
  obj.weak = chart.weak;
  return obj;
}

void refactor_level(LevelObject& obj) {
  obj.weak = obj.full;
  obj.weak.prune_zeros();
  assert(!obj.weak.gens.empty());
  obj.a.clear();
  for (const auto& [id, coord] : obj.divisor_coord) {
    std::uint32_t e = UINT32_MAX;
    for (const auto& g : obj.weak.gens)
      e = std::min(e, *g.divisibility_by_var(coord));
    obj.a[id] = e;
    if (e > 0)
      for (auto& g : obj.weak.gens) g = g.divide_by_var_power(coord, e);
  }
}

int LevelHistory::eminus_cutoff() const {
  assert(!max_w.empty());
  const Rational& current = max_w.back();
  std::size_t k0 = 0;
  while (max_w[k0] != current) ++k0;  // first state attaining the current max
  int k0_state = base_state + static_cast<int>(k0);
  return k0_state == base_state ? base_state : k0_state - 1;
}

// ---------------------------------------------------------------------------

WOrdResult max_w_ord(const LevelObject& obj) {
  Ideal sing = singular_locus_ideal(obj.full, obj.b);
  if (obj.monomial()) return WOrdResult{Rational(0), sing};
  MaxOrderResult r = max_order_on(obj.weak, sing);
  return WOrdResult{Rational(static_cast<long>(r.max_order)) /
                        Rational(static_cast<long>(obj.b)),
                    r.locus};
}

ESplit e_split(const LevelObject& obj,
               const std::map<int, DivisorRecord>& registry, int cutoff) {
  ESplit split;
  for (const auto& [id, coord] : obj.divisor_coord) {
    auto it = registry.find(id);
    assert(it != registry.end());
    if (it->second.birth <= cutoff)
      split.eminus.push_back(id);
    else
      split.eplus.push_back(id);
  }
  return split;
}

MaxTResult max_t(const LevelObject& obj, const Ideal& w_locus,
                 const std::vector<int>& eminus) {
  MaxTResult best;
  best.n_max = 0;
  best.locus = w_locus;
  best.achieving_subsets = {{}};
  // Largest s with some s-subset of old divisors still meeting the locus.
  for (std::size_t s = 1; s <= eminus.size(); ++s) {
    std::vector<std::vector<int>> achieving;
    std::vector<Ideal> cut_ideals;
    std::vector<int> pick;
    std::function<void(std::size_t)> scan = [&](std::size_t start) {
      if (pick.size() == s) {
        Ideal cut = w_locus;
        for (int id : pick)
          cut.gens.push_back(
              Polynomial::variable(obj.ring, obj.divisor_coord.at(id)));
        if (!is_unit_ideal(cut)) {
          achieving.push_back(pick);
          cut_ideals.push_back(Ideal(cut.ring, groebner(cut).elements));
        }
        return;
      }
      for (std::size_t i = start; i < eminus.size(); ++i) {
        pick.push_back(eminus[i]);
        scan(i + 1);
        pick.pop_back();
      }
    };
    scan(0);
    if (achieving.empty()) break;
    best.n_max = static_cast<int>(s);
    best.achieving_subsets = std::move(achieving);
    Ideal locus = cut_ideals.front();
    for (std::size_t i = 1; i < cut_ideals.size(); ++i)
      locus = ideal_intersect(locus, cut_ideals[i]);
    best.locus = std::move(locus);
  }
  return best;
}

std::optional<Polynomial> r1_part(const Ideal& locus) {
  std::vector<Polynomial> gens;
  for (const auto& g : locus.gens)
    if (!g.is_zero()) gens.push_back(g);
  assert(!gens.empty());
  GcdSquarefree g = gcd_squarefree(gens);
  if (g.gcd.is_constant()) return std::nullopt;
  return g.squarefree_part;
}

Companion companion(const LevelObject& obj, const WOrdResult& w,
                    const MaxTResult& t) {
  Companion comp;
  assert(w.w > 0);
  if (w.w == 1 && t.n_max == 0) {
    // Transversality is automatic at (1,0); the weak part itself descends.
    comp.ideal = obj.weak;
    comp.b = 1;
  } else if (w.w >= 1) {
    comp.ideal = obj.weak;
    Rational bw = w.w * Rational(static_cast<long>(obj.b));
    assert(bw.get_den() == 1);
    comp.b = static_cast<std::uint32_t>(bw.get_num().get_ui());
  } else {
    // 0 < w < 1: balance the weak part against the exceptional monomial.
    Rational mw = w.w * Rational(static_cast<long>(obj.b));
    assert(mw.get_den() == 1);
    std::uint32_t m = static_cast<std::uint32_t>(mw.get_num().get_ui());
    assert(m >= 1 && m < obj.b);
    Mono mono(obj.ring->arity(), 0);
    for (const auto& [id, e] : obj.a) mono[obj.divisor_coord.at(id)] += e;
    Ideal monomial(obj.ring, {mono_poly(obj.ring, mono)});
    comp.ideal = ideal_sum(ideal_pow(obj.weak, obj.b - m),
                           ideal_pow(monomial, m));
    comp.b = m * (obj.b - m);
  }
  if (t.n_max > 0) {
    // Push Sing down to the points lying on n_max old divisors: multiply the
    // coordinate ideals of the achieving subsets and add the b''-th power.
    Ideal k = Ideal::unit(obj.ring);
    for (const auto& subset : t.achieving_subsets) {
      Ideal coords(obj.ring, {});
      for (int id : subset)
        coords.gens.push_back(
            Polynomial::variable(obj.ring, obj.divisor_coord.at(id)));
      k = ideal_product(k, coords);
    }
    comp.ideal = ideal_sum(comp.ideal, ideal_pow(k, comp.b));
  }
  // Binding contract: the companion's singular locus is exactly Max t.
  Ideal sing = singular_locus_ideal(comp.ideal, comp.b);
  assert(same_radical(sing, t.locus));
  return comp;
}

ContactResult maximal_contact(const LevelObject& obj, const Companion& comp) {
  Ideal sing = singular_locus_ideal(comp.ideal, comp.b);
  assert(!is_unit_ideal(sing));
  GroebnerBasis sing_gb = groebner(sing);
  std::set<std::size_t> exceptional;
  for (const auto& [id, coord] : obj.divisor_coord) exceptional.insert(coord);

  // Order exactly 1 at every singular point: no common zero with the
  // gradient.
  auto order_one_everywhere = [&](const Polynomial& g) {
    Ideal test(obj.ring, sing_gb.elements);
    test.gens.push_back(g);
    for (std::size_t i = 0; i < obj.ring->arity(); ++i) {
      Polynomial d = g.differentiate(i);
      if (!d.is_zero()) test.gens.push_back(std::move(d));
    }
    return is_unit_ideal(test);
  };

  // A candidate realizes at variable i when it is c*x_i (+ terms free of
  // x_i, all of x_i-degree 0) with constant c != 0.
  auto linear_in = [&](const Polynomial& g, std::size_t i) -> std::optional<Rational> {
    Rational c(0);
    for (const auto& [m, coef] : g.terms()) {
      if (m[i] == 0) continue;
      Mono lin(m.size(), 0);
      lin[i] = 1;
      if (m != lin) return std::nullopt;  // x_i appears nonlinearly or mixed
      c = coef;
    }
    if (c == 0) return std::nullopt;
    return c;
  };

  std::vector<Polynomial> pool = sing_gb.elements;
  std::sort(pool.begin(), pool.end(),
            [](const Polynomial& a, const Polynomial& b) {
              return *a.total_degree() < *b.total_degree();
            });
  std::vector<bool> order_ok(pool.size(), false), order_known(pool.size(), false);
  auto passes = [&](std::size_t k) {
    if (!order_known[k]) {
      order_known[k] = true;
      order_ok[k] = order_one_everywhere(pool[k]);
    }
    return order_ok[k];
  };

  std::uint64_t max_deg = 0;
  for (const auto& g : pool) max_deg = std::max(max_deg, *g.total_degree());
  for (std::uint64_t deg = 1; deg <= max_deg; ++deg) {
    for (std::size_t var = 0; var < obj.ring->arity(); ++var) {
      for (std::size_t k = 0; k < pool.size(); ++k) {
        const Polynomial& g = pool[k];
        if (*g.total_degree() != deg) continue;
        auto c = linear_in(g, var);
        if (!c) continue;
        Polynomial h = g - Polynomial::variable(obj.ring, var) * *c;
        bool literal = h.is_zero();
        if (!literal && exceptional.count(var))
          continue;  // only a literal coordinate may consume a divisor
        if (!passes(k)) continue;
        ContactResult out;
        out.var = var;
        out.witness = g;
        if (literal && exceptional.count(var)) {
          out.consumed_divisor = true;
          for (const auto& [id, coord] : obj.divisor_coord)
            if (coord == var) out.consumed_id = id;
        }
        if (!literal) {
          std::vector<Polynomial> images;
          for (std::size_t i = 0; i < obj.ring->arity(); ++i)
            images.push_back(Polynomial::variable(obj.ring, i));
          images[var] = (Polynomial::variable(obj.ring, var) - h) *
                        (Rational(1) / *c);
          out.realization = std::move(images);
        }
        return out;
      }
    }
  }
  throw Error(ErrorKind::MaximalContactNotRealizable,
              "no hypersurface of maximal contact realizable as a coordinate");
}

namespace {

std::uint32_t factorial(std::uint32_t n) {
  assert(n <= 12);
  std::uint32_t f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

CoefficientIdeal coefficient_ideal(const LevelObject& obj,
                                   const Companion& comp, std::size_t z_var) {
  std::uint32_t bf = factorial(comp.b);
  std::vector<Polynomial> gens;
  for (const auto& f : comp.ideal.gens) {
    if (f.is_zero()) continue;
    // Slice into coefficients of powers of z.
    std::map<std::uint32_t, Polynomial> slices;
    for (const auto& [m, c] : f.terms()) {
      std::uint32_t i = m[z_var];
      Mono s = m;
      s[z_var] = 0;
      auto it = slices.find(i);
      if (it == slices.end())
        it = slices.emplace(i, Polynomial::zero(obj.ring)).first;
      it->second.add_term(s, c);
    }
    for (const auto& [i, coeff] : slices) {
      if (i >= comp.b || coeff.is_zero()) continue;
      gens.push_back(coeff.pow(bf / (comp.b - i)));
    }
  }
  std::map<std::size_t, std::size_t> remap;
  Ideal raw(obj.ring, std::move(gens));
  CoefficientIdeal out;
  out.ideal = restrict_to_subring(obj.ring, raw, {z_var}, &remap);
  out.b = bf;
  out.var_map = std::move(remap);
  return out;
}

GammaResult gamma_invariant(const LevelObject& obj) {
  Ideal sing = singular_locus_ideal(obj.full, obj.b);
  assert(!is_unit_ideal(sing));
  std::vector<int> ids;
  for (const auto& [id, e] : obj.a)
    if (e > 0) ids.push_back(id);
  std::sort(ids.begin(), ids.end());

  std::optional<GammaResult> best;
  std::vector<int> pick;
  std::uint64_t pick_sum = 0;
  // Scan subsets by ascending size; the first size with a qualifying subset
  // fixes Gamma_1, then maximize (sum a)/b and the id tuple.
  for (std::size_t size = 1; size <= ids.size() && !best; ++size) {
    std::function<void(std::size_t)> scan = [&](std::size_t start) {
      if (pick.size() == size) {
        if (pick_sum < obj.b) return;
        Ideal cut = sing;
        for (int id : pick)
          cut.gens.push_back(
              Polynomial::variable(obj.ring, obj.divisor_coord.at(id)));
        if (is_unit_ideal(cut)) return;  // subset misses the singular locus
        GammaVal val;
        val.g1 = static_cast<std::uint32_t>(size);
        val.g2 = Rational(static_cast<long>(pick_sum)) /
                 Rational(static_cast<long>(obj.b));
        val.g3 = pick;
        if (!best || tvalue_cmp(TValue(val), TValue(best->value)) > 0)
          best = GammaResult{val, pick};
        return;
      }
      for (std::size_t i = start; i < ids.size(); ++i) {
        pick.push_back(ids[i]);
        pick_sum += obj.a.at(ids[i]);
        scan(i + 1);
        pick_sum -= obj.a.at(ids[i]);
        pick.pop_back();
      }
    };
    scan(0);
  }
  assert(best.has_value());
  return *best;
}

}  // namespace desing
