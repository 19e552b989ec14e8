// resolver.cpp -- canonical resolution steps and the principalization driver.
//
// One resolution step is planned in two stages.  First every participating
// leaf chart builds its top level object and all charts walk the invariant
// tower together: at each level the global maximum of (w, n) is taken (w
// first, then n against the shared old/new divisor split), charts strictly
// below it drop out, and the surviving charts either decide the step (a
// monomial value, an order-one hypersurface in the locus, a rational point)
// or descend one level along their maximal contacts.  Second, the decided
// per-chart actions are applied in ascending chart id under one shared step
// index, so the local centers of one global center produce one divisor id.
//
// Histories of (max w, max t) per level are owned by the driver and are
// global across charts; they define which exceptional divisors count as
// "old" for the n-part of t.  A history entry exists for every state since
// the level's base, padding states where the level was not reached, because
// the birth cutoff is computed by base + index arithmetic.

#include "desing/resolver.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "descent.hpp"
#include "desing/automorphism.hpp"
#include "desing/errors.hpp"
#include "desing/groebner.hpp"
#include "desing/ideal_ops.hpp"
#include "desing/primes.hpp"

namespace desing {
namespace detail {
namespace {

// ---------------------------------------------------------------------------
// History bookkeeping.

// Record the global (max w, max t) of `level` at `state`.  Skipped states
// repeat the previous entry so that one entry per state is kept; planning
// the same state again overwrites idempotently.  Returns true when the value
// differs from the previous state's entry (deeper histories must reset).
bool record_history(HistoryMap& histories, int level, int state,
                    const Rational& w, const TValue& t) {
  auto it = histories.find(level);
  if (it == histories.end()) {
    LevelHistory h;
    h.base_state = state;
    h.max_w.push_back(w);
    h.max_t.push_back(t);
    histories.emplace(level, std::move(h));
    return true;
  }
  LevelHistory& h = it->second;
  assert(state >= h.base_state);
  std::size_t idx = static_cast<std::size_t>(state - h.base_state);
  while (h.max_w.size() < idx) {  // pad states where the level was skipped
    h.max_w.push_back(h.max_w.back());
    h.max_t.push_back(h.max_t.back());
  }
  if (h.max_w.size() == idx) {
    assert(w <= h.max_w.back());  // the invariant never rises at a level
    h.max_w.push_back(w);
    h.max_t.push_back(t);
  } else {
    assert(idx + 1 == h.max_w.size());  // re-planning the current state
    h.max_w[idx] = w;
    h.max_t[idx] = t;
  }
  if (idx == 0) return true;
  return h.max_w[idx - 1] != w || tvalue_cmp(h.max_t[idx - 1], t) != 0;
}

// Erase every history strictly deeper than `level` (the value at `level`
// changed, so the old/new split of the levels below restarts).
void reset_deeper(HistoryMap& histories, int level) {
  for (auto it = histories.begin(); it != histories.end();) {
    if (it->first < level) {
      it = histories.erase(it);
    } else {
      ++it;
    }
  }
}

// Birth cutoff for the old-divisor set E^- at `level`, as if (state, w) were
// appended: divisors born at or before the cutoff are old.  k0 is the first
// state attaining the current max w; while the max persists from the base
// the whole history is old territory, after a drop only what existed before
// the drop is.
int cutoff_with(const HistoryMap& histories, int level, int state,
                const Rational& w) {
  auto it = histories.find(level);
  if (it == histories.end()) return state;
  const LevelHistory& h = it->second;
  assert(state >= h.base_state);
  std::size_t have = std::min(h.max_w.size(),
                              static_cast<std::size_t>(state - h.base_state));
  if (have == 0) return state;  // history starts at this very state
  for (std::size_t i = 0; i < have; ++i) {
    if (h.max_w[i] == w) {
      int k0 = h.base_state + static_cast<int>(i);
      return k0 == h.base_state ? h.base_state : k0 - 1;
    }
  }
  return state - 1;  // w drops right now: only the past is old
}

// ---------------------------------------------------------------------------
// Per-chart descent state.

struct LevelCtx {
  LevelObject obj;
  WOrdResult w;
  MaxTResult t;
};

struct ChartCtx {
  int id = 0;
  std::vector<std::size_t> flags;  // chart coords pinned to zero in centers
  std::vector<LevelCtx> levels;    // [0] = top of the tower
  bool consumed = false;           // a contact consumed a divisor trace
};

std::vector<LevelObject*> level_ptrs(ChartCtx& c) {
  std::vector<LevelObject*> v;
  v.reserve(c.levels.size());
  for (auto& L : c.levels) v.push_back(&L.obj);
  return v;
}

// Realize the order-one locus factor g as a level coordinate, applying a
// tame substitution x_v |-> (x_v - h)/c when g = c x_v + h with constant c
// and h free of x_v.  Divisor-trace coordinates are allowed literally only
// (substituting at one would move the divisor).  Returns the level variable.
std::size_t realize_r1(ChartTree& tree, ChartCtx& ctx, const Polynomial& g) {
  LevelObject& obj = ctx.levels.back().obj;
  const std::size_t n = obj.ring->arity();
  if (g.total_degree() == std::optional<std::uint64_t>(1) &&
      g.terms().size() == 1) {
    const Mono& m = g.terms().begin()->first;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] == 1) return v;
  }
  std::set<std::size_t> traces;
  for (const auto& [id, v] : obj.divisor_coord) traces.insert(v);
  for (std::size_t v = 0; v < n; ++v) {
    if (traces.count(v)) continue;
    Polynomial dv = g.differentiate(v);
    if (!dv.is_unit_constant()) continue;  // need g = c x_v + h, h free of v
    const Rational c = dv.coeff(Mono(n, 0));
    Polynomial xv = Polynomial::variable(obj.ring, v);
    Polynomial h = g - xv * c;
    assert(h.differentiate(v).is_zero());
    std::vector<Polynomial> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      images.push_back(Polynomial::variable(obj.ring, i));
    images[v] = (xv - h) * (Rational(1) / c);
    apply_level_realization(tree, ctx.id, level_ptrs(ctx), images);
    return v;
  }
  throw Error(ErrorKind::R1NotRealizable,
              "order-one locus factor " + g.to_string() +
                  " is not a coordinate up to a tame substitution");
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial transport between chart ring and level subrings.

Polynomial lift_to_chart(const Polynomial& f, const RingPtr& chart_ring,
                         const std::vector<std::size_t>& to_chart) {
  std::vector<Polynomial> images;
  images.reserve(to_chart.size());
  for (std::size_t v : to_chart)
    images.push_back(Polynomial::variable(chart_ring, v));
  return f.substitute(chart_ring, images);
}

Polynomial chart_to_level(const Polynomial& f, const LevelObject& obj) {
  const RingPtr& chart_ring = f.ring();
  std::vector<Polynomial> images(chart_ring->arity(),
                                 Polynomial::zero(obj.ring));
  std::vector<bool> mapped(chart_ring->arity(), false);
  for (std::size_t v = 0; v < obj.to_chart.size(); ++v) {
    images[obj.to_chart[v]] = Polynomial::variable(obj.ring, v);
    mapped[obj.to_chart[v]] = true;
  }
#ifndef NDEBUG
  for (const auto& [m, coef] : f.terms())
    for (std::size_t j = 0; j < m.size(); ++j) assert(m[j] == 0 || mapped[j]);
#endif
  (void)mapped;
  return f.substitute(obj.ring, images);
}

void apply_level_realization(ChartTree& tree, int chart_id,
                             const std::vector<LevelObject*>& levels,
                             const std::vector<Polynomial>& images) {
  assert(!levels.empty());
  const LevelObject& deep = *levels.back();
  const std::size_t n = deep.ring->arity();
  assert(images.size() == n);

  Chart& chart = tree.chart(chart_id);
  Automorphism phi(chart.ring, chart.exceptional_coords());
  for (std::size_t v = 0; v < n; ++v) {
    Polynomial xv = Polynomial::variable(deep.ring, v);
    if (images[v] == xv) continue;
    // Realizable images have the shape s x_v + r with s a nonzero scalar and
    // r free of x_v; split off the two tame moves.
    Polynomial ds = images[v].differentiate(v);
    assert(ds.is_unit_constant());
    const Rational s = ds.coeff(Mono(n, 0));
    Polynomial r = images[v] - xv * s;
    assert(r.differentiate(v).is_zero());
    std::size_t V = deep.to_chart[v];
    if (s != 1) {
      std::vector<std::vector<Rational>> mat(
          chart.ring->arity(),
          std::vector<Rational>(chart.ring->arity(), Rational(0)));
      for (std::size_t i = 0; i < chart.ring->arity(); ++i) mat[i][i] = 1;
      mat[V][V] = s;
      phi.push(LinearMove{std::move(mat)});
    }
    if (!r.is_zero()) {
      // Net image of x_V under (linear, then shift) is s (x_V + shift);
      // match s x_V + r by shifting r/s.
      Polynomial shift =
          lift_to_chart(r * (Rational(1) / s), chart.ring, deep.to_chart);
      phi.push(TriangularMove{V, std::move(shift)});
    }
  }
  if (phi.is_identity()) return;
  apply_chart_automorphism(tree, chart_id, phi);

  // Rewrite every level object of the stack: the same substitution
  // restricted to each level subring.
  for (LevelObject* obj : levels) {
    std::vector<Polynomial> lv;
    lv.reserve(obj->ring->arity());
    for (std::size_t i = 0; i < obj->ring->arity(); ++i)
      lv.push_back(Polynomial::variable(obj->ring, i));
    bool touched = false;
    for (std::size_t v = 0; v < n; ++v) {
      Polynomial xv = Polynomial::variable(deep.ring, v);
      if (images[v] == xv) continue;
      std::size_t V = deep.to_chart[v];
      std::size_t iv = obj->to_chart.size();
      for (std::size_t i = 0; i < obj->to_chart.size(); ++i)
        if (obj->to_chart[i] == V) iv = i;
      assert(iv < obj->to_chart.size());
      Polynomial img_chart =
          lift_to_chart(images[v], tree.chart(chart_id).ring, deep.to_chart);
      lv[iv] = chart_to_level(img_chart, *obj);
      touched = true;
    }
    if (!touched) continue;
    for (Polynomial& g : obj->full.gens) g = g.substitute(obj->ring, lv);
    for (Polynomial& g : obj->weak.gens) g = g.substitute(obj->ring, lv);
  }
}

// ---------------------------------------------------------------------------
// The staged planner.

PlanResult plan_descent(ChartTree& tree, HistoryMap& histories, int state,
                        int top_level,
                        const std::map<int, std::vector<std::size_t>>& base_flags,
                        const TopBuilder& make_top, const TValue* stop_at) {
  PlanResult result;
  std::vector<ChartCtx> ctxs;
  for (int id : tree.leaf_ids()) {
    std::optional<LevelObject> top = make_top(tree.chart(id));
    if (!top) continue;
    ChartCtx ctx;
    ctx.id = id;
    if (auto it = base_flags.find(id); it != base_flags.end())
      ctx.flags = it->second;
    ctx.levels.push_back(LevelCtx{std::move(*top), {}, {}});
    ctxs.push_back(std::move(ctx));
  }
  if (ctxs.empty()) return result;

  std::vector<ChartCtx*> live;
  live.reserve(ctxs.size());
  for (auto& c : ctxs) live.push_back(&c);

  StepDecision dec;
  FValue fv;
  int level = top_level;

  for (;;) {
    assert(level >= 1);

    // Stage 1: global max of w-ord across the surviving charts.
    Rational wmax(-1);
    for (ChartCtx* c : live) {
      LevelCtx& L = c->levels.back();
      L.w = max_w_ord(L.obj);
      if (L.w.w > wmax) wmax = L.w.w;
    }
    assert(wmax >= 0);

    if (wmax == 0) {
      // Monomial case at this level in every surviving chart: the slot is
      // the Gamma value and the step is decided right here.
      std::vector<std::pair<ChartCtx*, GammaResult>> gs;
      gs.reserve(live.size());
      for (ChartCtx* c : live)
        gs.emplace_back(c, gamma_invariant(c->levels.back().obj));
      const GammaResult* best = nullptr;
      for (const auto& [c, g] : gs)
        if (!best || tvalue_cmp(TValue(g.value), TValue(best->value)) > 0)
          best = &g;
      TValue slot{best->value};
      if (record_history(histories, level, state, Rational(0), slot))
        reset_deeper(histories, level);
      fv.slots.push_back(slot);
      if (level == top_level) {
        result.top_slot = slot;
        if (stop_at && tvalue_cmp(slot, *stop_at) <= 0) {
          result.stopped_at_top = true;
          return result;
        }
      }
      dec.info.level = level;
      bool top_plain = (level == top_level && gs.front().first->flags.empty());
      if (top_plain && best->value.g1 == 1) {
        // Codimension-1 monomial center: unload that divisor's exponent in
        // every achieving chart (no new charts).
        int H = best->value.g3.front();
        for (auto& [c, g] : gs) {
          if (tvalue_cmp(TValue(g.value), slot) != 0) continue;
          const LevelObject& obj = c->levels.back().obj;
          ChartAction act;
          act.chart = c->id;
          act.op = ChartAction::Op::Unload;
          act.divisor_id = H;
          act.coord = obj.to_chart.at(obj.divisor_coord.at(H));
          dec.actions.push_back(std::move(act));
        }
        dec.info.bookkeeping = true;
      } else {
        // Genuine blowup of the divisor intersection within the flag.
        for (auto& [c, g] : gs) {
          if (tvalue_cmp(TValue(g.value), slot) != 0) continue;
          const LevelObject& obj = c->levels.back().obj;
          ChartAction act;
          act.chart = c->id;
          act.op = ChartAction::Op::Blowup;
          act.coords.insert(c->flags.begin(), c->flags.end());
          for (int H : g.center_divisors)
            act.coords.insert(obj.to_chart.at(obj.divisor_coord.at(H)));
          dec.actions.push_back(std::move(act));
        }
      }
      break;
    }

    {
      std::vector<ChartCtx*> keep;
      for (ChartCtx* c : live)
        if (c->levels.back().w.w == wmax) keep.push_back(c);
      live.swap(keep);
    }

    // Stage 2: global max of the n-part against the shared old/new divisor
    // split this (state, w) entry produces.
    int cut = cutoff_with(histories, level, state, wmax);
    int nmax = -1;
    for (ChartCtx* c : live) {
      LevelCtx& L = c->levels.back();
      ESplit es = e_split(L.obj, tree.chart(c->id).divisors, cut);
      L.t = max_t(L.obj, L.w.locus, es.eminus);
      nmax = std::max(nmax, L.t.n_max);
    }
    {
      std::vector<ChartCtx*> keep;
      for (ChartCtx* c : live)
        if (c->levels.back().t.n_max == nmax) keep.push_back(c);
      live.swap(keep);
    }

    TValue slot{PairVal{wmax, nmax}};
    if (record_history(histories, level, state, wmax, slot))
      reset_deeper(histories, level);
    fv.slots.push_back(slot);
    if (level == top_level) {
      result.top_slot = slot;
      if (stop_at && tvalue_cmp(slot, *stop_at) <= 0) {
        result.stopped_at_top = true;
        return result;
      }
    }

    // Rule: an order-one hypersurface inside the locus is itself the center.
    // Charts without one drop out of the step (open condition).
    std::vector<std::pair<ChartCtx*, Polynomial>> hits;
    for (ChartCtx* c : live)
      if (auto g = r1_part(c->levels.back().t.locus)) hits.emplace_back(c, *g);
    if (!hits.empty()) {
      TValue inf{InfinityVal{}};
      if (record_history(histories, level - 1, state, Rational(0), inf))
        reset_deeper(histories, level - 1);
      fv.slots.push_back(inf);
      dec.info.level = level - 1;
      for (auto& [c, g] : hits) {
        SmoothnessReport rep =
            jacobian_smoothness(Ideal(c->levels.back().obj.ring, {g}), 1);
        if (!rep.smooth)
          throw Error(ErrorKind::R1NotRealizable,
                      "order-one center V(" + g.to_string() +
                          ") is not smooth");
        std::size_t v = realize_r1(tree, *c, g);
        const LevelObject& obj = c->levels.back().obj;
        ChartAction act;
        act.chart = c->id;
        if (level == top_level && c->flags.empty()) {
          // Codimension-1 center in the ambient chart: pure bookkeeping,
          // either unloading an existing divisor or registering the
          // hypersurface as a fresh one.
          std::optional<int> H;
          for (const auto& [id2, vv] : obj.divisor_coord)
            if (vv == v) H = id2;
          if (H) {
            act.op = ChartAction::Op::Unload;
            act.divisor_id = *H;
          } else {
            act.op = ChartAction::Op::Register;
          }
          act.coord = obj.to_chart.at(v);
          dec.info.bookkeeping = true;
        } else {
          act.op = ChartAction::Op::Blowup;
          act.coords.insert(c->flags.begin(), c->flags.end());
          act.coords.insert(obj.to_chart.at(v));
        }
        dec.actions.push_back(std::move(act));
      }
      break;
    }

    // Rule: zero-dimensional locus in every surviving chart (once the order
    // genuinely exceeds the threshold): blow up the point.
    if (wmax > 1) {
      bool all0 = true;
      for (ChartCtx* c : live)
        if (dimension(c->levels.back().t.locus) != 0) {
          all0 = false;
          break;
        }
      if (all0) {
        dec.info.level = level;
        for (ChartCtx* c : live) {
          LevelCtx& L = c->levels.back();
          std::vector<Ideal> pts = minimal_primes(L.t.locus);
          if (pts.size() != 1)
            throw Error(ErrorKind::CenterNotRealizable,
                        "zero-dimensional locus is not a single point");
          GroebnerBasis pgb = groebner(pts.front());
          const std::size_t n = L.obj.ring->arity();
          std::vector<Rational> pt(n, Rational(0));
          bool shifted = false;
          for (std::size_t i = 0; i < n; ++i) {
            Polynomial nf = reduce(Polynomial::variable(L.obj.ring, i), pgb);
            if (!nf.is_constant())
              throw Error(ErrorKind::CenterNotRealizable,
                          "locus point has no rational coordinates");
            if (!nf.is_zero()) pt[i] = nf.coeff(Mono(n, 0));
            if (pt[i] != 0) shifted = true;
          }
          for (const auto& [H, v] : L.obj.divisor_coord)
            if (pt[v] != 0)
              throw Error(ErrorKind::CenterNotRealizable,
                          "translating the point would move an exceptional "
                          "coordinate");
          if (shifted) {
            std::vector<Polynomial> images;
            images.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
              Polynomial xi = Polynomial::variable(L.obj.ring, i);
              images.push_back(
                  pt[i] == 0
                      ? xi
                      : xi + Polynomial::constant(L.obj.ring, pt[i]));
            }
            apply_level_realization(tree, c->id, level_ptrs(*c), images);
          }
          ChartAction act;
          act.chart = c->id;
          act.op = ChartAction::Op::Blowup;
          act.coords.insert(c->flags.begin(), c->flags.end());
          for (std::size_t vv : L.obj.to_chart) act.coords.insert(vv);
          dec.actions.push_back(std::move(act));
        }
        break;
      }
    }

    // Rule: descend one level along the maximal contact of the companion.
    std::optional<std::uint32_t> bpp;  // companion threshold, uniform
    for (ChartCtx* c : live) {
      if (c->consumed && wmax < 1)
        throw Error(ErrorKind::MaximalContactNotRealizable,
                    "fractional order below a consumed divisor trace");
      LevelCtx& L = c->levels.back();
      Companion comp = companion(L.obj, L.w, L.t);
      assert(!bpp || *bpp == comp.b);
      bpp = comp.b;
      ContactResult ct = maximal_contact(L.obj, comp);
      if (ct.realization) {
        apply_level_realization(tree, c->id, level_ptrs(*c), *ct.realization);
        for (Polynomial& g : comp.ideal.gens)
          g = g.substitute(L.obj.ring, *ct.realization);
      }
      if (ct.consumed_divisor) c->consumed = true;
      CoefficientIdeal ci = coefficient_ideal(L.obj, comp, ct.var);
      LevelObject next;
      next.ring = ci.ideal.ring;
      next.full = ci.ideal;
      next.b = ci.b;
      next.to_chart.resize(next.ring->arity());
      for (const auto& [lo, sub] : ci.var_map)
        next.to_chart[sub] = L.obj.to_chart[lo];
      for (const auto& [H, v] : L.obj.divisor_coord) {
        if (ct.consumed_id && H == *ct.consumed_id) continue;
        assert(v != ct.var);
        next.divisor_coord[H] = ci.var_map.at(v);
      }
      refactor_level(next);
      c->flags.push_back(L.obj.to_chart[ct.var]);
      c->levels.push_back(LevelCtx{std::move(next), {}, {}});
    }
    --level;
  }

  assert(!dec.actions.empty());
  dec.info.f = std::move(fv);
  dec.info.center_chart = dec.actions.front().chart;
  const ChartAction& canon = dec.actions.front();
  if (canon.op == ChartAction::Op::Blowup)
    dec.info.center_coords.assign(canon.coords.begin(), canon.coords.end());
  else
    dec.info.center_coords = {canon.coord};
  result.decision = std::move(dec);
  return result;
}

void apply_decision(ChartTree& tree, const StepDecision& dec) {
  const int step_index = static_cast<int>(tree.steps.size()) + 1;
  StepRecord rec;
  rec.index = step_index;
  rec.level = dec.info.level;
  rec.t_value = fvalue_to_string(dec.info.f);
  rec.center_chart = dec.info.center_chart;
  {
    const RingPtr& ring = tree.chart(dec.info.center_chart).ring;
    for (std::size_t v : dec.info.center_coords)
      rec.center_coords.push_back(ring->vars[v]);
  }
  rec.bookkeeping = dec.info.bookkeeping;
  for (const ChartAction& act : dec.actions) {
    switch (act.op) {
      case ChartAction::Op::Blowup:
        blowup(tree, act.chart, act.coords, step_index);
        break;
      case ChartAction::Op::Unload:
        unload_divisor(tree, act.chart, act.divisor_id);
        break;
      case ChartAction::Op::Register:
        register_codim1_divisor(tree, act.chart, act.coord, step_index);
        break;
    }
  }
  tree.steps.push_back(std::move(rec));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public drivers.

namespace {

// Plain runs: every leaf chart whose controlled ideal still has points of
// order >= b participates.
std::optional<LevelObject> active_top(const Chart& chart) {
  LevelObject obj = top_level_object(chart);
  if (is_unit_ideal(singular_locus_ideal(obj.full, obj.b)))
    return std::nullopt;
  return obj;
}

}  // namespace

std::optional<ResolutionStepInfo> plan_resolution_step(ChartTree& tree,
                                                       HistoryMap& histories,
                                                       int state) {
  detail::PlanResult r = detail::plan_descent(
      tree, histories, state, static_cast<int>(tree.root_ring->arity()), {},
      active_top, nullptr);
  if (!r.decision) return std::nullopt;
  return r.decision->info;
}

bool resolution_step(ChartTree& tree, HistoryMap& histories, int state) {
  detail::PlanResult r = detail::plan_descent(
      tree, histories, state, static_cast<int>(tree.root_ring->arity()), {},
      active_top, nullptr);
  if (!r.decision) return false;
  detail::apply_decision(tree, *r.decision);
  return true;
}

ResolutionRun resolve_basic_object(RingPtr ring, const Ideal& ideal,
                                   std::uint32_t b,
                                   const std::vector<std::size_t>& seeded,
                                   const ResolveOptions& opts) {
  ResolutionRun run;
  run.tree = init_ambient(std::move(ring), ideal, b, seeded);
  const int top = static_cast<int>(run.tree.root_ring->arity());
  std::optional<FValue> prev;
  for (;;) {
    const int state = static_cast<int>(run.tree.steps.size());
    detail::PlanResult r = detail::plan_descent(run.tree, run.histories, state,
                                                top, {}, active_top, nullptr);
    if (!r.decision) break;
    if (static_cast<std::uint32_t>(state) >= opts.max_steps) {
      run.budget_exceeded = true;
      throw Error(ErrorKind::BudgetExceeded,
                  "resolution exceeded " + std::to_string(opts.max_steps) +
                      " steps");
    }
    // The resolution function must drop strictly at every step.
    assert(!prev || fvalue_cmp(r.decision->info.f, *prev) < 0);
    prev = r.decision->info.f;
    detail::apply_decision(run.tree, *r.decision);
    run.steps.push_back(std::move(r.decision->info));
  }
  return run;
}

ResolutionRun principalize(RingPtr ring, const Ideal& ideal,
                           const std::vector<std::size_t>& seeded,
                           const ResolveOptions& opts) {
  Ideal in = ideal;
  in.prune_zeros();
  if (in.gens.empty())
    throw Error(ErrorKind::InvalidInput, "cannot principalize the zero ideal");
  if (is_unit_ideal(in))
    throw Error(ErrorKind::InvalidInput, "cannot principalize the unit ideal");
  ResolutionRun run =
      resolve_basic_object(std::move(ring), in, 1, seeded, opts);
#ifndef NDEBUG
  for (int id : run.tree.leaf_ids()) {
    const Chart& chart = run.tree.chart(id);
    assert(is_unit_ideal(chart.weak));
    for (const auto& [H, a] : chart.a_exp) assert(a == 0);
  }
#endif
  // Isomorphism off V(I): every center must map into the input locus.
  for (const ResolutionStepInfo& info : run.steps) {
    Ideal img = center_image_in_root(run.tree, info.center_chart,
                                     info.center_coords);
    if (!radical_contains(img, in))
      throw Error(ErrorKind::RelativePropertyViolated,
                  "blowup center maps outside the input locus");
  }
  return run;
}

void exceptional_unloading(ChartTree& tree,
                           std::vector<ResolutionStepInfo>& log) {
  for (;;) {
    int best = -1;
    for (int id : tree.leaf_ids()) {
      const Chart& chart = tree.chart(id);
      for (const auto& [H, a] : chart.a_exp)
        if (a >= chart.b && (best < 0 || H < best)) best = H;
    }
    if (best < 0) break;
    detail::StepDecision dec;
    dec.info.bookkeeping = true;
    dec.info.level = static_cast<int>(tree.root_ring->arity());
    bool first = true;
    for (int id : tree.leaf_ids()) {
      const Chart& chart = tree.chart(id);
      auto it = chart.a_exp.find(best);
      if (it == chart.a_exp.end() || it->second < chart.b) continue;
      detail::ChartAction act;
      act.chart = id;
      act.op = detail::ChartAction::Op::Unload;
      act.divisor_id = best;
      act.coord = chart.divisors.at(best).coord;
      if (first) {
        first = false;
        GammaVal g;
        g.g1 = 1;
        g.g2 = Rational(it->second) / Rational(chart.b);
        g.g3 = {best};
        dec.info.f.slots = {TValue(g)};
        dec.info.center_chart = id;
        dec.info.center_coords = {act.coord};
      }
      dec.actions.push_back(std::move(act));
    }
    detail::apply_decision(tree, dec);
    log.push_back(dec.info);
  }
#ifndef NDEBUG
  for (int id : tree.leaf_ids())
    for (const auto& [H, a] : tree.chart(id).a_exp)
      assert(a < tree.chart(id).b);
#endif
}

Ideal center_image_in_root(const ChartTree& tree, int chart_id,
                           const std::vector<std::size_t>& center_coords) {
  const Chart& chart = tree.chart(chart_id);
  const std::size_t cn = chart.ring->arity();
  const std::size_t rn = tree.root_ring->arity();
  std::vector<Polynomial> imgs = root_images(tree, chart_id);
  assert(imgs.size() == rn);

  // Graph ring: chart variables in front (eliminated), shadow copies of the
  // root variables behind.
  std::vector<std::string> names = chart.ring->vars;
  for (std::size_t i = 0; i < rn; ++i)
    names.push_back("@r" + std::to_string(i));
  RingPtr big = make_ring(std::move(names));

  std::vector<Polynomial> chart_into_big;
  chart_into_big.reserve(cn);
  for (std::size_t i = 0; i < cn; ++i)
    chart_into_big.push_back(Polynomial::variable(big, i));

  Ideal graph(big, {});
  for (std::size_t v : center_coords)
    graph.gens.push_back(Polynomial::variable(big, v));
  for (std::size_t i = 0; i < rn; ++i)
    graph.gens.push_back(Polynomial::variable(big, cn + i) -
                         imgs[i].substitute(big, chart_into_big));

  std::vector<bool> front(big->arity(), false);
  for (std::size_t i = 0; i < cn; ++i) front[i] = true;
  Ideal elim = eliminate(graph, front);

  std::vector<Polynomial> back(big->arity(), Polynomial::zero(tree.root_ring));
  for (std::size_t i = 0; i < rn; ++i)
    back[cn + i] = Polynomial::variable(tree.root_ring, i);
  Ideal out(tree.root_ring, {});
  for (const Polynomial& g : elim.gens)
    out.gens.push_back(g.substitute(tree.root_ring, back));
  return out;
}

}  // namespace desing
