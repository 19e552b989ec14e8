// strong.cpp -- embedded desingularization of pure-codimension subschemes.
//
// The pipeline tracks, per chart, a certificate that the weak transform
// contains a regular coordinate flag of growing length e: the subscheme,
// restricted to that flag, is treated as a threshold-1 object of the ambient
// dimension d - e.  One round per codimension: Step A drives the restricted
// object down to max t = (1,0) by canonical steps, Step B removes the
// leftover exceptional multiplicities at that level, and the certificate is
// extended by the next maximal contact.  After the last round the weak
// transform splits into the smooth strict transform (components of the
// expected codimension through the flag) and a residual part supported away
// from it; the residual is principalized by further canonical steps whose
// centers are certified disjoint from the strict transform.
//
// Every center of every phase is audited against the non-admissible locus of
// the input: the resolved ambient tree must be an isomorphism off it.

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
#include "desing/errors.hpp"
#include "desing/groebner.hpp"
#include "desing/ideal_ops.hpp"
#include "desing/primes.hpp"
#include "desing/resolver.hpp"

namespace desing {
namespace {

using CertEntry = std::variant<std::size_t, Polynomial>;

Polynomial entry_poly(const RingPtr& ring, const CertEntry& e) {
  if (std::holds_alternative<std::size_t>(e))
    return Polynomial::variable(ring, std::get<std::size_t>(e));
  return std::get<Polynomial>(e);
}

// Determinant of the square submatrix jac[rows][cols], by Laplace expansion
// (the tuples involved are at most ambient-arity long).
Polynomial minor_det(const std::vector<std::vector<Polynomial>>& jac,
                     const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols,
                     const RingPtr& ring) {
  assert(rows.size() == cols.size());
  if (rows.empty()) return Polynomial::constant(ring, 1);
  Polynomial acc = Polynomial::zero(ring);
  Rational sign(1);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Polynomial& e = jac[rows.front()][cols[j]];
    if (!e.is_zero()) {
      std::vector<std::size_t> sub_cols = cols;
      sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(j));
      acc = acc + e * minor_det(jac, sub_rows, sub_cols, ring) * sign;
    }
    sign = -sign;
  }
  return acc;
}

// True when the Jacobian of `polys` has full rank at every point of V(on):
// the rank-drop locus (all maximal minors) must miss V(on).
bool full_rank_on(const Ideal& on, const std::vector<Polynomial>& polys) {
  const RingPtr& ring = on.ring;
  const std::size_t k = polys.size();
  const std::size_t n = ring->arity();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<std::vector<Polynomial>> jac;
  jac.reserve(k);
  for (const Polynomial& p : polys) {
    std::vector<Polynomial> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) row.push_back(p.differentiate(j));
    jac.push_back(std::move(row));
  }
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  Ideal test = on;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> subsets = [&](std::size_t start) {
    if (pick.size() == k) {
      test.gens.push_back(minor_det(jac, rows, pick, ring));
      return;
    }
    for (std::size_t j = start; j + (k - pick.size()) <= n; ++j) {
      pick.push_back(j);
      subsets(j + 1);
      pick.pop_back();
    }
  };
  subsets(0);
  return is_unit_ideal(test);
}

// Machine checks on one chart's certificate entries: membership in the weak
// transform, full rank of the tuple on its zero set, and no coordinate entry
// sitting on an exceptional divisor.  Vacuous for resolved charts.
void check_certificate_chart(const Chart& chart,
                             const std::vector<CertEntry>& entries) {
  if (entries.empty()) return;
  if (chart.weak.gens.empty() || is_unit_ideal(chart.weak)) return;
  GroebnerBasis wgb = groebner(chart.weak);
  std::set<std::size_t> exc = chart.exceptional_coords();
  std::vector<Polynomial> polys;
  polys.reserve(entries.size());
  for (const CertEntry& e : entries) {
    if (std::holds_alternative<std::size_t>(e)) {
      std::size_t v = std::get<std::size_t>(e);
      if (exc.count(v))
        throw Error(ErrorKind::RelativePropertyViolated,
                    "certificate flag coordinate became exceptional");
      polys.push_back(Polynomial::variable(chart.ring, v));
    } else {
      polys.push_back(std::get<Polynomial>(e));
    }
    if (!reduce(polys.back(), wgb).is_zero())
      throw Error(ErrorKind::RelativePropertyViolated,
                  "certificate entry left the weak transform");
  }
  if (!full_rank_on(chart.weak, polys))
    throw Error(ErrorKind::RelativePropertyViolated,
                "certificate tuple drops rank on the weak transform");
}

// New charts inherit the parent's entries verbatim (coordinate indices are
// stable across blowups); every leaf is then re-checked.
void inherit_and_check(ChartTree& tree, RelCodimCertificate& cert) {
  for (const auto& [id, chart] : tree.charts) {
    if (cert.flags.count(id)) continue;
    assert(chart.parent);
    auto pit = cert.flags.find(chart.parent->first);
    assert(pit != cert.flags.end());
    cert.flags[id] = pit->second;
  }
  for (int id : tree.leaf_ids())
    check_certificate_chart(tree.chart(id), cert.flags.at(id));
}

// Coordinate indices of the entries; rounds below the final one only ever
// hold coordinates.
std::set<std::size_t> coord_flags(const std::vector<CertEntry>& entries) {
  std::set<std::size_t> s;
  for (const auto& e : entries) {
    assert(std::holds_alternative<std::size_t>(e));
    s.insert(std::get<std::size_t>(e));
  }
  return s;
}

// Top level object of the flag-restricted weak transform (rounds e >= 1):
// substitute zero for the flag coordinates and treat the result as a
// threshold-1 object of the smaller ambient space.  nullopt when vacuous.
std::optional<LevelObject> restricted_top(const Chart& chart,
                                          const std::vector<CertEntry>& entries) {
  if (chart.weak.gens.empty() || is_unit_ideal(chart.weak)) return std::nullopt;
  std::set<std::size_t> flag = coord_flags(entries);
  std::map<std::size_t, std::size_t> keep;
  Ideal res = restrict_to_flag(chart, chart.weak, flag, &keep);
  res.prune_zeros();
  if (res.gens.empty())
    throw Error(ErrorKind::RelativePropertyViolated,
                "weak transform vanishes along the certificate flag");
  if (is_unit_ideal(res)) return std::nullopt;
  LevelObject obj;
  obj.ring = res.ring;
  obj.full = std::move(res);
  obj.b = 1;
  obj.to_chart.resize(obj.ring->arity());
  for (const auto& [chart_v, sub_v] : keep) obj.to_chart[sub_v] = chart_v;
  for (const auto& [H, rec] : chart.divisors) {
    auto it = keep.find(rec.coord);
    assert(it != keep.end());  // flag coordinates never carry divisors
    obj.divisor_coord[H] = it->second;
  }
  refactor_level(obj);
  return obj;
}

// Top level object of a residual part during its principalization.
std::optional<LevelObject> residual_top(const Chart& chart, const Ideal& a2) {
  if (is_unit_ideal(a2)) return std::nullopt;
  LevelObject obj;
  obj.ring = chart.ring;
  obj.full = a2;
  obj.b = 1;
  obj.to_chart.resize(chart.ring->arity());
  for (std::size_t i = 0; i < chart.ring->arity(); ++i) obj.to_chart[i] = i;
  for (const auto& [H, rec] : chart.divisors) obj.divisor_coord[H] = rec.coord;
  refactor_level(obj);
  return obj;
}

// Greedy initial flag on the root chart: coordinates already inside the
// ideal, helped by one tame normalization pass per round (a basis element
// c x_v + h with constant c and h free of x_v straightens to x_v).
std::uint32_t greedy_initial_flags(ChartTree& tree, RelCodimCertificate& cert,
                                   std::uint32_t codim) {
  std::set<std::size_t> taken;
  bool progress = true;
  while (progress && taken.size() < codim) {
    progress = false;
    Chart& chart = tree.chart(0);
    GroebnerBasis gb = groebner(chart.weak);
    for (std::size_t v = 0;
         v < chart.ring->arity() && taken.size() < codim; ++v) {
      if (taken.count(v)) continue;
      if (reduce(Polynomial::variable(chart.ring, v), gb).is_zero()) {
        taken.insert(v);
        progress = true;
      }
    }
    if (progress) continue;
    std::set<std::size_t> exc = chart.exceptional_coords();
    for (const Polynomial& g : gb.elements) {
      for (std::size_t v = 0; v < chart.ring->arity(); ++v) {
        if (taken.count(v) || exc.count(v)) continue;
        Polynomial dv = g.differentiate(v);
        if (!dv.is_unit_constant()) continue;
        const Rational c = dv.coeff(Mono(chart.ring->arity(), 0));
        Polynomial xv = Polynomial::variable(chart.ring, v);
        Polynomial h = g - xv * c;
        assert(h.differentiate(v).is_zero());
        LevelObject top = top_level_object(chart);
        std::vector<Polynomial> images;
        images.reserve(chart.ring->arity());
        for (std::size_t i = 0; i < chart.ring->arity(); ++i)
          images.push_back(Polynomial::variable(chart.ring, i));
        images[v] = (xv - h) * (Rational(1) / c);
        std::vector<LevelObject*> lv{&top};
        detail::apply_level_realization(tree, 0, lv, images);
        progress = true;
        break;
      }
      if (progress) break;
    }
  }
  cert.flags[0].assign(taken.begin(), taken.end());
  cert.level = static_cast<int>(taken.size());
  return static_cast<std::uint32_t>(taken.size());
}

// Certificate for an input that is admissible everywhere: prefer coordinate
// members, otherwise search generator subsets whose Jacobian keeps full rank
// on the zero set.
std::vector<CertEntry> identity_certificate(const RingPtr& ring,
                                            const Ideal& in,
                                            std::uint32_t codim) {
  GroebnerBasis gb = groebner(in);
  std::vector<CertEntry> entries;
  for (std::size_t v = 0; v < ring->arity() && entries.size() < codim; ++v)
    if (reduce(Polynomial::variable(ring, v), gb).is_zero())
      entries.push_back(v);
  if (entries.size() == codim) return entries;

  const std::vector<Polynomial>& gens = gb.elements;
  std::vector<std::size_t> pick;
  std::vector<CertEntry> found;
  std::function<bool(std::size_t)> subsets = [&](std::size_t start) {
    if (pick.size() == codim) {
      std::vector<Polynomial> tuple;
      for (std::size_t i : pick) tuple.push_back(gens[i]);
      if (!full_rank_on(in, tuple)) return false;
      found.clear();
      for (const Polynomial& p : tuple) found.emplace_back(p);
      return true;
    }
    for (std::size_t i = start; i + (codim - pick.size()) <= gens.size(); ++i) {
      pick.push_back(i);
      if (subsets(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!subsets(0))
    throw Error(ErrorKind::MaximalContactNotRealizable,
                "no regular flag among the generators");
  return found;
}

}  // namespace

// ---------------------------------------------------------------------------

Ideal rsing(RingPtr ring, const Ideal& ideal,
            const std::vector<std::size_t>& seeded) {
  Ideal in = ideal;
  in.prune_zeros();
  if (in.gens.empty() || is_unit_ideal(in))
    throw Error(ErrorKind::InvalidInput,
                "admissibility is defined for nonzero proper ideals");
  std::vector<Ideal> primes = minimal_primes(in);
  const int dim = dimension(primes.front());
  for (const Ideal& p : primes)
    if (dimension(p) != dim)
      throw Error(ErrorKind::NonPureDimensional,
                  "input components have different dimensions");
  const std::uint32_t codim =
      static_cast<std::uint32_t>(static_cast<int>(ring->arity()) - dim);
  SmoothnessReport rep = jacobian_smoothness(in, codim);
  Ideal locus = rep.smooth ? Ideal::unit(ring) : *rep.obstruction;
  for (std::size_t s : seeded)
    locus = ideal_intersect(locus,
                            ideal_plus(in, Polynomial::variable(ring, s)));
  return locus;
}

void advance_relative_codim(ChartTree& tree,
                            std::vector<ResolutionStepInfo>& log,
                            RelCodimCertificate& cert, std::uint32_t e,
                            std::uint32_t codim, const ResolveOptions& opts) {
  const int d = static_cast<int>(tree.root_ring->arity());
  const int top = d - static_cast<int>(e);
  assert(top >= 1);
  assert(cert.level == static_cast<int>(e));

  detail::TopBuilder make_top;
  if (e == 0) {
    make_top = [](const Chart& chart) -> std::optional<LevelObject> {
      LevelObject obj = top_level_object(chart);
      if (is_unit_ideal(singular_locus_ideal(obj.full, obj.b)))
        return std::nullopt;
      return obj;
    };
  } else {
    make_top = [&cert](const Chart& chart) -> std::optional<LevelObject> {
      return restricted_top(chart, cert.flags.at(chart.id));
    };
  }
  auto collect_base_flags = [&]() {
    std::map<int, std::vector<std::size_t>> bf;
    if (e == 0) return bf;
    for (int id : tree.leaf_ids()) {
      std::set<std::size_t> f = coord_flags(cert.flags.at(id));
      bf[id].assign(f.begin(), f.end());
    }
    return bf;
  };

  // Step A: canonical steps until the top slot reaches exactly (1,0).  The
  // exit is tested on the top slot alone, before any deeper descent: past
  // the exit the deeper tower is no longer meaningful for this round.
  {
    HistoryMap hist;
    const TValue stop{PairVal{Rational(1), 0}};
    std::optional<FValue> prev;
    for (;;) {
      const int state = static_cast<int>(tree.steps.size());
      detail::PlanResult r = detail::plan_descent(
          tree, hist, state, top, collect_base_flags(), make_top, &stop);
      if (r.stopped_at_top) {
        if (tvalue_cmp(*r.top_slot, stop) != 0)
          throw Error(ErrorKind::RelativePropertyViolated,
                      "restricted object undershot the (1,0) exit");
        break;
      }
      if (!r.decision)
        throw Error(ErrorKind::RelativePropertyViolated,
                    "restricted object vanished before the (1,0) exit");
      if (static_cast<std::uint32_t>(state) >= opts.max_steps)
        throw Error(ErrorKind::BudgetExceeded,
                    "resolution exceeded " + std::to_string(opts.max_steps) +
                        " steps");
      assert(!prev || fvalue_cmp(r.decision->info.f, *prev) < 0);
      prev = r.decision->info.f;
      detail::apply_decision(tree, *r.decision);
      log.push_back(r.decision->info);
      inherit_and_check(tree, cert);
    }
  }

  // Step B: remove the exceptional multiplicities at this level.  In the
  // ambient round that is plain unloading; in restricted rounds a divisor
  // whose trace still cuts the restricted locus in codimension one is blown
  // up (with the flag) wherever it does, smallest divisor id first.
  if (e == 0) {
    exceptional_unloading(tree, log);
  } else {
    for (;;) {
      std::map<int, std::vector<int>> qualifying;  // divisor id -> chart ids
      std::map<int, Rational> level_exp;
      for (int id : tree.leaf_ids()) {
        std::optional<LevelObject> obj =
            restricted_top(tree.chart(id), cert.flags.at(id));
        if (!obj) continue;
        for (const auto& [H, lv] : obj->divisor_coord) {
          Ideal cut = ideal_plus(obj->full,
                                 Polynomial::variable(obj->ring, lv));
          if (is_unit_ideal(cut)) continue;
          if (dimension(cut) != d - static_cast<int>(e) - 1) continue;
          qualifying[H].push_back(id);
          if (!level_exp.count(H)) {
            auto ait = obj->a.find(H);
            level_exp[H] =
                Rational(ait == obj->a.end() ? 0u : ait->second);
          }
        }
      }
      if (qualifying.empty()) break;
      const int best = qualifying.begin()->first;

      detail::StepDecision dec;
      dec.info.level = top;
      {
        GammaVal g;
        g.g1 = 1;
        g.g2 = level_exp.at(best);
        g.g3 = {best};
        dec.info.f.slots = {TValue(g)};
      }
      for (int id : qualifying.at(best)) {
        const Chart& chart = tree.chart(id);
        detail::ChartAction act;
        act.chart = id;
        act.op = detail::ChartAction::Op::Blowup;
        act.coords = coord_flags(cert.flags.at(id));
        act.coords.insert(chart.divisors.at(best).coord);
        dec.actions.push_back(std::move(act));
      }
      dec.info.center_chart = dec.actions.front().chart;
      dec.info.center_coords.assign(dec.actions.front().coords.begin(),
                                    dec.actions.front().coords.end());
      if (static_cast<std::uint32_t>(tree.steps.size()) >= opts.max_steps)
        throw Error(ErrorKind::BudgetExceeded,
                    "resolution exceeded " + std::to_string(opts.max_steps) +
                        " steps");
      detail::apply_decision(tree, dec);
      log.push_back(dec.info);
      inherit_and_check(tree, cert);
    }
  }

  // Certificate extension: the next maximal contact of every non-vacuous
  // leaf becomes entry e+1.  In the final round a contact that is not
  // realizable as a coordinate is stored as a polynomial witness instead (an
  // order-one companion element, lifted to the chart).
  for (int id : tree.leaf_ids()) {
    std::vector<CertEntry>& entries = cert.flags.at(id);
    {
      const Chart& chart = tree.chart(id);
      if (chart.weak.gens.empty() || is_unit_ideal(chart.weak)) continue;
    }
    std::optional<LevelObject> objOpt =
        e == 0 ? std::optional<LevelObject>(top_level_object(tree.chart(id)))
               : restricted_top(tree.chart(id), entries);
    if (!objOpt) continue;
    LevelObject obj = std::move(*objOpt);
    WOrdResult w = max_w_ord(obj);
    assert(w.w == 1);  // Step A ended at (1,0)
    MaxTResult t = max_t(obj, w.locus, {});
    assert(t.n_max == 0);
    Companion comp = companion(obj, w, t);

    std::optional<ContactResult> ct;
    try {
      ct = maximal_contact(obj, comp);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::MaximalContactNotRealizable ||
          e + 1 != codim)
        throw;
    }
    if (ct && ct->consumed_divisor) {
      if (e + 1 != codim)
        throw Error(ErrorKind::MaximalContactNotRealizable,
                    "contact at an exceptional coordinate cannot enter the "
                    "certificate");
      ct.reset();
    }
    if (ct) {
      if (ct->realization) {
        std::vector<LevelObject*> lv{&obj};
        detail::apply_level_realization(tree, id, lv, *ct->realization);
      }
      entries.emplace_back(obj.to_chart.at(ct->var));
    } else {
      // Witness: a companion generator of order exactly one at every point
      // of the companion's zero set.
      std::optional<Polynomial> witness;
      for (const Polynomial& g : comp.ideal.gens) {
        if (g.is_zero()) continue;
        Ideal drop = comp.ideal;
        for (std::size_t v = 0; v < obj.ring->arity(); ++v)
          drop.gens.push_back(g.differentiate(v));
        if (is_unit_ideal(drop)) {
          witness = g;
          break;
        }
      }
      if (!witness)
        throw Error(ErrorKind::MaximalContactNotRealizable,
                    "no order-one witness for the final flag entry");
      entries.emplace_back(
          detail::lift_to_chart(*witness, tree.chart(id).ring, obj.to_chart));
    }
  }
  cert.level = static_cast<int>(e) + 1;
  for (int id : tree.leaf_ids())
    check_certificate_chart(tree.chart(id), cert.flags.at(id));
}

SplitResult split_components(const Chart& chart, const Ideal& weak,
                             const std::vector<CertEntry>& flags,
                             std::uint32_t codim) {
  if (weak.gens.empty() || is_unit_ideal(weak))
    return SplitResult{Ideal::unit(chart.ring), Ideal::unit(chart.ring)};
  std::vector<Ideal> primes = minimal_primes(weak);
  const int want =
      static_cast<int>(chart.ring->arity()) - static_cast<int>(codim);
  std::vector<Ideal> group;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Ideal& p = primes[i];
    bool ok = dimension(p) == want;
    if (ok) ok = jacobian_smoothness(p, codim).smooth;
    for (std::size_t j = 0; j < primes.size() && ok; ++j)
      if (j != i) ok = is_unit_ideal(ideal_sum(p, primes[j]));
    for (std::size_t k = 0; k < flags.size() && ok; ++k)
      ok = radical_member(entry_poly(chart.ring, flags[k]), p);
    if (ok) group.push_back(p);
  }
  if (group.empty())
    throw Error(ErrorKind::NonPureDimensional,
                "no smooth component of the expected codimension through "
                "the certificate flag");
  Ideal a1 = group.front();
  for (std::size_t i = 1; i < group.size(); ++i)
    a1 = ideal_intersect(a1, group[i]);
  Ideal a2 = saturate(weak, a1).first;
  if (!same_radical(weak, ideal_intersect(a1, a2)))
    throw Error(ErrorKind::DecompositionIncomplete,
                "splitting lost part of the weak transform");
  if (!is_unit_ideal(ideal_sum(a1, a2)))
    throw Error(ErrorKind::DecompositionIncomplete,
                "strict transform and residual part intersect");
  return SplitResult{std::move(a1), std::move(a2)};
}

namespace {

// Principalize the residual parts: canonical steps on the per-chart residual
// objects, every center certified disjoint from the strict transform and
// inside the non-admissible locus.  Refreshes the splits as charts change
// and fills the output's strict/residual tables.
void principalize_residual(StrongOutput& out, RelCodimCertificate& cert,
                           const Ideal& rs, const ResolveOptions& opts) {
  ChartTree& tree = out.tree;
  const int d = static_cast<int>(tree.root_ring->arity());
  HistoryMap hist;
  for (;;) {
    std::map<int, SplitResult> splits;
    bool residual_left = false;
    for (int id : tree.leaf_ids()) {
      const Chart& chart = tree.chart(id);
      SplitResult sp =
          split_components(chart, chart.weak, cert.flags.at(id), out.codim);
      residual_left = residual_left || !is_unit_ideal(sp.a2);
      splits.emplace(id, std::move(sp));
    }
    if (!residual_left) {
      out.strict_transform.clear();
      out.residual.clear();
      for (auto& [id, sp] : splits) {
        out.strict_transform.emplace(id, std::move(sp.a1));
        out.residual.emplace(id, std::move(sp.a2));
      }
      return;
    }

    auto make_top = [&splits](const Chart& chart)
        -> std::optional<LevelObject> {
      auto it = splits.find(chart.id);
      if (it == splits.end()) return std::nullopt;
      return residual_top(chart, it->second.a2);
    };
    detail::PlanResult r =
        detail::plan_descent(tree, hist, static_cast<int>(tree.steps.size()),
                             d, {}, make_top, nullptr);
    if (!r.decision)
      throw Error(ErrorKind::RelativePropertyViolated,
                  "residual part has no canonical center");
    for (const detail::ChartAction& act : r.decision->actions) {
      const Chart& chart = tree.chart(act.chart);
      Ideal center(chart.ring, {});
      if (act.op == detail::ChartAction::Op::Blowup) {
        for (std::size_t v : act.coords)
          center.gens.push_back(Polynomial::variable(chart.ring, v));
      } else {
        center.gens.push_back(Polynomial::variable(chart.ring, act.coord));
      }
      if (!is_unit_ideal(ideal_sum(center, splits.at(act.chart).a1)))
        throw Error(ErrorKind::RelativePropertyViolated,
                    "residual center meets the strict transform");
    }
    if (static_cast<std::uint32_t>(tree.steps.size()) >= opts.max_steps)
      throw Error(ErrorKind::BudgetExceeded,
                  "resolution exceeded " + std::to_string(opts.max_steps) +
                      " steps");
    detail::apply_decision(tree, *r.decision);
    Ideal img = center_image_in_root(tree, r.decision->info.center_chart,
                                     r.decision->info.center_coords);
    if (!radical_contains(img, rs))
      throw Error(ErrorKind::RelativePropertyViolated,
                  "residual center maps outside the non-admissible locus");
    out.steps.push_back(std::move(r.decision->info));
    inherit_and_check(tree, cert);
  }
}

}  // namespace

StrongOutput strong_desingularize(RingPtr ring, const Ideal& ideal,
                                  const ResolveOptions& opts) {
  Ideal in = ideal;
  in.prune_zeros();
  if (in.gens.empty())
    throw Error(ErrorKind::InvalidInput, "cannot desingularize the zero ideal");
  if (is_unit_ideal(in))
    throw Error(ErrorKind::InvalidInput, "cannot desingularize the unit ideal");

  StrongOutput out;
  const int d = static_cast<int>(ring->arity());
  out.codim = static_cast<std::uint32_t>(d - dimension(in));
  Ideal rs = rsing(ring, in, {});  // also rejects non-pure inputs

  if (is_unit_ideal(rs)) {
    // Admissible everywhere: nothing to blow up, the resolution function is
    // the constant (1,0) x ... x (1,0) and the flag lives on the input.
    out.tree = init_ambient(std::move(ring), in, 1, {});
    out.identity = true;
    for (std::uint32_t i = 0; i < out.codim; ++i)
      out.constant_value.slots.emplace_back(PairVal{Rational(1), 0});
    const Chart& root = out.tree.chart(0);
    out.certificate.level = static_cast<int>(out.codim);
    out.certificate.flags[0] =
        identity_certificate(root.ring, root.weak, out.codim);
    check_certificate_chart(root, out.certificate.flags[0]);
    SplitResult sp = split_components(root, root.weak,
                                      out.certificate.flags[0], out.codim);
    out.strict_transform.emplace(0, std::move(sp.a1));
    out.residual.emplace(0, std::move(sp.a2));
    return out;
  }

  out.tree = init_ambient(std::move(ring), in, 1, {});
  RelCodimCertificate cert;
  cert.flags[0] = {};
  const std::uint32_t a0 = greedy_initial_flags(out.tree, cert, out.codim);
  for (std::uint32_t e = a0; e < out.codim; ++e) {
    const std::size_t mark = out.steps.size();
    advance_relative_codim(out.tree, out.steps, cert, e, out.codim, opts);
    // Relative property, per round: every center sits over the
    // non-admissible locus of the input.
    for (std::size_t i = mark; i < out.steps.size(); ++i) {
      Ideal img = center_image_in_root(out.tree, out.steps[i].center_chart,
                                       out.steps[i].center_coords);
      if (!radical_contains(img, rs))
        throw Error(ErrorKind::RelativePropertyViolated,
                    "center maps outside the non-admissible locus");
    }
  }
  principalize_residual(out, cert, rs, opts);
  out.certificate = std::move(cert);
  return out;
}

}  // namespace desing
