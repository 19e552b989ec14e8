// corpus.hpp -- shared run corpus and invariant-law checkers.
//
// A fixed set of inputs that the canonical driver resolves to completion,
// plus the law checks every run must satisfy:
//
//   * per level, the recorded max w and max t never increase;
//   * at the top level the strict drops between pair values number at most
//     b * d (the classical induction bound);
//   * the global f-values of consecutive steps strictly decrease;
//   * at state 0, every companion object built during the descent cuts
//     exactly the Max t locus (mutual radical containment);
//   * at sampled rational points off the first center, the locally evaluated
//     f-value is unchanged by the first transform (mapped through the blowup
//     into the correct child chart).
//
// Checkers collect human-readable problems instead of asserting, so both the
// doctest suites and the acceptance binary can report them.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "desing/problem.hpp"
#include "desing/resolver.hpp"
#include "pointwise.hpp"

namespace corpus {

using namespace desing;

struct RunSpec {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> gens;
  std::uint32_t b = 1;
  std::vector<std::size_t> seeded;
};

inline std::vector<RunSpec> law_corpus() {
  return {
      {"cross-2d", {"x1", "x2"}, {"x1*x2"}, 1, {}},
      {"fat-point", {"x1", "x2"}, {"x1^2", "x2^3"}, 1, {}},
      {"seeded-monomial", {"x", "y"}, {"x^2*y^3"}, 1, {0, 1}},
      {"cylinder", {"x1", "x2", "x3"}, {"x2*x3"}, 1, {}},
      {"triple-cross", {"x1", "x2", "x3"}, {"x1*x2*x3"}, 1, {}},
      {"fat-line", {"x1", "x2"}, {"x1^2*x2"}, 1, {}},
      {"equal-cubes", {"x1", "x2"}, {"x1^3", "x2^3"}, 1, {}},
      {"three-squares", {"x1", "x2", "x3"}, {"x1^2", "x2^2", "x3^2"}, 1, {}},
      {"plane-and-line", {"x1", "x2", "x3"}, {"x1*x2", "x1*x3"}, 1, {}},
      {"loose-monomial", {"x1", "x2"}, {"x1^2*x2^3"}, 1, {}},
      {"mixed-powers", {"x1", "x2"}, {"x1^3*x2^2", "x2^5"}, 1, {}},
      {"threshold-two", {"x1", "x2"}, {"x1^4", "x2^6"}, 2, {}},
      {"squares-2d", {"x1", "x2"}, {"x1^2", "x2^2"}, 1, {}},
      {"cylinder-pair", {"x1", "x2", "x3"}, {"x1^2", "x2^3"}, 1, {}},
      {"seeded-cubic", {"x", "y"}, {"x^3*y"}, 1, {0}},
  };
}

inline RingPtr spec_ring(const RunSpec& spec) { return make_ring(spec.vars); }

inline Ideal spec_ideal(const RunSpec& spec, const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (const auto& g : spec.gens) gens.push_back(parse_polynomial(ring, g));
  return Ideal(ring, std::move(gens));
}

inline ResolutionRun run_plain(const RunSpec& spec) {
  RingPtr ring = spec_ring(spec);
  return resolve_basic_object(ring, spec_ideal(spec, ring), spec.b, spec.seeded);
}

struct LawReport {
  std::vector<std::string> problems;
  int companions_checked = 0;
  int points_checked = 0;
  bool ok() const { return problems.empty(); }

  void note(const std::string& what) { problems.push_back(what); }
};

// Monotonicity of the per-level histories and the top-level drop bound.
inline void check_history_laws(const ResolutionRun& run, std::uint32_t b,
                               std::size_t arity, LawReport& report) {
  for (const auto& [level, hist] : run.histories) {
    for (std::size_t i = 0; i + 1 < hist.max_w.size(); ++i)
      if (hist.max_w[i + 1] > hist.max_w[i]) {
        std::ostringstream os;
        os << "level " << level << ": max w increased at state "
           << hist.base_state + static_cast<int>(i) + 1;
        report.note(os.str());
      }
    for (std::size_t i = 0; i + 1 < hist.max_t.size(); ++i)
      if (tvalue_cmp(hist.max_t[i + 1], hist.max_t[i]) > 0) {
        std::ostringstream os;
        os << "level " << level << ": max t increased at state "
           << hist.base_state + static_cast<int>(i) + 1;
        report.note(os.str());
      }
  }
  // Top level history spans the whole run (never reset): the max order can
  // strictly drop at most b*d times while the tower is alive (w takes values
  // in (1/b) Z below the starting order, which is at most d per level).
  if (!run.histories.empty()) {
    const auto& top = run.histories.begin()->second;
    std::uint64_t drops = 0;
    for (std::size_t i = 0; i + 1 < top.max_w.size(); ++i) {
      const auto *p0 = std::get_if<PairVal>(&top.max_t[i]),
                 *p1 = std::get_if<PairVal>(&top.max_t[i + 1]);
      if (p0 && p1 && top.max_w[i + 1] < top.max_w[i]) ++drops;
    }
    if (drops > static_cast<std::uint64_t>(b) * arity) {
      std::ostringstream os;
      os << "top level: " << drops << " strict order drops exceed b*d = "
         << b * arity;
      report.note(os.str());
    }
  }
}

// Strict decrease of the global f-value from step to step.
inline void check_fvalue_descent(const ResolutionRun& run, LawReport& report) {
  for (std::size_t i = 0; i + 1 < run.steps.size(); ++i)
    if (fvalue_cmp(run.steps[i + 1].f, run.steps[i].f) >= 0) {
      std::ostringstream os;
      os << "step " << i + 1 << ": f-value " << fvalue_to_string(run.steps[i + 1].f)
         << " does not decrease from " << fvalue_to_string(run.steps[i].f);
      report.note(os.str());
    }
}

// Walk the state-0 tower of a spec and re-check, at every descent, that the
// companion object cuts exactly the Max t locus.
inline void check_state0_companions(const RunSpec& spec, LawReport& report) {
  RingPtr ring = spec_ring(spec);
  Ideal input = spec_ideal(spec, ring);
  ChartTree tree = init_ambient(ring, input, spec.b, spec.seeded);
  const Chart& root = tree.chart(0);
  LevelObject obj = top_level_object(root);
  for (std::size_t level = ring->arity(); level >= 1; --level) {
    if (obj.monomial()) break;
    Ideal sing = singular_locus_ideal(obj.full, obj.b);
    if (is_unit_ideal(sing)) break;
    WOrdResult w = max_w_ord(obj);
    if (w.w == 0) break;
    ESplit es = e_split(obj, root.divisors, 0);
    MaxTResult t = max_t(obj, w.locus, es.eminus);
    Companion comp = companion(obj, w, t);
    ++report.companions_checked;
    if (!same_radical(singular_locus_ideal(comp.ideal, comp.b), t.locus)) {
      report.note(spec.name + ": companion locus differs from Max t at level " +
                  std::to_string(level));
      break;
    }
    if (r1_part(t.locus).has_value()) break;          // center found here
    if (w.w > 1 && dimension(t.locus) <= 0) break;    // isolated centers
    if (level == 1) break;
    ContactResult ct = maximal_contact(obj, comp);
    Companion realized = comp;
    if (ct.realization) {
      Ideal moved(obj.ring, {});
      for (const auto& g : comp.ideal.gens)
        moved.gens.push_back(g.substitute(obj.ring, *ct.realization));
      realized.ideal = std::move(moved);
      Ideal full2(obj.ring, {});
      for (const auto& g : obj.full.gens)
        full2.gens.push_back(g.substitute(obj.ring, *ct.realization));
      obj.full = std::move(full2);
      refactor_level(obj);
    }
    CoefficientIdeal ci = coefficient_ideal(obj, realized, ct.var);
    LevelObject next;
    next.ring = ci.ideal.ring;
    next.to_chart.assign(ci.ideal.ring->arity(), 0);
    next.full = ci.ideal;
    next.b = ci.b;
    for (const auto& [id, coord] : obj.divisor_coord) {
      if (ct.consumed_id && id == *ct.consumed_id) continue;
      next.divisor_coord[id] = ci.var_map.at(coord);
    }
    refactor_level(next);
    obj = std::move(next);
  }
}

// Rational sample points on the input locus, off the first center, for the
// stability check.  Empty for specs whose controlled locus is a single point.
inline std::vector<std::vector<Rational>> stability_points(
    const std::string& name) {
  auto q = [](long n, long d) -> Rational { return Rational(n) / Rational(d); };
  if (name == "cross-2d")
    return {{Rational(0), Rational(1)},
            {Rational(0), Rational(-2)},
            {Rational(3), Rational(0)},
            {Rational(0), q(1, 2)},
            {Rational(-1), Rational(0)}};
  if (name == "seeded-monomial")
    return {{Rational(0), Rational(1)},
            {Rational(0), Rational(-1)},
            {Rational(0), q(2, 3)},
            {Rational(0), Rational(5)},
            {Rational(0), q(-1, 3)}};
  if (name == "cylinder")
    return {{Rational(1), Rational(0), Rational(2)},
            {Rational(-2), Rational(1), Rational(0)},
            {Rational(0), Rational(0), Rational(1)},
            {Rational(5), q(-1, 2), Rational(0)},
            {q(1, 3), Rational(0), Rational(1)}};
  return {};
}

// Points on the nodal space curve x1 = 0, x2*x3 + x2^3 + x3^3 = 0 through the
// rational parametrization by lines through the node.
inline std::vector<std::vector<Rational>> curve_points(
    const std::vector<Rational>& slopes) {
  std::vector<std::vector<Rational>> pts;
  for (const Rational& s : slopes) {
    Rational den = Rational(1) + s * s * s;
    if (den == 0) continue;
    Rational x2 = -s / den, x3 = -s * s / den;
    pts.push_back({Rational(0), x2, x3});
  }
  return pts;
}

// Evaluate f locally before and after the first canonical step and insist the
// value is unchanged (the point is off the center).
inline void check_offcenter_stability(const RunSpec& spec,
                                      const std::vector<std::vector<Rational>>& points,
                                      LawReport& report) {
  if (points.empty()) return;
  RingPtr ring = spec_ring(spec);
  Ideal input = spec_ideal(spec, ring);

  ChartTree tree = init_ambient(ring, input, spec.b, spec.seeded);
  HistoryMap histories;
  std::set<int> ids_before;
  for (const auto& [id, rec] : tree.chart(0).divisors) {
    (void)rec;
    ids_before.insert(id);
  }
  std::vector<FValue> before;
  for (const auto& p : points)
    before.push_back(pointwise::evaluate(pointwise::localize(tree.chart(0), p,
                                                             ids_before)));

  bool stepped = resolution_step(tree, histories, 0);
  if (!stepped) {
    report.note(spec.name + ": no first step to check stability across");
    return;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      int chart_id = 0;
      std::vector<Rational> image = points[i];
      if (tree.chart(0).center.has_value())
        std::tie(chart_id, image) =
            pointwise::map_through_blowup(tree, 0, points[i]);
      const Chart& chart = tree.chart(chart_id);
      std::set<int> ids_after;
      for (const auto& [id, rec] : chart.divisors) {
        (void)rec;
        ids_after.insert(id);
      }
      FValue after = pointwise::evaluate(pointwise::localize(chart, image, ids_after));
      ++report.points_checked;
      if (fvalue_cmp(before[i], after) != 0) {
        std::ostringstream os;
        os << spec.name << ": point " << i << " changed value "
           << fvalue_to_string(before[i]) << " -> " << fvalue_to_string(after);
        report.note(os.str());
      }
    } catch (const std::exception& e) {
      report.note(spec.name + ": point " + std::to_string(i) + ": " + e.what());
    }
  }
}

}  // namespace corpus
