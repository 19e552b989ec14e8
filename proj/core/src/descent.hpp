// descent.hpp -- library-private staged-descent planner.
//
// The canonical resolution driver and the strong pipeline plan their steps
// the same way: build a top level object per participating leaf chart, walk
// all of them down the invariant tower in lockstep (global maximum of the
// slot at each level, charts below the maximum drop out), and stop at the
// first rule that yields a center.  The planner computes the per-chart
// actions without transforming the tree, so a caller can inspect the
// decision first; apply_decision then performs every action under one shared
// step index and appends the step record.
//
// Planning is not strictly read-only: realizing a maximal contact or
// translating a rational point may apply a coordinate automorphism to a
// chart.  Those changes are idempotent for re-planning the same state (after
// them the contact IS a coordinate and the point IS the origin), so
// plan-then-apply and plan-only callers see consistent trees.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "desing/resolver.hpp"

namespace desing::detail {

// A planned transform of one chart.
struct ChartAction {
  enum class Op { Blowup, Unload, Register };
  int chart = 0;
  Op op = Op::Blowup;
  std::set<std::size_t> coords;  // Blowup: center coordinates
  int divisor_id = -1;           // Unload: divisor to unload
  std::size_t coord = 0;         // Register: fresh hypersurface coordinate
};

struct StepDecision {
  ResolutionStepInfo info;
  std::vector<ChartAction> actions;  // ascending chart id
};

struct PlanResult {
  std::optional<StepDecision> decision;  // nullopt: no participating chart
  std::optional<TValue> top_slot;        // slot computed at the top level
  bool stopped_at_top = false;           // stop predicate fired at the top
};

// Per-chart builder of the top level object; nullopt for charts that do not
// participate (already resolved, or a vacuous restriction).
using TopBuilder = std::function<std::optional<LevelObject>(const Chart&)>;

// Plan one canonical step.
//   top_level   level number of the top slot: ambient arity for plain runs,
//               d - e for flag-restricted sub-towers
//   base_flags  chart id -> coordinates pinned to zero under every center of
//               that chart (the certificate flag of a sub-tower run)
//   stop_at     when non-null, abort as soon as the top-level slot is
//               <= *stop_at; checked before any deeper descent so levels the
//               caller will never use are not computed (their maximal
//               contacts need not even be realizable)
PlanResult plan_descent(ChartTree& tree, HistoryMap& histories, int state,
                        int top_level,
                        const std::map<int, std::vector<std::size_t>>& base_flags,
                        const TopBuilder& make_top, const TValue* stop_at);

// Transform every chart of the decision (ascending id, one shared step
// index) and append the step record.
void apply_decision(ChartTree& tree, const StepDecision& dec);

// Push a level-ring polynomial into the chart ring along to_chart.
Polynomial lift_to_chart(const Polynomial& f, const RingPtr& chart_ring,
                         const std::vector<std::size_t>& to_chart);

// Pull a chart-ring polynomial into a level subring; every chart variable
// occurring in f must be a level variable.
Polynomial chart_to_level(const Polynomial& f, const LevelObject& obj);

// Apply a realizing substitution to a chart and to a stack of level objects
// over it.  `images` are over the ring of levels.back() (one image per level
// variable); the corresponding chart automorphism fixes the chart's
// exceptional coordinates (checked).  Level objects in the stack get their
// full/weak generators rewritten in place.
void apply_level_realization(ChartTree& tree, int chart_id,
                             const std::vector<LevelObject*>& levels,
                             const std::vector<Polynomial>& images);

}  // namespace desing::detail
