// resolver.hpp -- resolution drivers, verification, and reports.
//
// resolve_basic_object iterates canonical resolution steps on a marked chart
// tree until every leaf chart has empty singular locus (or the budget runs
// out).  Each step computes, per leaf chart, the invariant tower of
// invariants.hpp, aggregates the global maximum f-value in chart-id order,
// and transforms ALL charts achieving it along their local centers (the
// local centers glue to one global center; other charts provably miss it).
//
// principalize wraps the driver for threshold-1 inputs with optional seeded
// divisors and audits that the morphism is an isomorphism off V(I): every
// center image, computed by eliminating chart variables from the
// substitution-chain graph, must lie inside V(I).
//
// strong_desingularize runs the embedded pipeline: admissible-locus check,
// greedy initial relative codimension, rounds of advance_relative_codim
// (Step A: drive the flag-restricted level object down to max t = (1,0);
// Step B: unload the exceptional exponents at that level), component
// splitting, principalization of the residual, and full verification of the
// output factorization I(X) O = L * I(X_r).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "desing/invariants.hpp"

namespace desing {

// One global resolution step decision, as logged.
struct ResolutionStepInfo {
  FValue f;                 // global maximum f-value at the step
  int level = 0;            // deepest level reached by the decision
  int center_chart = 0;     // canonical achieving chart (smallest id)
  std::vector<std::size_t> center_coords;  // center coordinates there
  bool bookkeeping = false;
};

struct ResolutionRun {
  ChartTree tree;
  std::vector<ResolutionStepInfo> steps;
  HistoryMap histories;
  bool budget_exceeded = false;
};

struct ResolveOptions {
  std::uint32_t max_steps = 200;
};

// Compute ONE canonical step decision on the current tree (no transform).
// Returns nullopt when every leaf chart already has empty singular locus.
std::optional<ResolutionStepInfo> plan_resolution_step(ChartTree& tree,
                                                       HistoryMap& histories,
                                                       int state);

// Plan + apply one step.  Returns false when nothing was left to do.
bool resolution_step(ChartTree& tree, HistoryMap& histories, int state);

// Iterate until done; throws BudgetExceeded past max_steps.
ResolutionRun resolve_basic_object(RingPtr ring, const Ideal& ideal,
                                   std::uint32_t b,
                                   const std::vector<std::size_t>& seeded = {},
                                   const ResolveOptions& opts = {});

// Threshold-1 principalization of a nonzero proper ideal.  Postconditions
// checked: weak = (1) in every chart; all center images inside V(I).
ResolutionRun principalize(RingPtr ring, const Ideal& ideal,
                           const std::vector<std::size_t>& seeded = {},
                           const ResolveOptions& opts = {});

// Unload a-exponents by codimension-1 bookkeeping steps (smallest divisor id
// with a >= b first) until all a-exponents vanish.  Precondition: max t at
// the working level is (1,0).
void exceptional_unloading(ChartTree& tree, std::vector<ResolutionStepInfo>& log);

// ---------------------------------------------------------------------------
// Strong embedded desingularization.

// Certificate that the transformed ideal contains a regular flag of length
// `level` per chart: entries are coordinates where realizable, otherwise
// polynomial witnesses (final round only).  Machine checks: membership in
// weak (reduce = 0), full-rank Jacobian of the tuple on V(weak), and no
// overlap between coordinate entries and exceptional coordinates.
struct RelCodimCertificate {
  int level = 0;
  // chart id -> flag entries (index into chart ring, or polynomial witness).
  std::map<int, std::vector<std::variant<std::size_t, Polynomial>>> flags;
};

struct VerificationReport {
  bool factorization_equal = false;   // I(X) O = prod x^c * I(X_r), all charts
  bool strict_transform_smooth = false;
  bool normal_crossings = false;      // with every subset of incident divisors
  bool not_in_divisor = false;        // I(X_r) not inside any <x_H>
  bool relative_property = false;     // center images inside the allowed locus
  std::vector<std::string> diagnostics;

  bool all_passed() const {
    return factorization_equal && strict_transform_smooth && normal_crossings &&
           not_in_divisor && relative_property;
  }
};

struct StrongOutput {
  ChartTree tree;
  std::vector<ResolutionStepInfo> steps;
  RelCodimCertificate certificate;
  // Strict-transform ideal per leaf chart (the split A1 part).
  std::map<int, Ideal> strict_transform;
  // Residual part per leaf chart (unit when no residual).
  std::map<int, Ideal> residual;
  std::uint32_t codim = 0;
  FValue constant_value;  // reported resolution function for identity runs
  bool identity = false;
};

// Locus of non-admissible points: the Jacobian-criterion obstruction of the
// pure-codimension input joined with its intersections with seeded divisors.
Ideal rsing(RingPtr ring, const Ideal& ideal,
            const std::vector<std::size_t>& seeded = {});

// One round of the relative-codimension advance at codimension e (see file
// header).  Mutates tree/log/certificate in place.
void advance_relative_codim(ChartTree& tree, std::vector<ResolutionStepInfo>& log,
                            RelCodimCertificate& cert, std::uint32_t e,
                            std::uint32_t codim, const ResolveOptions& opts);

// Split the final weak ideal into the smooth strict transform (components of
// the expected codimension through the certificate flag) and the residual.
struct SplitResult {
  Ideal a1;
  Ideal a2;  // unit when no residual
};
SplitResult split_components(const Chart& chart, const Ideal& weak,
                             const std::vector<std::variant<std::size_t, Polynomial>>& flags,
                             std::uint32_t codim);

// Full pipeline.  Throws NonPureDimensional / RelativePropertyViolated /
// BudgetExceeded / realizability errors as applicable.
StrongOutput strong_desingularize(RingPtr ring, const Ideal& ideal,
                                  const ResolveOptions& opts = {});

// The five verification checks on a strong output.
VerificationReport verify_output(const StrongOutput& out, const Ideal& input);

// Per-generator twist exponents: for a complete intersection input, each
// original generator's pullback must be divisible by the full exceptional
// monomial prod x_H^{c_H} in every chart.  Throws NotCompleteIntersection
// when #generators != codim.
struct KoszulReport {
  // chart id -> per-generator exponent vectors (divisor id -> exponent).
  std::map<int, std::vector<std::map<int, std::uint32_t>>> twists;
  bool divisible = false;  // all pullbacks divisible by the full monomial
};
KoszulReport koszul_report(const StrongOutput& out, const Ideal& input);

// Center images in the root chart: eliminate chart variables from the center
// ideal joined with the substitution-chain graph.
Ideal center_image_in_root(const ChartTree& tree, int chart_id,
                           const std::vector<std::size_t>& center_coords);

}  // namespace desing
