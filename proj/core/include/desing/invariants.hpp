// invariants.hpp -- the resolution invariant tower.
//
// At a state of the run, every chart is analyzed level by level, top level
// d = ambient dimension downward.  At level j the object carries a marked
// factorization (a-exponents over the surviving divisor traces, weak ideal,
// threshold b).  The slot value at the level is
//
//   * GammaVal (monomial case, weak = (1)): the combinatorial game on the
//     a-exponents.  Gamma_1 = least |S| with sum_{H in S} a_H >= b;
//     Gamma_2 = max of (sum a)/b over achieving S of that size; Gamma_3 =
//     the lexicographically largest ascending divisor-id tuple among those.
//     Ordered by (-Gamma_1, Gamma_2, Gamma_3) lexicographically.
//   * Pair (w, n): w = (max order of the weak ideal on Sing)/b, a rational;
//     n counts old divisors: with E^- the divisors born before the blowup
//     that caused the last strict drop of max w at this level (all divisors
//     present at level creation when no drop has happened), n_max = largest
//     s such that some s-subset of E^- still meets the max-w locus.
//   * Infinity: emitted below a level whose Max t locus has a codimension-1
//     part (the canonical center is that hypersurface; nothing outranks it).
//
// TValues are totally ordered GammaVal < Pair < Infinity; FValues (tuples of
// slots, top level first) compare lexicographically, a shorter tuple whose
// shared slots tie ranking higher (an earlier stop is a terminal case).
//
// The descent from level j to j-1 goes through the companion object (which
// restores Sing = Max t, checked here by mutual radical containment every
// time), a maximal-contact hypersurface z realized as a coordinate, and the
// coefficient ideal of the companion on V(z) with threshold b''!.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "desing/chart.hpp"
#include "desing/ideal_ops.hpp"

namespace desing {

struct GammaVal {
  std::uint32_t g1 = 0;
  Rational g2;
  std::vector<int> g3;  // ascending divisor ids
};

struct PairVal {
  Rational w;
  int n = 0;
};

struct InfinityVal {};

using TValue = std::variant<GammaVal, PairVal, InfinityVal>;

// Three-way compare; GammaVal < PairVal < InfinityVal across kinds.
int tvalue_cmp(const TValue& a, const TValue& b);
std::string tvalue_to_string(const TValue& v);

struct FValue {
  std::vector<TValue> slots;
};

int fvalue_cmp(const FValue& a, const FValue& b);
std::string fvalue_to_string(const FValue& f);

// ---------------------------------------------------------------------------
// Level objects (one per chart per tower level during a step computation).

struct LevelObject {
  RingPtr ring;                        // chart subring at this level
  std::vector<std::size_t> to_chart;   // level var index -> chart var index
  Ideal full;                          // controlled ideal at this level
  std::uint32_t b = 1;
  std::map<int, std::uint32_t> a;      // divisor id -> exponent (traces only)
  std::map<int, std::size_t> divisor_coord;  // divisor id -> level var index
  Ideal weak;                          // full with exceptional part removed

  bool monomial() const { return is_unit_ideal(weak) || weak.gens.empty(); }
};

// Build the top-level object of a chart from its marked factorization.
LevelObject top_level_object(const Chart& chart);

// Refresh (a, weak) from `full` and the divisor traces.
void refactor_level(LevelObject& obj);

// ---------------------------------------------------------------------------
// Per-level histories (driver-owned, global across charts).

struct LevelHistory {
  int base_state = 0;            // state index at creation/reset
  std::vector<Rational> max_w;   // one entry per state since base
  std::vector<TValue> max_t;     // parallel to max_w

  // Birth cutoff for E^-: divisors born <= cutoff are "old".  k0 = first
  // recorded state attaining the current max w; cutoff = base_state when
  // k0 == base_state (no drop yet), else k0 - 1.
  int eminus_cutoff() const;
};

// Histories for levels d, d-1, ...: key = level index.
using HistoryMap = std::map<int, LevelHistory, std::greater<int>>;

// ---------------------------------------------------------------------------
// Invariant computations at one level of one chart.

struct WOrdResult {
  Rational w;        // max order of weak on Sing(full, b), divided by b
  Ideal locus;       // ideal of the sub-locus attaining it
};

// w-ord data of a level object (weak non-unit).
WOrdResult max_w_ord(const LevelObject& obj);

// Split E into old/new against a birth cutoff.
struct ESplit {
  std::vector<int> eminus;  // divisor ids with birth <= cutoff (in the chart)
  std::vector<int> eplus;
};
ESplit e_split(const LevelObject& obj, const std::map<int, DivisorRecord>& registry,
               int cutoff);

struct MaxTResult {
  int n_max = 0;
  Ideal locus;                          // Max t locus (refined by subsets)
  std::vector<std::vector<int>> achieving_subsets;  // of E^- divisor ids
};

// n-part of t at this level: largest s with some s-subset of E^- meeting the
// max-w locus, the refined locus, and the achieving subsets.
MaxTResult max_t(const LevelObject& obj, const Ideal& w_locus,
                 const std::vector<int>& eminus);

// Codimension-1 part of the Max t locus: the squarefree part of the gcd of
// the locus generators (non-constant iff a codim-1 component exists).
// Returns nullopt when there is none.  When present the caller must check
// smoothness and coordinate realizability (R1NotRealizable otherwise).
std::optional<Polynomial> r1_part(const Ideal& locus);

// Companion object restoring Sing(J'', b'') = Max t:
//   max t = (1,0)          ->  (weak, 1)
//   w >= 1                 ->  (weak, b*w)
//   0 < w < 1              ->  (weak^{b-m} + M^m, m*(b-m)),  m = b*w
// plus, when n_max > 0, the augmentation generator set K^{b''} with
// K = prod over achieving subsets S of the coordinate ideal (x_H : H in S).
// The Sing = Max t contract is asserted (mutual radical containment).
struct Companion {
  Ideal ideal;
  std::uint32_t b = 1;
};
Companion companion(const LevelObject& obj, const WOrdResult& w,
                    const MaxTResult& t);

// Maximal contact: an element g of Delta^{b''-1}(J'') of order exactly 1 at
// every point of Sing(J'', b''), realized as a coordinate.
//   * g literally (a scalar multiple of) a coordinate: identity realization;
//     ALLOWED for an exceptional coordinate, which is then consumed (no
//     trace on the deeper level).
//   * g = c x_i + h with h free of x_i, x_i neither exceptional nor a flag:
//     realized by the substitution x_i |-> (x_i - h)/c applied to the level.
// Otherwise MaximalContactNotRealizable.
struct ContactResult {
  std::size_t var = 0;               // level var index of z
  bool consumed_divisor = false;     // z was an exceptional coordinate
  std::optional<int> consumed_id;
  // Realizing substitution on the level ring (empty images = identity).
  std::optional<std::vector<Polynomial>> realization;
  Polynomial witness;                // the element g before realization
};
ContactResult maximal_contact(const LevelObject& obj, const Companion& comp);

// Coefficient ideal of the companion on V(z): generators
// a_i^{b''!/(b''-i)} for 0 <= i < b'' over all companion generators f with
// f = sum_i a_i z^i, plus threshold b''!.  For b'' = 1 this is the plain
// restriction.  Returned in the subring without z.
struct CoefficientIdeal {
  Ideal ideal;
  std::uint32_t b = 1;
  std::map<std::size_t, std::size_t> var_map;  // level var -> subring var
};
CoefficientIdeal coefficient_ideal(const LevelObject& obj, const Companion& comp,
                                   std::size_t z_var);

// Monomial-case value and center: GammaVal plus the divisor ids of Gamma_3
// (center = intersection of those divisors, within the level flag).
struct GammaResult {
  GammaVal value;
  std::vector<int> center_divisors;
};
GammaResult gamma_invariant(const LevelObject& obj);

std::string gamma_to_string(const GammaVal& g);

}  // namespace desing
