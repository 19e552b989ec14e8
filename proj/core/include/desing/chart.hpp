// chart.hpp -- blowup charts, exceptional divisor registry, and marked
// factorizations.
//
// A resolution run unfolds over a tree of affine charts.  The root chart is
// the ambient space; a blowup along a coordinate subspace V(x_{s_1},...,
// x_{s_c}) with c >= 2 replaces a leaf chart by c children, one per pivot
// index j in S, with substitution x_j |-> x_j and x_i |-> x_j * x_i for the
// other center coordinates (those get primed names in the child).  The fresh
// exceptional divisor in child j is V(x_j); old divisors keep their
// coordinate index, EXCEPT an old divisor sitting exactly at the pivot
// coordinate: its strict transform misses the pivot chart entirely and the
// registry drops it there (the sibling charts cover it).
//
// Each chart carries a marked factorization with a shared weak ideal:
//
//     controlled ideal   J_i     = prod_H x_H^{a_H} * weak
//     total transform    J_0 O   = prod_H x_H^{c_H} * weak
//
// with c_H >= a_H >= 0 (strict for blowup-born divisors) and weak not
// vanishing on any divisor.  Transform law along a center with coordinate
// set S and pivot j, where nu = order of the weak ideal along the center
// (= minimal divisibility of the pulled-back weak generators by x_j):
//
//     a_new = sum_{m in S} a_m + nu - b     (ImpermissibleCenter if < 0)
//     c_new = sum_{m in S} c_m + nu
//
// and old exponents carry over unchanged.  Codimension-1 "blowups" (|S| = 1)
// change no coordinates: along an existing divisor they subtract b from its
// a-exponent (bookkeeping/unloading); along a fresh coordinate hypersurface
// they register a new divisor and re-factor.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "desing/automorphism.hpp"
#include "desing/groebner.hpp"

namespace desing {

struct DivisorRecord {
  int id = 0;            // global stable id, unique across the whole tree
  std::size_t coord = 0; // coordinate index inside the owning chart
  int birth = 0;         // step index of the creating blowup (0 for seeded)
  int origin_chart = 0;  // chart in which the divisor was first registered
};

// The center data recorded on a chart that has been blown up.
struct CenterRecord {
  std::vector<std::size_t> coords;  // center = V(those chart coordinates)
  int step = 0;                     // step index of the blowup
};

struct Chart {
  int id = 0;
  // (parent chart id, pivot coordinate index in the parent).
  std::optional<std::pair<int, std::size_t>> parent;
  RingPtr ring;
  // Images of the PARENT chart's variables in this chart's current
  // coordinates (blowup substitution composed with any later automorphisms
  // applied to this chart).  Root chart: images of its own variables.
  std::vector<Polynomial> parent_images;
  // Exceptional registry, keyed by divisor id.
  std::map<int, DivisorRecord> divisors;

  // Marked factorization (threshold b is global to the run).
  std::uint32_t b = 1;
  std::map<int, std::uint32_t> a_exp;  // controlled-transform exponents
  std::map<int, std::uint32_t> c_exp;  // total-transform exponents
  Ideal weak;

  bool leaf = true;
  std::optional<CenterRecord> center;

  // Coordinate indices currently carrying divisors.
  std::set<std::size_t> exceptional_coords() const;
  std::optional<int> divisor_at_coord(std::size_t coord) const;

  // prod_H x_H^{a_H} * weak, resp. with c-exponents.
  Ideal controlled_ideal() const;
  Ideal total_ideal() const;
};

struct StepRecord {
  int index = 0;
  int level = 0;              // tower level the decision was made at
  std::string t_value;        // printed f-value at the step
  int center_chart = 0;       // canonical (smallest achieving) chart id
  std::vector<std::string> center_coords;  // center coordinates there
  bool bookkeeping = false;   // codim-1 step (no new charts)
};

struct ChartTree {
  RingPtr root_ring;
  std::map<int, Chart> charts;
  std::vector<StepRecord> steps;
  int next_chart_id = 1;
  int next_divisor_id = 1;

  Chart& chart(int id);
  const Chart& chart(int id) const;
  std::vector<int> leaf_ids() const;
};

// Root chart over the given ring carrying the ideal to transform; seeded
// exceptional coordinates become birth-0 divisors (the ideal is factored
// against them immediately).
ChartTree init_ambient(RingPtr ring, const Ideal& ideal, std::uint32_t b,
                       const std::vector<std::size_t>& seeded_exceptional = {});

// Pull a polynomial / ideal of the ROOT ring into the chart (composition of
// the parent-image chains).
std::vector<Polynomial> root_images(const ChartTree& tree, int chart_id);
Ideal total_transform(const ChartTree& tree, int chart_id, const Ideal& root_ideal);

// Factor every exceptional coordinate of the chart out of the ideal:
// exponents e_H = min over generators of divisibility by x_H, remainder
// ideal ("weak part") returned alongside.
struct ExceptionalFactors {
  std::map<int, std::uint32_t> exponents;
  Ideal weak;
};
ExceptionalFactors factor_exceptional(const Chart& chart, const Ideal& ideal);

// Genuine blowup of a leaf chart along V(coords), |coords| >= 2: creates one
// child per pivot (ascending coordinate index), maintains registry and marked
// factorization, returns the child ids.  Throws ImpermissibleCenter when the
// new a-exponent would be negative.
std::vector<int> blowup(ChartTree& tree, int chart_id,
                        const std::set<std::size_t>& coords, int step_index);

// Codimension-1 center at an EXISTING divisor: a_H -= b (unloading).
void unload_divisor(ChartTree& tree, int chart_id, int divisor_id);

// Codimension-1 center at a fresh coordinate hypersurface V(x_coord):
// registers a new divisor record there (id assigned by the tree) and
// re-factors the marked data.  Returns the new divisor id.
int register_codim1_divisor(ChartTree& tree, int chart_id, std::size_t coord,
                            int step_index);

// Apply a coordinate automorphism to a chart (ideals, parent images).  The
// automorphism must fix all exceptional coordinates (checked by the
// Automorphism itself via its frozen set).
void apply_chart_automorphism(ChartTree& tree, int chart_id,
                              const Automorphism& phi);

// Restriction of an ideal to the flag V(x_{f_1},...,x_{f_k}): substitute 0
// for the flag coordinates and move to the subring without them.  Public
// precondition: no flag coordinate carries a divisor (error otherwise).
// `keep_to_sub` receives old-index -> new-index for surviving variables.
Ideal restrict_to_flag(const Chart& chart, const Ideal& ideal,
                       const std::set<std::size_t>& flag,
                       std::map<std::size_t, std::size_t>* keep_to_sub = nullptr);

// Internal variant without the divisor-coordinate precondition; used by the
// descent when a maximal contact consumes an exceptional coordinate.
Ideal restrict_to_subring(const RingPtr& ring, const Ideal& ideal,
                          const std::set<std::size_t>& drop,
                          std::map<std::size_t, std::size_t>* keep_to_sub = nullptr);

}  // namespace desing
