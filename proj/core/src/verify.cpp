// verify.cpp -- machine verification of a finished desingularization run.
//
// Five independent checks, each recomputed from scratch against the chart
// tree rather than trusted from the driver's bookkeeping:
//
//   1. factorization: in every leaf chart the total transform of the input
//      equals (exceptional monomial from the c-exponents) * (strict ideal),
//      as an exact ideal identity;
//   2. smoothness of the strict transform at the expected codimension;
//   3. normal crossings: the strict transform meets every subset of its
//      chart's divisors in the expected dimension, smoothly;
//   4. the strict transform is contained in no exceptional divisor;
//   5. relative property: every recorded center maps into the non-admissible
//      locus of the input, so the composition is an isomorphism off it.
//
// koszul_report pulls every original generator back to each leaf chart and
// factors it against the divisor coordinates: for a complete-intersection
// input each pullback must be divisible by the full exceptional monomial.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "desing/errors.hpp"
#include "desing/ideal_ops.hpp"
#include "desing/resolver.hpp"

namespace desing {
namespace {

std::string chart_tag(int id) { return "chart " + std::to_string(id); }

// prod x_H^{c_H} over the chart's divisors, as a single monomial.
Polynomial c_monomial(const Chart& chart) {
  Polynomial m = Polynomial::constant(chart.ring, 1);
  for (const auto& [id, rec] : chart.divisors) {
    auto it = chart.c_exp.find(id);
    const std::uint32_t e = it == chart.c_exp.end() ? 0u : it->second;
    for (std::uint32_t k = 0; k < e; ++k)
      m = m * Polynomial::variable(chart.ring, rec.coord);
  }
  return m;
}

// Exact divisibility exponent of f by the coordinate x_v.
std::uint32_t divisibility(const Polynomial& f, std::size_t v) {
  if (f.is_zero()) return 0;
  std::uint32_t e = UINT32_MAX;
  for (const auto& [mono, coef] : f.terms()) {
    (void)coef;
    e = std::min(e, mono[v]);
    if (e == 0) break;
  }
  return e;
}

}  // namespace

VerificationReport verify_output(const StrongOutput& out, const Ideal& input) {
  VerificationReport rep;
  rep.factorization_equal = true;
  rep.strict_transform_smooth = true;
  rep.normal_crossings = true;
  rep.not_in_divisor = true;
  rep.relative_property = true;
  const ChartTree& tree = out.tree;
  const int d = static_cast<int>(tree.root_ring->arity());

  for (int id : tree.leaf_ids()) {
    const Chart& chart = tree.chart(id);
    auto sit = out.strict_transform.find(id);
    if (sit == out.strict_transform.end()) {
      rep.factorization_equal = false;
      rep.diagnostics.push_back(chart_tag(id) + ": no strict-transform entry");
      continue;
    }
    const Ideal& strict = sit->second;
    const bool strict_unit = strict.gens.empty() || is_unit_ideal(strict);

    // 1. I(X) O = monomial * strict, exactly.
    {
      Ideal total = total_transform(tree, id, input);
      Polynomial mono = c_monomial(chart);
      Ideal expect(chart.ring, {});
      if (strict_unit) {
        expect.gens.push_back(mono);
      } else {
        for (const Polynomial& g : strict.gens)
          if (!g.is_zero()) expect.gens.push_back(mono * g);
      }
      if (!ideal_equal(total, expect)) {
        rep.factorization_equal = false;
        rep.diagnostics.push_back(
            chart_tag(id) +
            ": total transform differs from the declared factorization");
      }
    }
    if (strict_unit) continue;  // checks 2-4 are about the strict locus

    // 2. Smooth of the expected codimension.
    if (!jacobian_smoothness(strict, out.codim).smooth) {
      rep.strict_transform_smooth = false;
      rep.diagnostics.push_back(chart_tag(id) + ": strict transform not smooth");
    }

    // 3. Normal crossings with every divisor subset.
    {
      std::vector<std::size_t> coords;
      for (const auto& [h, rec] : chart.divisors) coords.push_back(rec.coord);
      const std::size_t m = coords.size();
      for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        Ideal sum = strict;
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (std::size_t(1) << i)) {
            sum.gens.push_back(Polynomial::variable(chart.ring, coords[i]));
            ++k;
          }
        if (is_unit_ideal(sum)) continue;  // empty intersection is fine
        const int want = d - static_cast<int>(out.codim) - static_cast<int>(k);
        if (dimension(sum) != want ||
            !jacobian_smoothness(sum, out.codim + static_cast<std::uint32_t>(k))
                 .smooth) {
          rep.normal_crossings = false;
          rep.diagnostics.push_back(chart_tag(id) +
                                    ": divisor intersection not transversal");
          break;
        }
      }
    }

    // 4. Not contained in any divisor.
    for (const auto& [h, rec] : chart.divisors) {
      bool all_divisible = true;
      for (const Polynomial& g : strict.gens)
        if (!g.is_zero() && divisibility(g, rec.coord) == 0) {
          all_divisible = false;
          break;
        }
      if (all_divisible) {
        rep.not_in_divisor = false;
        rep.diagnostics.push_back(chart_tag(id) + ": strict transform inside divisor " +
                                  std::to_string(h));
      }
    }
  }

  // 5. Every center image inside the non-admissible locus.
  {
    Ideal rs = rsing(tree.root_ring, input);
    for (const StepRecord& step : tree.steps) {
      const Chart& chart = tree.chart(step.center_chart);
      std::vector<std::size_t> coords;
      for (const std::string& name : step.center_coords) {
        auto idx = chart.ring->index_of(name);
        if (!idx) {
          rep.relative_property = false;
          rep.diagnostics.push_back("step " + std::to_string(step.index) +
                                    ": unknown center coordinate " + name);
          break;
        }
        coords.push_back(*idx);
      }
      if (coords.size() != step.center_coords.size()) continue;
      Ideal img = center_image_in_root(tree, step.center_chart, coords);
      if (!radical_contains(img, rs)) {
        rep.relative_property = false;
        rep.diagnostics.push_back("step " + std::to_string(step.index) +
                                  ": center image escapes the allowed locus");
      }
    }
  }
  return rep;
}

KoszulReport koszul_report(const StrongOutput& out, const Ideal& input) {
  Ideal in = input;
  in.prune_zeros();
  if (in.gens.size() != out.codim)
    throw Error(ErrorKind::NotCompleteIntersection,
                "twist report needs exactly codimension many generators, got " +
                    std::to_string(in.gens.size()));
  KoszulReport rep;
  rep.divisible = true;
  for (int id : out.tree.leaf_ids()) {
    const Chart& chart = out.tree.chart(id);
    std::vector<Polynomial> imgs = root_images(out.tree, id);
    std::vector<std::map<int, std::uint32_t>> per_gen;
    for (const Polynomial& g : in.gens) {
      Polynomial pulled = g.substitute(chart.ring, imgs);
      std::map<int, std::uint32_t> tw;
      for (const auto& [h, rec] : chart.divisors) {
        const std::uint32_t e = divisibility(pulled, rec.coord);
        tw[h] = e;
        auto cit = chart.c_exp.find(h);
        const std::uint32_t c = cit == chart.c_exp.end() ? 0u : cit->second;
        if (e < c) rep.divisible = false;
      }
      per_gen.push_back(std::move(tw));
    }
    rep.twists.emplace(id, std::move(per_gen));
  }
  return rep;
}

}  // namespace desing
