// chart.cpp -- blowup chart tree: substitutions, divisor registry, marked
// factorizations and their transform laws.

#include "desing/chart.hpp"

#include <algorithm>

#include "desing/errors.hpp"

namespace desing {

std::set<std::size_t> Chart::exceptional_coords() const {
  std::set<std::size_t> coords;
  for (const auto& [id, rec] : divisors) coords.insert(rec.coord);
  return coords;
}

std::optional<int> Chart::divisor_at_coord(std::size_t coord) const {
  for (const auto& [id, rec] : divisors)
    if (rec.coord == coord) return id;
  return std::nullopt;
}

namespace {

Ideal marked_ideal(const Chart& chart, const std::map<int, std::uint32_t>& exp) {
  Mono m(chart.ring->arity(), 0);
  for (const auto& [id, rec] : chart.divisors) {
    auto it = exp.find(id);
    assert(it != exp.end());
    m[rec.coord] += it->second;
  }
  Polynomial mon = mono_poly(chart.ring, m);
  Ideal out(chart.ring, {});
  for (const auto& g : chart.weak.gens)
    if (!g.is_zero()) out.gens.push_back(g * mon);
  return out;
}

}  // namespace

Ideal Chart::controlled_ideal() const { return marked_ideal(*this, a_exp); }
Ideal Chart::total_ideal() const { return marked_ideal(*this, c_exp); }

Chart& ChartTree::chart(int id) {
  auto it = charts.find(id);
  assert(it != charts.end());
  return it->second;
}

const Chart& ChartTree::chart(int id) const {
  auto it = charts.find(id);
  assert(it != charts.end());
  return it->second;
}

std::vector<int> ChartTree::leaf_ids() const {
  std::vector<int> ids;
  for (const auto& [id, c] : charts)
    if (c.leaf) ids.push_back(id);
  return ids;
}

ChartTree init_ambient(RingPtr ring, const Ideal& ideal, std::uint32_t b,
                       const std::vector<std::size_t>& seeded_exceptional) {
  assert(b >= 1);
  ChartTree tree;
  tree.root_ring = ring;
  Chart root;
  root.id = 0;
  root.ring = ring;
  for (std::size_t i = 0; i < ring->arity(); ++i)
    root.parent_images.push_back(Polynomial::variable(ring, i));
  root.b = b;
  for (std::size_t coord : seeded_exceptional) {
    assert(coord < ring->arity());
    DivisorRecord rec{tree.next_divisor_id++, coord, 0, 0};
    assert(!root.divisor_at_coord(coord).has_value());
    root.divisors.emplace(rec.id, rec);
  }
  Ideal start = ideal;
  start.prune_zeros();
  if (start.gens.empty())
    throw Error(ErrorKind::InvalidInput, "cannot transform the zero ideal");
  ExceptionalFactors f = factor_exceptional(root, start);
  root.weak = std::move(f.weak);
  // Seeded divisors start with equal controlled and total exponents.
  root.a_exp = f.exponents;
  root.c_exp = f.exponents;
  tree.charts.emplace(0, std::move(root));
  return tree;
}

std::vector<Polynomial> root_images(const ChartTree& tree, int chart_id) {
  // Chain of charts from the root down to chart_id.
  std::vector<int> path;
  for (int id = chart_id;;) {
    path.push_back(id);
    const Chart& c = tree.chart(id);
    if (!c.parent) break;
    id = c.parent->first;
  }
  std::reverse(path.begin(), path.end());
  const Chart& root = tree.chart(path.front());
  std::vector<Polynomial> images = root.parent_images;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Chart& c = tree.chart(path[k]);
    for (auto& img : images) img = img.substitute(c.ring, c.parent_images);
  }
  return images;
}

Ideal total_transform(const ChartTree& tree, int chart_id,
                      const Ideal& root_ideal) {
  const Chart& c = tree.chart(chart_id);
  std::vector<Polynomial> images = root_images(tree, chart_id);
  Ideal out(c.ring, {});
  for (const auto& g : root_ideal.gens) {
    Polynomial h = g.substitute(c.ring, images);
    if (!h.is_zero()) out.gens.push_back(std::move(h));
  }
  return out;
}

ExceptionalFactors factor_exceptional(const Chart& chart, const Ideal& ideal) {
  ExceptionalFactors out;
  out.weak = ideal;
  out.weak.prune_zeros();
  assert(!out.weak.gens.empty());
  for (const auto& [id, rec] : chart.divisors) {
    std::uint32_t e = UINT32_MAX;
    for (const auto& g : out.weak.gens)
      e = std::min(e, *g.divisibility_by_var(rec.coord));
    out.exponents[id] = e;
    if (e > 0)
      for (auto& g : out.weak.gens) g = g.divide_by_var_power(rec.coord, e);
  }
  return out;
}

namespace {

// One blowup (or codimension-1 registration) per step creates one global
// divisor: when an earlier chart of the same step already registered it,
// reuse that id.
int divisor_id_for_step(ChartTree& tree, int step_index) {
  assert(step_index >= 1);
  for (const auto& [cid, chart] : tree.charts)
    for (const auto& [did, rec] : chart.divisors)
      if (rec.birth == step_index) return did;
  return tree.next_divisor_id++;
}

}  // namespace

std::vector<int> blowup(ChartTree& tree, int chart_id,
                        const std::set<std::size_t>& coords, int step_index) {
  Chart parent = tree.chart(chart_id);  // by value: we mutate the tree below
  assert(parent.leaf);
  assert(coords.size() >= 2);
  for (std::size_t s : coords) assert(s < parent.ring->arity());

  // Exponent sums over the divisors sitting at center coordinates.
  std::uint64_t a_sum = 0, c_sum = 0;
  for (std::size_t s : coords) {
    if (auto id = parent.divisor_at_coord(s)) {
      a_sum += parent.a_exp.at(*id);
      c_sum += parent.c_exp.at(*id);
    }
  }

  int new_div = divisor_id_for_step(tree, step_index);
  std::vector<int> children;
  for (std::size_t pivot : coords) {
    Chart child;
    child.id = tree.next_chart_id++;
    child.parent = std::make_pair(chart_id, pivot);
    child.b = parent.b;

    // Child ring: non-pivot center coordinates get primed names.
    std::vector<std::string> names = parent.ring->vars;
    for (std::size_t s : coords)
      if (s != pivot) names[s] += "'";
    child.ring = make_ring(std::move(names));

    // Substitution x_pivot -> x_pivot, x_s -> x_pivot * x_s (s in S).
    for (std::size_t i = 0; i < parent.ring->arity(); ++i) {
      Polynomial img = Polynomial::variable(child.ring, i);
      if (coords.count(i) && i != pivot)
        img = img * Polynomial::variable(child.ring, pivot);
      child.parent_images.push_back(std::move(img));
    }

    // Registry: a divisor at the pivot coordinate misses this chart (its
    // strict transform lives in the sibling charts); others carry over.
    for (const auto& [id, rec] : parent.divisors) {
      if (rec.coord == pivot) continue;
      child.divisors.emplace(id, rec);
      child.a_exp[id] = parent.a_exp.at(id);
      child.c_exp[id] = parent.c_exp.at(id);
    }
    DivisorRecord fresh{new_div, pivot, step_index, child.id};
    child.divisors.emplace(fresh.id, fresh);

    // Transform the weak ideal and compute the new exponents.
    Ideal pulled(child.ring, {});
    for (const auto& g : parent.weak.gens) {
      Polynomial h = g.substitute(child.ring, child.parent_images);
      if (!h.is_zero()) pulled.gens.push_back(std::move(h));
    }
    assert(!pulled.gens.empty());
    std::uint32_t nu = UINT32_MAX;
    for (const auto& g : pulled.gens)
      nu = std::min(nu, *g.divisibility_by_var(pivot));
    for (auto& g : pulled.gens)
      if (nu > 0) g = g.divide_by_var_power(pivot, nu);
    child.weak = std::move(pulled);

    if (a_sum + nu < parent.b)
      throw Error(ErrorKind::ImpermissibleCenter,
                  "controlled transform exponent would be negative");
    child.a_exp[new_div] = static_cast<std::uint32_t>(a_sum + nu - parent.b);
    child.c_exp[new_div] = static_cast<std::uint32_t>(c_sum + nu);
    // Blowup-born divisors always have c strictly above a.
    assert(child.c_exp[new_div] > child.a_exp[new_div]);

    children.push_back(child.id);
    tree.charts.emplace(child.id, std::move(child));
  }

  Chart& stored = tree.chart(chart_id);
  stored.leaf = false;
  stored.center =
      CenterRecord{std::vector<std::size_t>(coords.begin(), coords.end()),
                   step_index};
  return children;
}

void unload_divisor(ChartTree& tree, int chart_id, int divisor_id) {
  Chart& chart = tree.chart(chart_id);
  assert(chart.leaf);
  auto it = chart.a_exp.find(divisor_id);
  assert(it != chart.a_exp.end());
  if (it->second < chart.b)
    throw Error(ErrorKind::ImpermissibleCenter,
                "divisor exponent below the threshold");
  it->second -= chart.b;
}

int register_codim1_divisor(ChartTree& tree, int chart_id, std::size_t coord,
                            int step_index) {
  Chart& chart = tree.chart(chart_id);
  assert(chart.leaf);
  assert(!chart.divisor_at_coord(coord).has_value());

  std::uint32_t depth = UINT32_MAX;
  for (const auto& g : chart.weak.gens)
    depth = std::min(depth, *g.divisibility_by_var(coord));
  if (depth < chart.b)
    throw Error(ErrorKind::ImpermissibleCenter,
                "hypersurface order below the threshold");

  int id = divisor_id_for_step(tree, step_index);
  DivisorRecord rec{id, coord, step_index, chart_id};
  chart.divisors.emplace(id, rec);
  // Total transform is unchanged; the fresh divisor absorbs the full
  // coordinate depth of the weak part, the controlled transform drops b.
  chart.c_exp[id] = depth;
  chart.a_exp[id] = depth - chart.b;
  if (depth > 0)
    for (auto& g : chart.weak.gens) g = g.divide_by_var_power(coord, depth);
  return id;
}

void apply_chart_automorphism(ChartTree& tree, int chart_id,
                              const Automorphism& phi) {
  Chart& chart = tree.chart(chart_id);
  assert(same_ring(phi.ring(), chart.ring));
  // Exceptional coordinates must be frozen in the automorphism.
  for (std::size_t c : chart.exceptional_coords()) assert(phi.frozen().count(c));
  for (auto& g : chart.weak.gens) g = phi.apply(g);
  for (auto& img : chart.parent_images) img = phi.apply(img);
}

Ideal restrict_to_subring(const RingPtr& ring, const Ideal& ideal,
                          const std::set<std::size_t>& drop,
                          std::map<std::size_t, std::size_t>* keep_to_sub) {
  std::vector<std::string> names;
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    if (drop.count(i)) continue;
    remap[i] = names.size();
    names.push_back(ring->vars[i]);
  }
  RingPtr sub = make_ring(std::move(names));
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    if (drop.count(i))
      images.push_back(Polynomial::zero(sub));
    else
      images.push_back(Polynomial::variable(sub, remap[i]));
  }
  Ideal out(sub, {});
  for (const auto& g : ideal.gens) {
    Polynomial h = g.substitute(sub, images);
    if (!h.is_zero()) out.gens.push_back(std::move(h));
  }
  if (keep_to_sub) *keep_to_sub = std::move(remap);
  return out;
}

Ideal restrict_to_flag(const Chart& chart, const Ideal& ideal,
                       const std::set<std::size_t>& flag,
                       std::map<std::size_t, std::size_t>* keep_to_sub) {
  for (std::size_t f : flag)
    if (chart.divisor_at_coord(f))
      throw Error(ErrorKind::FrozenCoordinateViolation,
                  "flag coordinate " + chart.ring->vars[f] +
                      " carries an exceptional divisor");
  return restrict_to_subring(chart.ring, ideal, flag, keep_to_sub);
}

}  // namespace desing
