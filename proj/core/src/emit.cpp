// emit.cpp -- canonical JSON / DOT / trace artifacts.
//
// Determinism is the whole point: keys in insertion order, charts and
// divisors in ascending id order, generators in stored order, rationals as
// "p/q" strings.  Re-running the same command on the same problem must
// reproduce the JSON byte for byte; the verify command relies on that.

#include <json.hpp>

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "desing/emit.hpp"

namespace desing {
namespace {

using json = nlohmann::ordered_json;

json ideal_to_json(const Ideal& ideal) {
  json arr = json::array();
  for (const Polynomial& g : ideal.gens)
    if (!g.is_zero()) arr.push_back(g.to_string());
  if (arr.empty()) arr.push_back("0");
  return arr;
}

json exp_map_to_json(const std::map<int, std::uint32_t>& m) {
  json obj = json::object();
  for (const auto& [id, e] : m) obj[std::to_string(id)] = e;
  return obj;
}

json chart_to_json(const Chart& chart, const RunArtifacts& art) {
  json c;
  c["id"] = chart.id;
  if (chart.parent) {
    c["parent"] = chart.parent->first;
    c["pivot"] = chart.ring->vars[chart.parent->second];
  } else {
    c["parent"] = nullptr;
    c["pivot"] = nullptr;
  }
  c["vars"] = chart.ring->vars;
  c["leaf"] = chart.leaf;
  json divs = json::array();
  for (const auto& [id, rec] : chart.divisors) {
    json d;
    d["id"] = id;
    d["coord"] = chart.ring->vars[rec.coord];
    d["birth"] = rec.birth;
    divs.push_back(std::move(d));
  }
  c["divisors"] = std::move(divs);
  c["b"] = chart.b;
  c["a"] = exp_map_to_json(chart.a_exp);
  c["c"] = exp_map_to_json(chart.c_exp);
  c["weak"] = ideal_to_json(chart.weak);
  if (art.strong && chart.leaf) {
    auto sit = art.strong->strict_transform.find(chart.id);
    if (sit != art.strong->strict_transform.end())
      c["strict"] = ideal_to_json(sit->second);
    auto rit = art.strong->residual.find(chart.id);
    if (rit != art.strong->residual.end())
      c["residual"] = ideal_to_json(rit->second);
    auto fit = art.strong->certificate.flags.find(chart.id);
    if (fit != art.strong->certificate.flags.end()) {
      json flags = json::array();
      for (const auto& entry : fit->second) {
        if (std::holds_alternative<std::size_t>(entry))
          flags.push_back(chart.ring->vars[std::get<std::size_t>(entry)]);
        else
          flags.push_back(std::get<Polynomial>(entry).to_string());
      }
      c["certificate"] = std::move(flags);
    }
  }
  return c;
}

}  // namespace

std::string emit_json(const RunArtifacts& art) {
  json doc;
  doc["schema"] = 1;
  doc["command"] = art.command;
  {
    json prob;
    prob["ring"] = art.problem.ring->vars;
    prob["ideal"] = ideal_to_json(art.problem.ideal);
    json exc = json::array();
    for (std::size_t i : art.problem.seeded_exceptional)
      exc.push_back(art.problem.ring->vars[i]);
    prob["exceptional"] = std::move(exc);
    prob["threshold"] = art.problem.threshold;
    doc["problem"] = std::move(prob);
  }
  if (art.tree) {
    json steps = json::array();
    for (const StepRecord& s : art.tree->steps) {
      json st;
      st["index"] = s.index;
      st["level"] = s.level;
      st["f"] = s.t_value;
      st["chart"] = s.center_chart;
      st["center"] = s.center_coords;
      st["bookkeeping"] = s.bookkeeping;
      steps.push_back(std::move(st));
    }
    doc["steps"] = std::move(steps);
    json charts = json::array();
    for (const auto& [id, chart] : art.tree->charts)
      charts.push_back(chart_to_json(chart, art));
    doc["charts"] = std::move(charts);
  }
  if (art.strong) {
    doc["codim"] = art.strong->codim;
    doc["identity"] = art.strong->identity;
    if (art.strong->identity)
      doc["constant"] = fvalue_to_string(art.strong->constant_value);
    doc["certificate_level"] = art.strong->certificate.level;
  }
  if (art.invariants_value)
    doc["invariants"] = fvalue_to_string(*art.invariants_value);
  if (art.report) {
    json v;
    v["factorization_equal"] = art.report->factorization_equal;
    v["strict_transform_smooth"] = art.report->strict_transform_smooth;
    v["normal_crossings"] = art.report->normal_crossings;
    v["not_in_divisor"] = art.report->not_in_divisor;
    v["relative_property"] = art.report->relative_property;
    v["all_passed"] = art.report->all_passed();
    v["diagnostics"] = art.report->diagnostics;
    doc["verification"] = std::move(v);
  }
  return doc.dump(2) + "\n";
}

std::string emit_dot(const ChartTree& tree) {
  std::ostringstream out;
  out << "digraph charts {\n";
  for (const auto& [id, chart] : tree.charts) {
    out << "  c" << id << " [label=\"c" << id;
    if (chart.parent)
      out << " pivot=" << chart.ring->vars[chart.parent->second];
    out << "\"];\n";
  }
  for (const auto& [id, chart] : tree.charts) {
    if (!chart.parent) continue;
    const Chart& par = tree.chart(chart.parent->first);
    out << "  c" << chart.parent->first << " -> c" << id;
    if (par.center) out << " [label=\"" << par.center->step << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_trace(const std::vector<StepRecord>& steps) {
  std::ostringstream out;
  for (const StepRecord& s : steps) {
    out << "step " << s.index << ": level " << s.level << ", t=" << s.t_value
        << ", center=c" << s.center_chart << "/";
    for (std::size_t i = 0; i < s.center_coords.size(); ++i) {
      if (i) out << ",";
      out << s.center_coords[i];
    }
    if (s.bookkeeping) out << " (bookkeeping)";
    out << "\n";
  }
  return out.str();
}

}  // namespace desing
