// desing_main.cpp -- command-line driver.
//
// Subcommands:
//   strongIN        embedded desingularization of the problem's subscheme
//   principalize IN monomialization of the problem's ideal (threshold 1)
//   invariants IN   the invariant tower and canonical center at state 0
//   verify ART      re-execute a JSON artifact and compare byte-for-byte
//
// Exit codes: 0 success, 2 verification failure, 3 realizability /
// decomposition / input errors, 4 step budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "desing/emit.hpp"
#include "desing/errors.hpp"
#include "desing/problem.hpp"
#include "desing/resolver.hpp"

namespace {

using desing::Error;
using desing::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitRealizability = 3;
constexpr int kExitBudget = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
      return kExitBudget;
    case ErrorKind::VerificationFailure:
      return kExitVerification;
    default:
      return kExitRealizability;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << content;
}

struct CommonOpts {
  std::string problem_path;
  std::string emit_json_path;
  std::string emit_dot_path;
  bool trace = false;
  bool verify = false;
  std::uint32_t max_steps = 200;
  std::vector<std::string> seed_names;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seeds) {
  cmd->add_option("problem", o.problem_path, "problem file")->required();
  cmd->add_option("--emit-json", o.emit_json_path, "write the JSON artifact");
  cmd->add_option("--emit-dot", o.emit_dot_path, "write the chart tree as DOT");
  cmd->add_flag("--trace", o.trace, "print one line per step");
  cmd->add_flag("--verify", o.verify, "run the output checks; exit 2 on failure");
  cmd->add_option("--max-steps", o.max_steps, "step budget")->capture_default_str();
  if (with_seeds)
    cmd->add_option("--seed-exceptional", o.seed_names,
                    "treat this coordinate as an initial exceptional divisor "
                    "(repeatable)");
}

desing::ProblemFile load_problem(const CommonOpts& o) {
  desing::ProblemFile p = desing::parse_problem(read_file(o.problem_path));
  for (const std::string& name : o.seed_names) {
    auto idx = p.ring->index_of(name);
    if (!idx)
      throw Error(ErrorKind::InvalidInput,
                  "--seed-exceptional: unknown variable '" + name + "'");
    p.seeded_exceptional.push_back(*idx);
  }
  return p;
}

void emit_side_artifacts(const CommonOpts& o, const desing::RunArtifacts& art) {
  if (!o.emit_json_path.empty()) write_file(o.emit_json_path, emit_json(art));
  if (!o.emit_dot_path.empty() && art.tree)
    write_file(o.emit_dot_path, emit_dot(*art.tree));
  if (o.trace && art.tree) std::cout << emit_trace(art.tree->steps);
}

// Checks on a finished principalization: total transform is exactly the
// exceptional monomial in every leaf chart, and every center image lies in
// the input's zero set.
desing::VerificationReport principalize_report(const desing::ResolutionRun& run,
                                               const desing::Ideal& input) {
  desing::VerificationReport rep;
  rep.factorization_equal = true;
  rep.strict_transform_smooth = true;
  rep.normal_crossings = true;
  rep.not_in_divisor = true;
  rep.relative_property = true;
  for (int id : run.tree.leaf_ids()) {
    const desing::Chart& chart = run.tree.chart(id);
    desing::Polynomial mono = desing::Polynomial::constant(chart.ring, 1);
    for (const auto& [h, rec] : chart.divisors) {
      auto cit = chart.c_exp.find(h);
      const std::uint32_t c = cit == chart.c_exp.end() ? 0u : cit->second;
      for (std::uint32_t k = 0; k < c; ++k)
        mono = mono * desing::Polynomial::variable(chart.ring, rec.coord);
    }
    desing::Ideal total = desing::total_transform(run.tree, id, input);
    desing::Ideal expect(chart.ring, {mono});
    if (!desing::ideal_equal(total, expect)) {
      rep.factorization_equal = false;
      rep.diagnostics.push_back("chart " + std::to_string(id) +
                                ": total transform is not the exceptional monomial");
    }
  }
  for (const desing::StepRecord& step : run.tree.steps) {
    const desing::Chart& chart = run.tree.chart(step.center_chart);
    std::vector<std::size_t> coords;
    for (const std::string& name : step.center_coords)
      coords.push_back(*chart.ring->index_of(name));
    desing::Ideal img =
        desing::center_image_in_root(run.tree, step.center_chart, coords);
    if (!desing::radical_contains(img, input)) {
      rep.relative_property = false;
      rep.diagnostics.push_back("step " + std::to_string(step.index) +
                                ": center image escapes the input locus");
    }
  }
  return rep;
}

int run_strong(const CommonOpts& o) {
  desing::ProblemFile p = load_problem(o);
  if (p.threshold != 1)
    throw Error(ErrorKind::InvalidInput,
                "the embedded pipeline runs at threshold 1");
  if (!p.seeded_exceptional.empty())
    throw Error(ErrorKind::InvalidInput,
                "the embedded pipeline does not take seeded divisors");
  desing::ResolveOptions opts;
  opts.max_steps = o.max_steps;
  desing::StrongOutput out = desing::strong_desingularize(p.ring, p.ideal, opts);

  desing::RunArtifacts art;
  art.command = "strong";
  art.problem = p;
  art.tree = &out.tree;
  art.strong = &out;
  desing::VerificationReport rep;
  if (o.verify) {
    rep = desing::verify_output(out, p.ideal);
    art.report = &rep;
  }
  emit_side_artifacts(o, art);
  std::cout << "charts: " << out.tree.charts.size()
            << ", steps: " << out.tree.steps.size() << ", codim: " << out.codim
            << (out.identity ? ", identity" : "") << "\n";
  if (out.identity)
    std::cout << "constant resolution function "
              << fvalue_to_string(out.constant_value) << "\n";
  if (o.verify) {
    std::cout << (rep.all_passed() ? "verification: all checks passed"
                                   : "verification: FAILED")
              << "\n";
    for (const auto& dmsg : rep.diagnostics) std::cout << "  " << dmsg << "\n";
    if (!rep.all_passed()) return kExitVerification;
  }
  return kExitOk;
}

int run_principalize(const CommonOpts& o) {
  desing::ProblemFile p = load_problem(o);
  if (p.threshold != 1)
    throw Error(ErrorKind::InvalidInput, "principalization runs at threshold 1");
  desing::ResolveOptions opts;
  opts.max_steps = o.max_steps;
  desing::ResolutionRun run =
      desing::principalize(p.ring, p.ideal, p.seeded_exceptional, opts);

  desing::RunArtifacts art;
  art.command = "principalize";
  art.problem = p;
  art.tree = &run.tree;
  art.steps = &run.steps;
  desing::VerificationReport rep;
  if (o.verify) {
    rep = principalize_report(run, p.ideal);
    art.report = &rep;
  }
  emit_side_artifacts(o, art);
  std::cout << "charts: " << run.tree.charts.size()
            << ", steps: " << run.tree.steps.size() << "\n";
  if (o.verify) {
    std::cout << (rep.all_passed() ? "verification: all checks passed"
                                   : "verification: FAILED")
              << "\n";
    for (const auto& dmsg : rep.diagnostics) std::cout << "  " << dmsg << "\n";
    if (!rep.all_passed()) return kExitVerification;
  }
  return kExitOk;
}

int run_invariants(const CommonOpts& o) {
  desing::ProblemFile p = load_problem(o);
  desing::ChartTree tree = desing::init_ambient(p.ring, p.ideal, p.threshold,
                                                p.seeded_exceptional);
  desing::HistoryMap histories;
  std::optional<desing::ResolutionStepInfo> info =
      desing::plan_resolution_step(tree, histories, 0);

  desing::RunArtifacts art;
  art.command = "invariants";
  art.problem = p;
  art.tree = &tree;
  if (info) art.invariants_value = info->f;
  emit_side_artifacts(o, art);
  if (!info) {
    std::cout << "singular locus empty: nothing to resolve\n";
  } else {
    std::cout << "f = " << fvalue_to_string(info->f) << "\n";
    const desing::Chart& chart = tree.chart(info->center_chart);
    std::cout << "center = c" << info->center_chart << "/";
    for (std::size_t i = 0; i < info->center_coords.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << chart.ring->vars[info->center_coords[i]];
    }
    std::cout << "\n";
  }
  return kExitOk;
}

// Reconstruct the problem from an artifact and re-execute its command; the
// regenerated JSON must match the artifact byte-for-byte, then the
// mathematical checks are re-run on the fresh output.
int run_verify(const std::string& artifact_path) {
  const std::string original = read_file(artifact_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(original);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("artifact: ") + e.what());
  }
  if (!doc.contains("command") || !doc.contains("problem"))
    throw Error(ErrorKind::ParseError, "artifact: missing command or problem");

  desing::ProblemFile p;
  {
    const auto& prob = doc["problem"];
    std::vector<std::string> names = prob["ring"].get<std::vector<std::string>>();
    p.ring = desing::make_ring(names);
    p.ideal = desing::Ideal(p.ring, {});
    for (const auto& g : prob["ideal"])
      p.ideal.gens.push_back(
          desing::parse_polynomial(p.ring, g.get<std::string>()));
    for (const auto& e : prob["exceptional"]) {
      auto idx = p.ring->index_of(e.get<std::string>());
      if (!idx)
        throw Error(ErrorKind::ParseError, "artifact: unknown exceptional name");
      p.seeded_exceptional.push_back(*idx);
    }
    p.threshold = prob["threshold"].get<std::uint32_t>();
  }
  const std::string command = doc["command"].get<std::string>();
  const bool had_report = doc.contains("verification");

  std::string regenerated;
  bool checks_pass = true;
  if (command == "strong") {
    desing::StrongOutput out = desing::strong_desingularize(p.ring, p.ideal);
    desing::RunArtifacts art;
    art.command = command;
    art.problem = p;
    art.tree = &out.tree;
    art.strong = &out;
    desing::VerificationReport rep;
    if (had_report) {
      rep = desing::verify_output(out, p.ideal);
      art.report = &rep;
      checks_pass = rep.all_passed();
    }
    regenerated = emit_json(art);
  } else if (command == "principalize") {
    desing::ResolutionRun run =
        desing::principalize(p.ring, p.ideal, p.seeded_exceptional);
    desing::RunArtifacts art;
    art.command = command;
    art.problem = p;
    art.tree = &run.tree;
    art.steps = &run.steps;
    desing::VerificationReport rep;
    if (had_report) {
      rep = principalize_report(run, p.ideal);
      art.report = &rep;
      checks_pass = rep.all_passed();
    }
    regenerated = emit_json(art);
  } else if (command == "invariants") {
    desing::ChartTree tree = desing::init_ambient(p.ring, p.ideal, p.threshold,
                                                  p.seeded_exceptional);
    desing::HistoryMap histories;
    auto info = desing::plan_resolution_step(tree, histories, 0);
    desing::RunArtifacts art;
    art.command = command;
    art.problem = p;
    art.tree = &tree;
    if (info) art.invariants_value = info->f;
    regenerated = emit_json(art);
  } else {
    throw Error(ErrorKind::ParseError, "artifact: unknown command '" + command + "'");
  }

  if (regenerated != original) {
    std::cout << "verify: artifact does not reproduce byte-for-byte\n";
    return kExitVerification;
  }
  if (!checks_pass) {
    std::cout << "verify: artifact reproduces but output checks fail\n";
    return kExitVerification;
  }
  std::cout << "verify: artifact reproduces byte-for-byte"
            << (had_report ? " and all output checks pass" : "") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact desingularization engine"};
  app.require_subcommand(1);

  CommonOpts strong_opts, princ_opts, inv_opts;
  std::string artifact_path;

  CLI::App* strong_cmd =
      app.add_subcommand("strong", "embedded desingularization");
  add_common(strong_cmd, strong_opts, /*with_seeds=*/false);
  CLI::App* princ_cmd =
      app.add_subcommand("principalize", "monomialize an ideal");
  add_common(princ_cmd, princ_opts, /*with_seeds=*/true);
  CLI::App* inv_cmd =
      app.add_subcommand("invariants", "invariant tower at state 0");
  add_common(inv_cmd, inv_opts, /*with_seeds=*/true);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-execute and compare a JSON artifact");
  verify_cmd->add_option("artifact", artifact_path, "artifact JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (strong_cmd->parsed()) return run_strong(strong_opts);
    if (princ_cmd->parsed()) return run_principalize(princ_opts);
    if (inv_cmd->parsed()) return run_invariants(inv_opts);
    if (verify_cmd->parsed()) return run_verify(artifact_path);
  } catch (const Error& e) {
    nlohmann::ordered_json err;
    err["schema"] = 1;
    err["error"]["kind"] = desing::error_kind_name(e.kind());
    err["error"]["message"] = e.what();
    std::cout << err.dump(2) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRealizability;
  }
  return kExitOk;
}
