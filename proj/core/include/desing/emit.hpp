// emit.hpp -- machine-readable run artifacts.
//
// One JSON document per run: the problem, the command, the step log, the
// chart tree with registries/exponents/generators, and the verification
// report.  Emission is deterministic (ordered keys, id-ordered arrays,
// rationals as "p/q" strings), so re-running a command reproduces the bytes
// exactly -- which is what the `verify` command checks before re-validating
// the mathematical content.

#pragma once

#include <optional>
#include <string>

#include "desing/problem.hpp"
#include "desing/resolver.hpp"

namespace desing {

struct RunArtifacts {
  std::string command;  // "strong" | "principalize" | "invariants"
  ProblemFile problem;
  const ChartTree* tree = nullptr;
  const std::vector<ResolutionStepInfo>* steps = nullptr;
  const StrongOutput* strong = nullptr;        // when command == strong
  const VerificationReport* report = nullptr;  // when verification ran
  std::optional<FValue> invariants_value;      // when command == invariants
};

// Canonical JSON document (schema 1).
std::string emit_json(const RunArtifacts& art);

// Graphviz chart tree: one node per chart, one edge per parent link.
std::string emit_dot(const ChartTree& tree);

// Human-readable step trace, one line per step.
std::string emit_trace(const std::vector<StepRecord>& steps);

}  // namespace desing
