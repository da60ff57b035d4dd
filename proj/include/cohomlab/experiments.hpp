#pragma once

// Scripted reproductions and budgeted falsification searches. Each returns
// a verdict listing every check that was made.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohomlab/cohom.hpp"
#include "cohomlab/matgrp.hpp"

namespace cohomlab {

struct Check {
  std::string description;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct Counterexample {
  MatGroup group;
  std::string reason;
};

struct ExperimentVerdict {
  std::string name;
  std::map<std::string, std::int64_t> parameters;
  std::vector<Check> checks;
  std::vector<Counterexample> counterexamples;
  std::int64_t elapsed_ms = 0;

  bool passed() const;
};

struct ExperimentOptions {
  std::int64_t p = 3;
  int n = 2;
  std::optional<std::int64_t> m;  // nonsquare override for the example group
  std::size_t cap = 0;            // closure cap; 0 uses default_closure_cap()
  std::int64_t budget_ms = 0;     // wall clock; 0 uses the experiment's default
  std::uint64_t seed = 1;
  Execution exec = Execution::parallel;
};

/// Throws InvalidInput for p = 2 or a non-prime p, BudgetExceeded for p > 13.
ExperimentVerdict run_example6(std::int64_t p, std::optional<std::int64_t> m = std::nullopt,
                               Execution exec = Execution::parallel);

/// Every subgroup of the full diagonal group has trivial H^1_loc; also
/// checks the direct-sum law on the coordinate lines and the inflation
/// equality for nontrivial pointwise stabilizers. Needs p^n <= 25.
ExperimentVerdict verify_diagonal_triviality(std::int64_t p, int n, Execution exec = Execution::parallel);

/// Subgroups of GL_2(F_p) with nonzero H^1 must be conjugate to <rho> or
/// <rho, sigma>. Exhaustive for p <= 3, sampled (by seed) above.
ExperimentVerdict verify_shape_lemma(std::int64_t p, const ExperimentOptions& options = {});

/// Conclusions of the two structure propositions on subgroups of
/// GL_2(Z/p^2Z) satisfying their hypotheses, plus the delta identity.
ExperimentVerdict verify_structure_props(std::int64_t p, const ExperimentOptions& options = {});

/// Groups with nontrivial H^1_loc must violate one of the theorem's
/// conditions at the group level.
ExperimentVerdict falsify_main_theorem(std::int64_t p, const ExperimentOptions& options = {});

/// Brute-force enumeration against the linear-algebra path.
ExperimentVerdict verify_oracle_equivalence(const ExperimentOptions& options = {});

/// Dispatch by name: example6, diagonal, shape-lemma, structure-props,
/// main-theorem, oracle. Throws InvalidInput for an unknown name.
ExperimentVerdict run_experiment(const std::string& name, const ExperimentOptions& options);

const std::vector<std::string>& experiment_names();

/// Both sides of the inflation isomorphism for G acting on m: H^1_loc of
/// the action image (G modulo the pointwise stabilizer) and of G itself.
/// inflation_ok records that every witness of the quotient side inflates to
/// a locally trivial cocycle that is not a coboundary.
struct InflationComparison {
  std::vector<std::int64_t> quotient_side;
  std::vector<std::int64_t> group_side;
  std::size_t stabilizer_order = 1;
  bool inflation_ok = true;
};
InflationComparison compare_inflation(const MatGroup& g, const GModule& m);

}  // namespace cohomlab
