#pragma once

// Invariant batteries behind `steerlab verify`. Each check either asserts an
// invariant (and fails the run) or only reports a measured quantity.

#include <cstdint>
#include <string>
#include <vector>

#include "steerlab/analysis.hpp"
#include "steerlab/freeops.hpp"

namespace steerlab {

struct CheckResult {
  std::string name;
  bool asserted = true;
  bool passed = true;
  std::size_t count = 0;
  std::size_t failures = 0;
  /// Largest offending (or, for report-mode checks, headline) value.
  double worst = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;

  /// True when every asserted check passed.
  bool ok() const;
};

// -- individual batteries ----------------------------------------------------

/// Incoherent measurements on random two-qubit states: LHS residual below
/// `tol` and d_lambda <= d_A.
CheckResult lhs_roundtrip_battery(std::size_t n, std::uint64_t seed, double tol = 1e-9);

/// Assemblages built from restricted LHS models have commuting SEO.
CheckResult lhs_converse_battery(std::size_t n, std::uint64_t seed, double tol = 1e-8);

/// verdict(commuting) <=> S <= tol on mixed commuting / generic samples.
CheckResult decision_consistency_battery(std::size_t n, std::uint64_t seed, double tol = 1e-8);

/// S <= Upsilon_1(M)/4 on random qubit (state, measurement pair) instances.
CheckResult measurement_bound_battery(std::size_t n, std::uint64_t seed, double slack = 1e-9);

/// sample_free operations pass validation.
CheckResult free_validation_battery(std::size_t n, std::uint64_t seed);

/// n_ops free operations, each applied to n_inputs commuting two-qubit
/// assemblages; fails when any output commutator norm exceeds `tol`.
CheckResult free_closure_battery(std::size_t n_ops, std::size_t n_inputs, std::uint64_t seed, double tol = 1e-7);

/// Two-label LOSR that creates S > 1e-3 from a commuting input.
CheckResult losr_witness_battery(std::size_t attempts, std::uint64_t seed);

/// Monotonicity margins of one class over n_inputs random qubit
/// assemblages with n_ops operations each. Asserted with `bound` unless
/// `asserted` is false.
CheckResult monotonicity_battery(FreeOpClass op_class, std::size_t n_inputs, std::size_t n_ops, std::uint64_t seed,
                                 bool asserted = true, double bound = 1e-9, std::size_t dim = 2);

/// Existence of a matching-marginal pair and p with
/// S(mix) - [p S + (1-p) S'] > gap.
CheckResult nonconvexity_battery(std::size_t n, std::uint64_t seed, double gap = 1e-6);

// -- suites ------------------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Multiplies every sample budget.
  double scale = 1.0;
};

SuiteResult run_core_suite(const SuiteOptions& options = {});
SuiteResult run_discrepancy_suite(const SuiteOptions& options = {});

/// Analysis of one problem file phrased as checks (LHS residual for
/// commuting SEO, bound consistency otherwise).
SuiteResult verify_problem(const ProblemFile& problem, const AnalysisOptions& options);

std::string format_suite_text(const SuiteResult& suite);
std::string format_suite_json(const SuiteResult& suite);

}  // namespace steerlab
