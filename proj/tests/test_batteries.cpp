#include "doctest.h"
#include "json.hpp"
#include "steerlab/batteries.hpp"
#include "steerlab/scenarios.hpp"

using namespace steerlab;

TEST_CASE("core suite passes at reduced budget") {
  const SuiteResult r = run_core_suite(SuiteOptions{0, 0.25});
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    if (c.asserted) CHECK(c.passed);
  }
  CHECK(r.ok());
}

TEST_CASE("core suite is deterministic") {
  const auto a = format_suite_json(run_core_suite(SuiteOptions{4, 0.1}));
  const auto b = format_suite_json(run_core_suite(SuiteOptions{4, 0.1}));
  CHECK(a == b);
}

TEST_CASE("discrepancy suite reports without failing") {
  const SuiteResult r = run_discrepancy_suite(SuiteOptions{0, 0.25});
  CHECK(r.ok());
  for (const auto& c : r.checks) CHECK_FALSE(c.asserted);
  const auto j = nlohmann::json::parse(format_suite_json(r));
  bool saw_eta = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "eta-exponent") {
      saw_eta = true;
      CHECK(c["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
  CHECK(saw_eta);
}

TEST_CASE("verify on a commuting-SEO file reports the LHS residual") {
  ScenarioSpec spec;
  spec.family = "product";
  const Scenario sc = build_scenario(spec);
  ProblemFile p;
  p.dA = 2;
  p.dB = 2;
  p.assemblage = steer(sc.state, sc.measurements);
  const SuiteResult r = verify_problem(p, {});
  CHECK(r.ok());
  bool saw = false;
  for (const auto& c : r.checks) {
    if (c.name == "lhs-reconstruction") {
      saw = true;
      CHECK(c.worst < 1e-9);
    }
  }
  CHECK(saw);
}
