#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "steerlab/analysis.hpp"
#include "steerlab/error.hpp"

using namespace steerlab;

namespace {

ProblemFile scenario_file(const ScenarioSpec& spec) {
  const Scenario sc = build_scenario(spec);
  ProblemFile p;
  p.dA = sc.state.dA();
  p.dB = sc.state.dB();
  p.state = sc.state;
  p.measurements = sc.measurements;
  return p;
}

}  // namespace

TEST_CASE("isotropic qubit analysis") {
  ScenarioSpec spec;
  spec.alpha = 0.5;
  const AnalysisReport r = analyze(scenario_file(spec), {});
  CHECK_FALSE(r.commuting);
  REQUIRE(r.steerability);
  CHECK(*r.steerability == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(*r.p_g == doctest::Approx(oracle::guessing_closed_form(0.25)).epsilon(1e-12));
  CHECK(*r.h_min == doctest::Approx(-std::log2(*r.p_g)).epsilon(1e-12));
  CHECK_FALSE(r.lhs_residual);
  bool flagged = false;
  for (const auto& w : r.warnings) flagged |= w.find("quadratic in alpha") != std::string::npos;
  CHECK(flagged);
  CHECK(r.digest.size() == 64);
}

TEST_CASE("product state analysis") {
  ScenarioSpec spec;
  spec.family = "product";
  const AnalysisReport r = analyze(scenario_file(spec), {});
  CHECK(r.commuting);
  CHECK(*r.steerability == doctest::Approx(0.0));
  CHECK(*r.h_min == 0.0);
  REQUIRE(r.lhs_residual);
  CHECK(*r.lhs_residual < 1e-9);
  CHECK(*r.cq_residual < 1e-9);
}

TEST_CASE("rank-deficient and efficiency warnings") {
  ScenarioSpec spec;
  spec.family = "pure";
  spec.schmidt = {0.6, 0.8, 0.0};
  AnalysisReport r = analyze(scenario_file(spec), {});
  CHECK(r.seo_dim == 2);
  CHECK_FALSE(r.warnings.empty());
  spec = ScenarioSpec{};
  spec.eta = 0.5;
  r = analyze(scenario_file(spec), {});
  bool flagged = false;
  for (const auto& w : r.warnings) flagged |= w.find("eta^2") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("invalid inputs raise ValidationFailure") {
  ProblemFile p;
  p.dA = 1;
  p.dB = 2;
  p.assemblage = StateAssemblage(2, {{identity(2) / 2.0}, {identity(2)}});
  CHECK_THROWS_AS(analyze(p, {}), ValidationFailure);
}

TEST_CASE("JSON and CSV reports") {
  ScenarioSpec spec;
  spec.alpha = 1.0;
  const AnalysisReport r = analyze(scenario_file(spec), AnalysisOptions{kInfNorm, 1e-8, 0});
  const auto j = nlohmann::json::parse(format_json(r));
  CHECK(j["verdict"] == "noncommuting");
  CHECK(j["p"] == "inf");
  CHECK(j["S"].get<double>() == doctest::Approx(1.0));
  CHECK(j["lhs_residual"].is_null());
  const std::string csv = format_csv(r);
  CHECK(csv.rfind("verdict,max_commutator_norm,p,S,p_g,H_min,lhs_residual,cq_residual\n", 0) == 0);
  CHECK(csv.find("noncommuting,") != std::string::npos);
  CHECK(format_text(r).find("demonstrated") != std::string::npos);
}

TEST_CASE("grid parsing") {
  CHECK(parse_grid("0,0.5,1") == std::vector<double>{0.0, 0.5, 1.0});
  const auto g = parse_grid("0:1:101");
  CHECK(g.size() == 101);
  CHECK(g[50] == doctest::Approx(0.5));
  CHECK(g.back() == 1.0);
  CHECK(parse_grid("0.3:0.9:1") == std::vector<double>{0.3});
  CHECK(parse_grid("").empty());
  CHECK_THROWS_AS(parse_grid("a,b"), DomainError);
  CHECK_THROWS_AS(parse_grid("0:1"), DomainError);
  CHECK_THROWS_AS(parse_grid("0:1:0"), DomainError);
}

TEST_CASE("alpha sweep CSV") {
  SweepSpec spec;
  spec.alphas = {0.0, 0.5, 1.0};
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].h_min == 0.0);
  CHECK(r.rows[2].h_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rows[1].steerability == doctest::Approx(0.25).epsilon(1e-9));
  const std::string csv = sweep_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,S,p_g,H_min");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(csv.find('\r') == std::string::npos);
  spec.alphas = {0.7};
  CHECK(run_sweep(spec).rows.size() == 1);
  spec.alphas = {};
  CHECK_THROWS_AS(run_sweep(spec), DomainError);
  spec.family = "random";
  spec.alphas = {1.0};
  CHECK_THROWS_AS(run_sweep(spec), DomainError);
}

TEST_CASE("efficiency sweep records the exponent") {
  SweepSpec spec;
  spec.alphas = {0.8};
  spec.etas = {0.25, 0.5, 1.0};
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.eta_exponent);
  CHECK(*r.eta_exponent == doctest::Approx(2.0).epsilon(1e-9));
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].steerability >= r.rows[i - 1].steerability);
  CHECK(sweep_csv(r).rfind("alpha,eta,S,p_g,H_min,eta_exponent\n", 0) == 0);
}

TEST_CASE("fit_exponent") {
  CHECK(*fit_exponent({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
  CHECK_FALSE(fit_exponent({1}, {1}));
  CHECK_FALSE(fit_exponent({0, 0}, {1, 1}));
}

TEST_CASE("sha256 and tolerance override") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  setenv("STEERLAB_TOL", "1e-5", 1);
  CHECK(default_tolerance() == 1e-5);
  setenv("STEERLAB_TOL", "junk", 1);
  CHECK(default_tolerance() == kCommutativityTol);
  unsetenv("STEERLAB_TOL");
  CHECK(default_tolerance() == kCommutativityTol);
}
