#include "doctest.h"
#include "oracles.hpp"
#include "steerlab/assemblage.hpp"
#include "steerlab/error.hpp"
#include "steerlab/random.hpp"
#include "steerlab/scenarios.hpp"

using namespace steerlab;

TEST_CASE("steer agrees with the explicit partial trace") {
  Rng rng = make_rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t dA = 2 + trial % 2;
    const std::size_t dB = 2 + (trial / 2) % 2;
    const BipartiteState rho = random_state(dA, dB, rng);
    const MeasurementAssemblage m = random_measurement(dA, 2, rng);
    const StateAssemblage s = steer(rho, m);
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t a = 0; a < m.n_a(); ++a) {
        const auto ref = oracle::steer_element(rho.rho(), m.at(x, a), int(dA), int(dB));
        CHECK(max_abs_diff(s.at(x, a), ref) < 1e-13);
      }
    }
    CHECK(s.no_signaling_residual() < 1e-13);
    CHECK(max_abs_diff(s.reduced(), oracle::trace_a(rho.rho(), int(dA), int(dB))) < 1e-13);
    CHECK(validate_state_assemblage(s).ok());
  }
}

TEST_CASE("measurement validation flags each defect") {
  const ComplexMatrix p0 = (identity(2) + pauli(2)) / 2.0;
  const ComplexMatrix p1 = (identity(2) - pauli(2)) / 2.0;
  CHECK(validate_measurement(MeasurementAssemblage(2, {{p0, p1}})).ok());

  const auto incomplete = validate_measurement(MeasurementAssemblage(2, {{p0, p0}}));
  REQUIRE_FALSE(incomplete.ok());
  CHECK(incomplete.worst()->kind == "completeness");

  const auto negative = validate_measurement(MeasurementAssemblage(2, {{2.0 * p0 - p1, 2.0 * p1}}));
  REQUIRE_FALSE(negative.ok());
  bool saw_positivity = false;
  for (const auto& v : negative.violations) saw_positivity |= v.kind == "positivity";
  CHECK(saw_positivity);

  ComplexMatrix nonherm = p0;
  nonherm(0, 1) = 0.3;
  CHECK_FALSE(validate_measurement(MeasurementAssemblage(2, {{nonherm, identity(2) - nonherm}})).ok());
  CHECK_THROWS_AS(MeasurementAssemblage(2, {{identity(3)}}), DimensionError);
}

TEST_CASE("state validation") {
  CHECK(validate_state(maximally_entangled(3)).ok());
  ComplexMatrix bad = identity(4) / 2.0;
  CHECK_FALSE(validate_state(BipartiteState(2, 2, bad)).ok());
  ComplexMatrix neg = identity(4) / 4.0;
  neg(0, 0) = -0.25;
  neg(1, 1) = 0.75;
  CHECK_FALSE(validate_state(BipartiteState(2, 2, neg)).ok());
  CHECK_THROWS_AS(BipartiteState(2, 3, identity(4)), DimensionError);
}

TEST_CASE("state assemblage validation catches signalling") {
  const ComplexMatrix p0 = (identity(2) + pauli(2)) / 2.0;
  const ComplexMatrix p1 = (identity(2) - pauli(2)) / 2.0;
  const StateAssemblage signalling(2, {{p0 / 2.0, p1 / 2.0}, {p0 / 2.0, p0 / 2.0}});
  CHECK_FALSE(validate_state_assemblage(signalling).ok());
  CHECK(signalling.no_signaling_residual() > 0.4);
}

TEST_CASE("pure entangled states") {
  const PureEntangledState psi({0.6, 0.8});
  CHECK(psi.schmidt_number() == 2);
  CHECK(psi.entangled());
  CHECK(std::abs(psi.ket().norm() - 1.0) < 1e-15);
  CHECK_THROWS_AS(PureEntangledState({0.6, 0.6}), DomainError);
  CHECK_FALSE(PureEntangledState({1.0, 0.0}).entangled());

  // assemblage_from_pure = steer(|psi><psi|, M)
  Rng rng = make_rng(4);
  const PureEntangledState chi({std::sqrt(0.2), std::sqrt(0.3), std::sqrt(0.5)});
  const MeasurementAssemblage m = random_measurement(3, 2, rng);
  CHECK(assemblage_distance(assemblage_from_pure(chi, m), steer(chi.density(), m)) < 1e-13);
}

TEST_CASE("inefficiency appends a no-click outcome") {
  const MeasurementAssemblage m = mub_pair(2);
  const MeasurementAssemblage e = apply_inefficiency(m, 0.7);
  CHECK(e.n_a() == 3);
  CHECK(validate_measurement(e).ok());
  CHECK(max_abs_diff(e.at(1, 0), 0.7 * m.at(1, 0)) < 1e-15);
  CHECK(max_abs_diff(e.at(0, 2), 0.3 * identity(2)) < 1e-15);
  CHECK_THROWS_AS(apply_inefficiency(m, 1.2), DomainError);
  CHECK_THROWS_AS(apply_inefficiency(m, -0.1), DomainError);
}

TEST_CASE("mix and distance") {
  Rng rng = make_rng(5);
  const BipartiteState rho = random_state(2, 2, rng);
  const StateAssemblage s1 = steer(rho, random_measurement(2, 2, rng));
  const StateAssemblage s2 = steer(rho, random_measurement(2, 2, rng));
  const StateAssemblage m = mix(0.25, s1, s2);
  CHECK(max_abs_diff(m.at(1, 1), 0.25 * s1.at(1, 1) + 0.75 * s2.at(1, 1)) < 1e-15);
  CHECK(assemblage_distance(mix(1.0, s1, s2), s1) < 1e-15);
  CHECK_THROWS_AS(mix(1.5, s1, s2), DomainError);
}
