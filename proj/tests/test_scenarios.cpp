#include "doctest.h"
#include "steerlab/error.hpp"
#include "steerlab/random.hpp"
#include "steerlab/scenarios.hpp"
#include "steerlab/seo.hpp"

using namespace steerlab;

TEST_CASE("isotropic family domain") {
  for (std::size_t d : {2, 3, 4}) {
    const double lo = -1.0 / (double(d * d) - 1.0);
    CHECK(validate_state(isotropic(d, lo)).ok());
    CHECK(validate_state(isotropic(d, 1.0)).ok());
    CHECK(validate_state(isotropic(d, 0.3)).ok());
    CHECK_THROWS_AS(isotropic(d, lo - 0.01), DomainError);
  }
  CHECK_THROWS_AS(isotropic(2, 2.0), DomainError);
  CHECK(std::abs(eigh(isotropic(2, -1.0 / 3.0).rho()).values.minCoeff()) < 1e-12);
  CHECK(isotropic_separability_bound(2) == doctest::Approx(1.0 / 3.0));
  // alpha = 0 is the maximally mixed state
  CHECK(max_abs_diff(isotropic(3, 0.0).rho(), identity(9) / 9.0) < 1e-15);
}

TEST_CASE("Fourier basis is unbiased with respect to the computational basis") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const ComplexMatrix f = fourier_matrix(d);
    CHECK(max_abs_diff(f.adjoint() * f, identity(d)) < 1e-13);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) CHECK(std::norm(f(i, j)) == doctest::Approx(1.0 / double(d)));
    const MeasurementAssemblage m = mub_pair(d);
    CHECK(validate_measurement(m).ok());
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        CHECK((m.at(0, a) * m.at(1, b)).trace().real() == doctest::Approx(1.0 / double(d)));
  }
}

TEST_CASE("qubit Bloch measurements") {
  const auto e = qubit_povm_from_bloch(BlochVector(0.0, 0.6, 0.8), 0.5);
  CHECK(max_abs_diff(e[0] + e[1], identity(2)) < 1e-15);
  CHECK(bloch_vector(e[0]).norm() == doctest::Approx(0.5));
  CHECK_THROWS_AS(qubit_povm_from_bloch(BlochVector(1.0, 1.0, 0.0)), ValidationError);
  CHECK(validate_measurement(qubit_pair_from_bloch(BlochVector(0, 0, 1), BlochVector(1, 0, 0))).ok());
}

TEST_CASE("random instances are valid and reproducible") {
  Rng a = make_rng(99);
  Rng b = make_rng(99);
  const BipartiteState r1 = random_state(2, 3, a);
  const BipartiteState r2 = random_state(2, 3, b);
  CHECK(max_abs_diff(r1.rho(), r2.rho()) == 0.0);
  CHECK(validate_state(r1).ok());
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(validate_measurement(random_measurement(3, 2, a)).ok());
    CHECK(validate_measurement(random_measurement(2, 3, a, 4)).ok());
  }
}

TEST_CASE("incoherent measurements commute within and across settings") {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const MeasurementAssemblage m = random_incoherent_measurement(3, 3, 2, rng);
    CHECK(validate_measurement(m).ok());
    CHECK(pairwise_commutativity(m.elements()).commuting);
  }
  const MeasurementAssemblage c = random_incoherent_measurement(2, 2, 2, rng, true);
  CHECK(std::abs(c.at(0, 0)(0, 1)) < 1e-15);
}

TEST_CASE("named scenarios") {
  ScenarioSpec spec;
  spec.family = "pure";
  spec.schmidt = {0.6, 0.8};
  Scenario s = build_scenario(spec);
  CHECK(s.state.dA() == 2);
  spec.family = "product";
  spec.d = 3;
  s = build_scenario(spec);
  CHECK(pairwise_commutativity(seo_of(steer(s.state, s.measurements)).elements).commuting);
  spec.family = "bogus";
  CHECK_THROWS_AS(build_scenario(spec), DomainError);
  spec.family = "isotropic";
  spec.d = 2;
  spec.measurement = MeasurementKind::Bloch;
  CHECK_THROWS_AS(build_scenario(spec), DomainError);
  spec.bloch = {BlochVector(0, 0, 1), BlochVector(1, 0, 0)};
  spec.eta = 0.5;
  s = build_scenario(spec);
  CHECK(s.measurements.n_a() == 3);
}
