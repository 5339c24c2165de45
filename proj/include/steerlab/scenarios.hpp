#pragma once

// Canonical states and measurements: isotropic states, the
// computational/Fourier MUB pair, pure entangled states, Bloch-parametrized
// qubit POVMs, and seeded random instances.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/bloch.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

/// alpha |phi+><phi+| + (1 - alpha) 1/d^2, alpha in [-1/(d^2-1), 1].
BipartiteState isotropic(std::size_t d, double alpha);

/// alpha at which the isotropic state stops being entangled (metadata only).
double isotropic_separability_bound(std::size_t d);

/// F_{jk} = exp(2 pi i jk/d)/sqrt(d).
ComplexMatrix fourier_matrix(std::size_t d);

/// Setting 0: computational projectors. Setting 1: F|a><a|F^dag.
MeasurementAssemblage mub_pair(std::size_t d);

BipartiteState pure_entangled(const std::vector<double>& schmidt);
BipartiteState maximally_entangled(std::size_t d);

/// Dichotomic qubit POVM {(1 + s t.sigma)/2, (1 - s t.sigma)/2}.
std::vector<ComplexMatrix> qubit_povm_from_bloch(const BlochVector& t, double sharpness = 1.0);

/// Two-setting qubit assemblage from two Bloch directions.
MeasurementAssemblage qubit_pair_from_bloch(const BlochVector& t0, const BlochVector& t1, double sharpness = 1.0);

// -- random instances --------------------------------------------------------

/// Mixed state from a Haar-random pure state on A x B x E, E traced out.
/// env_dim = 0 picks dA*dB (full-rank generic state).
BipartiteState random_state(std::size_t dA, std::size_t dB, Rng& rng, std::size_t env_dim = 0);

/// Haar-random density matrix of a single system (same construction).
ComplexMatrix random_density(std::size_t d, Rng& rng, std::size_t env_dim = 0);

/// Random POVMs: Wishart positive operators normalized by S^{-1/2} . S^{-1/2}.
/// n_a = 0 means d outcomes.
MeasurementAssemblage random_measurement(std::size_t d, std::size_t n_x, Rng& rng, std::size_t n_a = 0);

/// POVMs diagonal in a single (random, unless computational) basis.
MeasurementAssemblage random_incoherent_measurement(std::size_t d, std::size_t n_x, std::size_t n_a, Rng& rng,
                                                    bool computational_basis = false);

/// steer(random_state, random_measurement).
StateAssemblage random_state_assemblage(std::size_t dA, std::size_t dB, std::size_t n_x, std::size_t n_a, Rng& rng);

// -- named scenarios (shared with the command line) --------------------------

enum class MeasurementKind { Mub, Random, Bloch };

/// Parameters of a named scenario family ("isotropic", "pure", "product",
/// "random").
struct ScenarioSpec {
  std::string family = "isotropic";
  std::size_t d = 2;
  double alpha = 1.0;
  std::vector<double> schmidt;
  MeasurementKind measurement = MeasurementKind::Mub;
  std::vector<BlochVector> bloch;  // two vectors, for MeasurementKind::Bloch
  double sharpness = 1.0;
  std::optional<double> eta;
  std::uint64_t seed = 0;
};

struct Scenario {
  BipartiteState state;
  MeasurementAssemblage measurements;
};

/// Throws DomainError for parameters outside the family's domain.
Scenario build_scenario(const ScenarioSpec& spec);

}  // namespace steerlab
