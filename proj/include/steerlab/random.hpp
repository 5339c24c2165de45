#pragma once

// Seeded samplers shared by the scenario generators, the free-operation
// sampler and the test batteries. Every sampler takes the engine by
// reference; deterministic sub-streams are derived with derive_seed().

#include <cstdint>
#include <random>
#include <vector>

#include "steerlab/linalg.hpp"

namespace steerlab {

using Rng = std::mt19937_64;

/// Seed for sub-stream `index` of `stream` under a base seed. Results do not
/// depend on the order in which sub-streams are consumed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Engine seeded through derive_seed.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

/// i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);

/// Haar-random isometry C^in -> C^out (out >= in).
ComplexMatrix haar_isometry(std::size_t in, std::size_t out, Rng& rng);

/// Uniform unit vector in C^dim.
ComplexVector haar_ket(std::size_t dim, Rng& rng);

/// Dirichlet(alpha, ..., alpha) sample of length k.
std::vector<double> dirichlet(std::size_t k, double alpha, Rng& rng);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace steerlab
