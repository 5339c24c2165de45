#pragma once

#include <cstdint>
#include <optional>

#include "steerlab/assemblage.hpp"
#include "steerlab/bloch.hpp"
#include "steerlab/seo.hpp"

namespace steerlab {

/// sum_{a,a'} ||[E_{a|0}, E_{a'|1}]||_p over cross-setting pairs.
/// Throws UnsupportedScenarioError unless there are exactly two settings.
double upsilon(const OperatorFamily& elements, double p = 1.0);

/// 2^{1/p} d sqrt(d-1), the maximum of upsilon on C^d.
double upsilon_bound(std::size_t d, double p);

/// Upsilon_p of the SEO divided by upsilon_bound(support dim, p). Returns 0
/// for a one-dimensional support.
double sdi_steerability(const Seo& seo, double p = 1.0);
double sdi_steerability(const StateAssemblage& s, double p = 1.0, double tol = kZeroThreshold);

/// |r||v| sin(angle(r, v)).
double bloch_steerability(const BlochVector& r, const BlochVector& v);

/// Upsilon_1(M) / 4, an upper bound on the steerability of every
/// assemblage Alice can produce with M.
double measurement_upper_bound(const MeasurementAssemblage& m);

struct GuessingBound {
  double p_g = 1.0;
  double h_min = 0.0;  // bits
};

/// S within this distance of 1 is taken as 1 by guessing_bound.
inline constexpr double kUnitSnap = 1e-12;

/// p_g <= (1 + sqrt(1 - S^2)) / 2. S is clamped into [0, 1] when it lies
/// within `tol` of the interval; otherwise DomainError.
GuessingBound guessing_bound(double s, double tol = 1e-9);

struct RandomnessReport {
  std::size_t x = 0;
  double steerability = 0.0;
  double p_g = 1.0;
  double h_min = 0.0;
  std::optional<double> eta;
};

RandomnessReport randomness_report(const StateAssemblage& s, std::size_t x, double p = 1.0,
                                   std::optional<double> eta = std::nullopt);

struct GuessingOracleResult {
  /// Best sum_mu q_mu max_a p(a|x,mu) found.
  double best = 0.0;
  /// max_a p(a|x) (the undecomposed measurement).
  double trivial = 0.0;
  std::size_t samples = 0;
};

/// Randomized search over decompositions M_{a|x} = sum_mu q_mu M^(mu)_{a|x}
/// into sharper qubit effects. Qubit, dichotomic only.
GuessingOracleResult guessing_oracle(const MeasurementAssemblage& m, const BipartiteState& state, std::size_t x,
                                     std::size_t samples, std::uint64_t seed = 0);

}  // namespace steerlab
