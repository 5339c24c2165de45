#pragma once

// Free operations of semi-device-independent steering (private randomness
// mu, one channel on Bob), the shared-randomness LOSR transformations they
// exclude, and the monotonicity harness for S_Upsilon.

#include <cstdint>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/seo.hpp"

namespace steerlab {

/// CPTP map on C^d given by Kraus operators.
struct Channel {
  std::vector<ComplexMatrix> kraus;

  static Channel identity_channel(std::size_t d);
  static Channel unitary(const ComplexMatrix& u);

  std::size_t dim() const { return static_cast<std::size_t>(kraus.front().cols()); }
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// max |sum_k K_k^dag K_k - 1|.
  double completeness_residual() const;
};

/// Classical pre/post-processing under one randomness label.
///   output[x'][a][a'] = p(a'|a,x',mu)
///   input[x'][x]      = p(x|x',mu)
struct ClassicalKernel {
  std::vector<std::vector<std::vector<double>>> output;
  std::vector<std::vector<double>> input;

  static ClassicalKernel identity(std::size_t n_x, std::size_t n_a);
};

/// sigma'_{a'|x'} = sum_{mu,a,x} p(mu) p(a'|a,x',mu) p(x|x',mu) E(sigma_{a|x}).
struct FreeOperation {
  std::vector<double> weights;  // p(mu)
  std::vector<ClassicalKernel> kernels;
  Channel channel;

  std::size_t n_x_in() const;
  std::size_t n_a_in() const;
  std::size_t n_x_out() const;
  std::size_t n_a_out() const;
};

/// Same shape, but the shared label lambda' drives the kernels and selects
/// the channel E_{lambda'}.
struct LosrOperation {
  std::vector<double> weights;  // p(lambda')
  std::vector<ClassicalKernel> kernels;
  std::vector<Channel> channels;
};

/// Throws InvalidOperationError on stochasticity or Kraus violations.
void validate_operation(const FreeOperation& f, double tol = kValidationTol);
void validate_operation(const LosrOperation& l, double tol = kValidationTol);

StateAssemblage apply_free(const FreeOperation& f, const StateAssemblage& s);
StateAssemblage apply_losr(const LosrOperation& l, const StateAssemblage& s);

/// The degenerate LOSR with all channels equal to f.channel.
LosrOperation as_losr(const FreeOperation& f);

struct FreeOpShape {
  std::size_t dim = 2;
  std::size_t n_x_in = 2;
  std::size_t n_a_in = 2;
  std::size_t n_x_out = 2;
  std::size_t n_a_out = 2;
  std::size_t n_mu = 2;
  /// Dilation environment dimension; 0 draws one uniformly from [1, d^2].
  std::size_t env_dim = 0;
};

/// Reproducible random operation: Dirichlet kernels, Kraus channel from a
/// Haar isometry C^d -> C^d (x) C^env.
FreeOperation sample_free(const FreeOpShape& shape, std::uint64_t seed);

/// Random channel of the given environment dimension (1 = unitary).
Channel random_channel(std::size_t d, std::size_t env_dim, std::uint64_t seed);

enum class FreeOpClass {
  UnitaryIdentityKernels,  // unitary channel, identity kernels
  IdentityChannel,         // identity channel, random kernels
  General,                 // random channel, random kernels
};

struct MonotonicityViolation {
  std::size_t index = 0;
  double margin = 0.0;
  FreeOperation operation;
};

struct MonotonicityReport {
  FreeOpClass op_class = FreeOpClass::General;
  std::size_t samples = 0;
  double input_steerability = 0.0;
  double max_margin = 0.0;
  double mean_margin = 0.0;
  /// Samples whose margin exceeds 1e-7, ordered by index.
  std::vector<MonotonicityViolation> violations;
};

/// margin_k = max(0, S(F_k[s]) - S(s)) over n sampled free operations of
/// the requested class. Sample k only depends on (seed, k).
MonotonicityReport monotonicity_report(const StateAssemblage& s, std::size_t n, std::uint64_t seed,
                                       FreeOpClass op_class = FreeOpClass::General, double p = 1.0);

struct LosrWitness {
  bool found = false;
  LosrOperation operation;
  double input_steerability = 0.0;
  double output_steerability = 0.0;
  std::size_t tried = 0;
};

/// Searches two-label LOSR operations with unitary channels for one that
/// maps `s` (commuting SEO expected) to an output with S > threshold.
LosrWitness find_losr_witness(const StateAssemblage& s, std::size_t attempts, std::uint64_t seed,
                              double threshold = 1e-3);

}  // namespace steerlab
