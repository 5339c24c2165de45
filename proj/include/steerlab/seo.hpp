#pragma once

// Steering-equivalent observables (SEO) and the constructive
// equivalences around them:
//
//   * seo_of:           B_{a|x} = rho_B^{-1/2} sigma_{a|x} rho_B^{-1/2}
//                       (compressed to the support of rho_B when singular)
//   * pairwise_commutativity: all-pairs commutator test; on an SEO this is
//                       the semi-device-independent steering decision
//   * incoherent_decomposition: common eigenbasis of a commuting family
//   * lhs_from_commuting_seo: hidden states rho_B^{1/2}|l><l|rho_B^{1/2}
//                       from the common SEO eigenbasis
//   * cq_from_lhs:      classical-quantum state reproducing an LHS model

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

/// Commutator-norm threshold for the commuting verdict (trace-norm scale).
inline constexpr double kCommutativityTol = 1e-8;

/// Retries of the random linear-combination eigenbasis search.
inline constexpr int kEigenbasisRetryCap = 16;

struct Seo {
  /// Support dimension of rho_B; the SEO lives on this space.
  std::size_t dim = 0;
  /// B_{a|x} in support coordinates, indexed [x][a].
  OperatorFamily elements;
  /// Columns span the support inside Bob's space (identity when full rank).
  ComplexMatrix isometry;
  bool source_rank_deficient = false;
  /// rho_B compressed to the support.
  ComplexMatrix reduced;

  std::size_t n_x() const noexcept { return elements.size(); }
  std::size_t n_a() const noexcept { return elements.front().size(); }
  const ComplexMatrix& at(std::size_t x, std::size_t a) const { return elements.at(x).at(a); }
};

/// Throws ZeroOperatorError when rho_B vanishes.
Seo seo_of(const StateAssemblage& s, double tol = kZeroThreshold);

struct ElementIndex {
  std::size_t x = 0;
  std::size_t a = 0;
};

struct CommutativityVerdict {
  bool commuting = true;
  double max_norm = 0.0;
  /// Pair attaining max_norm (meaningful when the family has >= 2 elements).
  ElementIndex first;
  ElementIndex second;
};

/// max over all element pairs, within and across settings, of
/// ||[E_i, E_j]||_p; commuting iff that maximum is <= tol.
CommutativityVerdict pairwise_commutativity(const OperatorFamily& elements, double p = 1.0,
                                            double tol = kCommutativityTol);

struct CommonBasis {
  /// Orthonormal columns |i>.
  ComplexMatrix basis;
  /// alpha_{i|(a,x)} = <i|E_{a|x}|i>, indexed [x][a](i).
  std::vector<std::vector<RealVector>> coefficients;
  /// max |E_{a|x} - sum_i alpha |i><i||.
  double residual = 0.0;
  int attempts = 0;
};

struct Refusal {
  double max_commutator_norm = 0.0;
};

using IncoherentResult = std::variant<CommonBasis, Refusal>;

/// Common eigenbasis of a commuting family, or a refusal with the
/// commutator witness. Throws DegeneracyError after kEigenbasisRetryCap
/// failed random combinations.
IncoherentResult incoherent_decomposition(const OperatorFamily& elements, double tol = kCommutativityTol,
                                          std::uint64_t seed = 0);

/// Dimensionally restricted local-hidden-state model.
struct LhsModel {
  std::size_t d_lambda() const noexcept { return weights.size(); }
  std::size_t dim() const noexcept { return states.empty() ? 0 : static_cast<std::size_t>(states.front().rows()); }
  std::size_t n_x() const noexcept { return response.empty() ? 0 : response.front().size(); }
  std::size_t n_a() const noexcept { return response.empty() ? 0 : response.front().front().size(); }

  std::vector<double> weights;        // p(lambda)
  std::vector<ComplexMatrix> states;  // rho_lambda, unit trace
  /// p(a|x,lambda), indexed [lambda][x][a].
  std::vector<std::vector<std::vector<double>>> response;
  std::vector<std::string> warnings;
};

ValidationReport validate_lhs(const LhsModel& l, double tol = kValidationTol);

/// sigma_{a|x} = sum_l p(l) p(a|x,l) rho_l.
StateAssemblage lhs_assemblage(const LhsModel& l);

/// Throws PreconditionError (carrying the commutator norm) when the SEO
/// of `s` does not commute.
LhsModel lhs_from_commuting_seo(const StateAssemblage& s, double tol = kCommutativityTol);

struct CqState {
  std::vector<double> weights;
  std::vector<ComplexMatrix> conditional_states;
  /// sum_i p_i |i><i| (x) rho_B^(i), on C^{d_lambda} (x) C^{dB}.
  BipartiteState rho_cq;
  /// M_{a|x} = sum_l p(a|x,l)|l><l| on C^{d_lambda}.
  MeasurementAssemblage measurements;
};

CqState cq_from_lhs(const LhsModel& l);

}  // namespace steerlab
