#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steerlab/linalg.hpp"

namespace steerlab {

/// Default tolerance for invariant checks on assemblages and POVMs.
inline constexpr double kValidationTol = 1e-8;

/// Operators indexed setting-major: family[x][a].
using OperatorFamily = std::vector<std::vector<ComplexMatrix>>;

/// Checks that `family` is rectangular, non-empty and made of dim x dim
/// matrices; throws DimensionError otherwise.
void check_family_shape(const OperatorFamily& family, std::size_t dim, const char* what);

struct Violation {
  std::string kind;  // "hermiticity", "positivity", "upper-bound", "completeness", ...
  int x = -1;        // -1 when not tied to a setting
  int a = -1;        // -1 when not tied to an outcome
  double magnitude = 0.0;
};

/// Result of a validation pass. Empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  /// Largest violation, or nullptr.
  const Violation* worst() const noexcept;
  std::string summary() const;
};

/// Family {M_{a|x}} of POVMs on C^d.
class MeasurementAssemblage {
 public:
  MeasurementAssemblage(std::size_t dim, OperatorFamily elements);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t n_x() const noexcept { return elements_.size(); }
  std::size_t n_a() const noexcept { return elements_.front().size(); }
  const ComplexMatrix& at(std::size_t x, std::size_t a) const { return elements_.at(x).at(a); }
  const OperatorFamily& elements() const noexcept { return elements_; }

 private:
  std::size_t dim_;
  OperatorFamily elements_;
};

class BipartiteState {
 public:
  BipartiteState(std::size_t dA, std::size_t dB, ComplexMatrix rho);

  std::size_t dA() const noexcept { return dA_; }
  std::size_t dB() const noexcept { return dB_; }
  const ComplexMatrix& rho() const noexcept { return rho_; }

  ComplexMatrix reduced_a() const { return partial_trace_second(rho_, dA_, dB_); }
  ComplexMatrix reduced_b() const { return partial_trace_first(rho_, dA_, dB_); }

 private:
  std::size_t dA_;
  std::size_t dB_;
  ComplexMatrix rho_;
};

/// Unnormalized conditional states sigma_{a|x} on Bob's side.
class StateAssemblage {
 public:
  StateAssemblage(std::size_t dim, OperatorFamily elements);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t n_x() const noexcept { return elements_.size(); }
  std::size_t n_a() const noexcept { return elements_.front().size(); }
  const ComplexMatrix& at(std::size_t x, std::size_t a) const { return elements_.at(x).at(a); }
  const OperatorFamily& elements() const noexcept { return elements_; }

  /// rho_B computed from setting x = 0.
  const ComplexMatrix& reduced() const noexcept { return reduced_; }
  /// max_x max_ij |sum_a sigma_{a|x} - rho_B|.
  double no_signaling_residual() const;
  /// p(a|x) = Tr sigma_{a|x} (real part).
  double probability(std::size_t x, std::size_t a) const;

 private:
  std::size_t dim_;
  OperatorFamily elements_;
  ComplexMatrix reduced_;
};

/// |phi> = sum_i lambda_i |ii>.
class PureEntangledState {
 public:
  explicit PureEntangledState(std::vector<double> schmidt, double tol = kValidationTol);

  std::size_t dim() const noexcept { return schmidt_.size(); }
  const std::vector<double>& schmidt() const noexcept { return schmidt_; }
  /// Number of coefficients above tol.
  std::size_t schmidt_number(double tol = kValidationTol) const;
  bool entangled(double tol = kValidationTol) const { return schmidt_number(tol) >= 2; }

  ComplexVector ket() const;
  BipartiteState density() const;

 private:
  std::vector<double> schmidt_;
};

ValidationReport validate_measurement(const MeasurementAssemblage& m, double tol = kValidationTol);
ValidationReport validate_state(const BipartiteState& s, double tol = kValidationTol);
ValidationReport validate_state_assemblage(const StateAssemblage& s, double tol = kValidationTol);

/// sigma_{a|x} = Tr_A((M_{a|x} (x) 1) rho_AB).
StateAssemblage steer(const BipartiteState& state, const MeasurementAssemblage& m);

/// sigma_{a|x} = rho_B^{1/2} M_{a|x}^T rho_B^{1/2} with rho_B = diag(lambda_i^2).
/// The transpose is taken in the computational (Schmidt) basis.
StateAssemblage assemblage_from_pure(const PureEntangledState& psi, const MeasurementAssemblage& m);

/// Appends a no-click outcome: eta*M_{a|x} for clicks, (1-eta)*1 for the last outcome.
MeasurementAssemblage apply_inefficiency(const MeasurementAssemblage& m, double eta);

/// Element-wise p*s1 + (1-p)*s2.
StateAssemblage mix(double p, const StateAssemblage& s1, const StateAssemblage& s2);

/// Largest element-wise deviation between two assemblages of equal shape.
double assemblage_distance(const StateAssemblage& s1, const StateAssemblage& s2);

}  // namespace steerlab
