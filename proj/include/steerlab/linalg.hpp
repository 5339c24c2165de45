#pragma once

// Dense complex linear algebra used by every other module.
//
// Index convention for bipartite operators is first-factor-major: the basis
// vector |i>|j> of C^dA (x) C^dB sits at position i*dB + j. tensor() and
// the partial traces below all follow it.

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace steerlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative eigenvalue threshold: eigenvalues <= kZeroThreshold * lambda_max
/// are treated as zero.
inline constexpr double kZeroThreshold = 1e-9;

/// Schatten order used for p = infinity.
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

ComplexMatrix identity(std::size_t dim);
ComplexMatrix dagger(const ComplexMatrix& a);

/// Pauli matrices; index 0,1,2 = x,y,z.
ComplexMatrix pauli(int axis);

bool is_square(const ComplexMatrix& a) noexcept;
bool is_hermitian(const ComplexMatrix& a, double tol);
/// Hermitian within tol and smallest eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& a, double tol);
Complex trace(const ComplexMatrix& a);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermitianEigen eigh(const ComplexMatrix& a);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t dA, std::size_t dB);
ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dA, std::size_t dB);

/// PSD square root. Eigenvalues in [-tol, 0] are clamped to zero.
/// Throws NegativityError below that.
ComplexMatrix herm_sqrt(const ComplexMatrix& a, double tol = kZeroThreshold);

/// Inverse square root restricted to the support of a PSD operator.
///
/// When `a` is full rank, `isometry` is the identity and `inv_sqrt` is
/// a^{-1/2} in the original basis. Otherwise `isometry` holds the support
/// eigenvectors as columns (dim x support_dim) and `inv_sqrt` is the
/// support_dim x support_dim diagonal matrix of inverse root eigenvalues.
/// In both cases the compressed operator of X is isometry^dag X isometry and
/// inv_sqrt * compressed(a) * inv_sqrt = identity on the support.
struct SupportRoot {
  ComplexMatrix inv_sqrt;
  std::size_t support_dim = 0;
  ComplexMatrix isometry;
  bool full_rank = true;

  ComplexMatrix compress(const ComplexMatrix& x) const;
};
SupportRoot pinv_sqrt(const ComplexMatrix& a, double tol = kZeroThreshold);

/// Singular values, descending. Uses the Hermitian eigensolver for Hermitian
/// or anti-Hermitian input and a general SVD otherwise.
RealVector singular_values(const ComplexMatrix& a);

/// Schatten p-norm for p >= 1; pass kInfNorm for the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace steerlab
