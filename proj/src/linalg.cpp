#include "steerlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "steerlab/error.hpp"

namespace steerlab {

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (!is_square(a)) {
    std::ostringstream msg;
    msg << op << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

// Hermiticity tolerance used by the decompositions: absolute, but scaled up
// for large-norm inputs so that rounding in big entries is not flagged.
double hermitian_slack(const ComplexMatrix& a, double tol) {
  return std::max(tol, 1e-12) * std::max(1.0, a.cwiseAbs().maxCoeff());
}

}  // namespace

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix pauli(int axis) {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  switch (axis) {
    case 0:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 1:
      s(0, 1) = Complex(0, -1);
      s(1, 0) = Complex(0, 1);
      break;
    case 2:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw ParameterError("pauli: axis must be 0, 1 or 2");
  }
  return s;
}

bool is_square(const ComplexMatrix& a) noexcept { return a.rows() == a.cols() && a.rows() > 0; }

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!is_square(a)) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  return eigh(a).values.minCoeff() >= -tol;
}

Complex trace(const ComplexMatrix& a) { return a.trace(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

HermitianEigen eigh(const ComplexMatrix& a) {
  require_square(a, "eigh");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t dA, std::size_t dB) {
  const auto a = static_cast<Eigen::Index>(dA);
  const auto b = static_cast<Eigen::Index>(dB);
  if (!is_square(m) || m.rows() != a * b) {
    std::ostringstream msg;
    msg << "partial_trace_first: matrix of size " << m.rows() << "x" << m.cols()
        << " does not match dA*dB = " << dA * dB;
    throw DimensionError(msg.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(b, b);
  for (Eigen::Index k = 0; k < a; ++k) out += m.block(k * b, k * b, b, b);
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dA, std::size_t dB) {
  const auto a = static_cast<Eigen::Index>(dA);
  const auto b = static_cast<Eigen::Index>(dB);
  if (!is_square(m) || m.rows() != a * b) {
    throw DimensionError("partial_trace_second: matrix size does not match dA*dB");
  }
  ComplexMatrix out(a, a);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) out(i, j) = m.block(i * b, j * b, b, b).trace();
  }
  return out;
}

ComplexMatrix herm_sqrt(const ComplexMatrix& a, double tol) {
  require_square(a, "herm_sqrt");
  if (!is_hermitian(a, hermitian_slack(a, tol))) {
    throw ParameterError("herm_sqrt: input is not Hermitian");
  }
  const auto eig = eigh(a);
  const double lo = eig.values.minCoeff();
  if (lo < -tol) {
    std::ostringstream msg;
    msg << "herm_sqrt: eigenvalue " << lo << " below -tol";
    throw NegativityError(msg.str(), lo);
  }
  RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix SupportRoot::compress(const ComplexMatrix& x) const {
  if (full_rank) return x;
  return isometry.adjoint() * x * isometry;
}

SupportRoot pinv_sqrt(const ComplexMatrix& a, double tol) {
  require_square(a, "pinv_sqrt");
  if (!is_hermitian(a, hermitian_slack(a, tol))) {
    throw ParameterError("pinv_sqrt: input is not Hermitian");
  }
  const auto eig = eigh(a);
  const double top = eig.values.maxCoeff();
  if (!(top > 0.0)) throw ZeroOperatorError("pinv_sqrt: operator has no positive eigenvalue");
  const double cut = tol * top;

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cut) support.push_back(i);
  }
  if (support.empty()) throw ZeroOperatorError("pinv_sqrt: all eigenvalues below threshold");

  SupportRoot out;
  out.support_dim = support.size();
  out.full_rank = static_cast<Eigen::Index>(support.size()) == a.rows();
  if (out.full_rank) {
    RealVector inv = eig.values.cwiseSqrt().cwiseInverse();
    out.inv_sqrt = eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
    out.isometry = identity(static_cast<std::size_t>(a.rows()));
    return out;
  }
  const auto k = static_cast<Eigen::Index>(support.size());
  out.isometry.resize(a.rows(), k);
  out.inv_sqrt = ComplexMatrix::Zero(k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    out.isometry.col(c) = eig.vectors.col(support[static_cast<std::size_t>(c)]);
    out.inv_sqrt(c, c) = 1.0 / std::sqrt(eig.values(support[static_cast<std::size_t>(c)]));
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (is_square(a)) {
    const double slack = 1e-13 * scale;
    const double herm = (a - a.adjoint()).cwiseAbs().maxCoeff();
    const double anti = (a + a.adjoint()).cwiseAbs().maxCoeff();
    ComplexMatrix h;
    if (std::min(herm, anti) <= slack) {
      h = herm <= anti ? a : ComplexMatrix(Complex(0, 1) * a);  // i*A is Hermitian, same singular values
    }
    if (h.size() != 0) {
      RealVector s = eigh(h).values.cwiseAbs();
      std::sort(s.data(), s.data() + s.size(), std::greater<>());
      return s;
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) throw ParameterError("schatten_norm: p must be >= 1 or infinity");
  const RealVector s = singular_values(a);
  if (s.size() == 0) return 0.0;
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 1.0) return s.sum();
  const double top = s.maxCoeff();
  if (top == 0.0) return 0.0;
  // Scale to avoid overflow in s^p for large p.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !is_square(a)) {
    throw DimensionError("commutator: operands must be square with equal dimensions");
  }
  return a * b - b * a;
}

}  // namespace steerlab
