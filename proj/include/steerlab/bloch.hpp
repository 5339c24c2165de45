#pragma once

#include <array>

#include "steerlab/linalg.hpp"

namespace steerlab {

/// Real 3-vector in the Pauli basis.
struct BlochVector {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  BlochVector() = default;
  BlochVector(double x, double y, double z) : v{x, y, z} {}

  double operator[](std::size_t i) const { return v[i]; }
  double norm() const;
  double dot(const BlochVector& o) const;
  BlochVector cross(const BlochVector& o) const;
  BlochVector scaled(double s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
  /// Angle in [0, pi]; zero when either vector vanishes.
  double angle(const BlochVector& o) const;

  /// t . sigma
  ComplexMatrix pauli_operator() const;
};

/// Components Tr(E sigma_i) of a qubit operator, so that
/// E = (Tr(E) 1 + r . sigma) / 2 for Hermitian E.
BlochVector bloch_vector(const ComplexMatrix& e);

}  // namespace steerlab
