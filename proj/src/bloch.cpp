#include "steerlab/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "steerlab/error.hpp"

namespace steerlab {

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

double BlochVector::dot(const BlochVector& o) const { return v[0] * o.v[0] + v[1] * o.v[1] + v[2] * o.v[2]; }

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {v[1] * o.v[2] - v[2] * o.v[1], v[2] * o.v[0] - v[0] * o.v[2], v[0] * o.v[1] - v[1] * o.v[0]};
}

double BlochVector::angle(const BlochVector& o) const {
  const double n = norm() * o.norm();
  if (n == 0.0) return 0.0;
  // atan2 keeps precision near 0 and pi where acos does not
  return std::atan2(cross(o).norm(), dot(o));
}

ComplexMatrix BlochVector::pauli_operator() const {
  return v[0] * pauli(0) + v[1] * pauli(1) + v[2] * pauli(2);
}

BlochVector bloch_vector(const ComplexMatrix& e) {
  if (e.rows() != 2 || e.cols() != 2) throw DimensionError("bloch_vector: qubit operator required");
  return {(e * pauli(0)).trace().real(), (e * pauli(1)).trace().real(), (e * pauli(2)).trace().real()};
}

}  // namespace steerlab
