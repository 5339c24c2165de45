#pragma once

// Reference computations used to cross-check the library. They deliberately
// avoid the library's own linear algebra: explicit index loops, closed forms
// for 2x2 matrices, the Bloch-sphere formula.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Tr_A of an operator on C^dA (x) C^dB.
inline Mat trace_a(const Mat& m, int dA, int dB) {
  Mat out = Mat::Zero(dB, dB);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dB; ++k)
      for (int l = 0; l < dB; ++l) out(k, l) += m(i * dB + k, i * dB + l);
  return out;
}

inline Mat trace_b(const Mat& m, int dA, int dB) {
  Mat out = Mat::Zero(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int k = 0; k < dB; ++k) out(i, j) += m(i * dB + k, j * dB + k);
  return out;
}

// sigma = Tr_A[(M (x) 1) rho].
inline Mat steer_element(const Mat& rho, const Mat& m, int dA, int dB) {
  return trace_a(kron(m, Mat::Identity(dB, dB)) * rho, dA, dB);
}

// Singular values of a 2x2 complex matrix from |det| and the Frobenius norm.
inline std::array<long double, 2> singular_values_2x2(const Mat& a) {
  const long double f = std::norm(a(0, 0)) + std::norm(a(0, 1)) + std::norm(a(1, 0)) + std::norm(a(1, 1));
  const std::complex<long double> det =
      std::complex<long double>(a(0, 0)) * std::complex<long double>(a(1, 1)) -
      std::complex<long double>(a(0, 1)) * std::complex<long double>(a(1, 0));
  const long double d2 = std::norm(det);
  const long double disc = std::sqrt(std::max<long double>(0.0L, f * f - 4.0L * d2));
  const long double s1 = std::sqrt(std::max<long double>(0.0L, (f + disc) / 2.0L));
  const long double s2 = std::sqrt(std::max<long double>(0.0L, (f - disc) / 2.0L));
  return {s1, s2};
}

inline double schatten_2x2(const Mat& a, double p) {
  const auto s = singular_values_2x2(a);
  if (std::isinf(p)) return static_cast<double>(s[0]);
  return static_cast<double>(std::pow(std::pow(s[0], (long double)p) + std::pow(s[1], (long double)p), 1.0L / p));
}

inline Mat pauli(int k) {
  Mat m(2, 2);
  switch (k) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline std::array<double, 3> bloch(const Mat& e) {
  std::array<double, 3> v{};
  for (int k = 0; k < 3; ++k) v[k] = (e * pauli(k)).trace().real();
  return v;
}

// |r| |v| sin(theta) = |r x v|.
inline double bloch_area(const std::array<double, 3>& r, const std::array<double, 3>& v) {
  const double cx = r[1] * v[2] - r[2] * v[1];
  const double cy = r[2] * v[0] - r[0] * v[2];
  const double cz = r[0] * v[1] - r[1] * v[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

inline double guessing_closed_form(double s) { return (1.0 + std::sqrt(1.0 - s * s)) / 2.0; }
inline double hmin_closed_form(double s) { return -std::log2(guessing_closed_form(s)); }

// Upsilon_1 over the cross-setting pairs of a two-setting qubit family.
inline double upsilon1_2x2(const std::vector<std::vector<Mat>>& f) {
  double acc = 0.0;
  for (const auto& a : f[0])
    for (const auto& b : f[1]) acc += schatten_2x2(a * b - b * a, 1.0);
  return acc;
}

}  // namespace oracle
