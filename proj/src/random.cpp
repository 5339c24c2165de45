#include "steerlab/random.hpp"

#include <cmath>

#include "steerlab/error.hpp"

namespace steerlab {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(derive_seed(seed, stream, index));
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

ComplexMatrix haar_isometry(std::size_t in, std::size_t out, Rng& rng) {
  if (out < in || in == 0) throw ParameterError("haar_isometry: need 0 < in <= out");
  const auto n_in = static_cast<Eigen::Index>(in);
  const auto n_out = static_cast<Eigen::Index>(out);
  const ComplexMatrix g = ginibre(n_out, n_in, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n_out, n_in);
  const ComplexMatrix r = qr.matrixQR().topRows(n_in).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n_in; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

ComplexVector haar_ket(std::size_t dim, Rng& rng) {
  ComplexVector v = ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0);
  return v / v.norm();
}

std::vector<double> dirichlet(std::size_t k, double alpha, Rng& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) {
    v = gamma(rng);
    total += v;
  }
  if (!(total > 0.0)) {
    for (auto& v : w) v = 1.0 / static_cast<double>(k);
    return w;
  }
  for (auto& v : w) v /= total;
  return w;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace steerlab
