#include "steerlab/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "steerlab/error.hpp"

namespace steerlab {

BipartiteState isotropic(std::size_t d, double alpha) {
  if (d < 2) throw DomainError("isotropic: d must be >= 2");
  const double dd = static_cast<double>(d);
  const double lo = -1.0 / (dd * dd - 1.0);
  constexpr double slack = 1e-12;
  if (!(alpha >= lo - slack && alpha <= 1.0 + slack)) {
    std::ostringstream msg;
    msg << "isotropic: alpha = " << alpha << " outside [" << lo << ", 1]; the state would not be PSD";
    throw DomainError(msg.str());
  }
  const ComplexVector phi = PureEntangledState(std::vector<double>(d, 1.0 / std::sqrt(dd))).ket();
  ComplexMatrix rho = alpha * (phi * phi.adjoint()) + ((1.0 - alpha) / (dd * dd)) * identity(d * d);
  return BipartiteState(d, d, std::move(rho));
}

double isotropic_separability_bound(std::size_t d) { return 1.0 / (static_cast<double>(d) + 1.0); }

ComplexMatrix fourier_matrix(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // reduce jk mod d before scaling to keep the phase argument small
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(d);
      f(j, k) = std::polar(norm, phase);
    }
  }
  return f;
}

MeasurementAssemblage mub_pair(std::size_t d) {
  if (d < 2) throw DomainError("mub_pair: d must be >= 2");
  const ComplexMatrix f = fourier_matrix(d);
  const auto n = static_cast<Eigen::Index>(d);
  OperatorFamily elements(2);
  for (Eigen::Index a = 0; a < n; ++a) {
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    proj(a, a) = 1.0;
    const ComplexVector col = f.col(a);
    elements[0].push_back(proj);
    elements[1].push_back(col * col.adjoint());
  }
  return MeasurementAssemblage(d, std::move(elements));
}

BipartiteState pure_entangled(const std::vector<double>& schmidt) { return PureEntangledState(schmidt).density(); }

BipartiteState maximally_entangled(std::size_t d) {
  return pure_entangled(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

std::vector<ComplexMatrix> qubit_povm_from_bloch(const BlochVector& t, double sharpness) {
  if (!(sharpness >= 0.0 && sharpness <= 1.0)) throw DomainError("qubit_povm_from_bloch: sharpness must lie in [0, 1]");
  if (t.norm() * sharpness > 1.0 + 1e-12) {
    throw ValidationError("qubit_povm_from_bloch: |t| * sharpness exceeds 1, elements would not be positive");
  }
  const ComplexMatrix id = identity(2);
  const ComplexMatrix ts = t.scaled(sharpness).pauli_operator();
  return {0.5 * (id + ts), 0.5 * (id - ts)};
}

MeasurementAssemblage qubit_pair_from_bloch(const BlochVector& t0, const BlochVector& t1, double sharpness) {
  return MeasurementAssemblage(2, {qubit_povm_from_bloch(t0, sharpness), qubit_povm_from_bloch(t1, sharpness)});
}

ComplexMatrix random_density(std::size_t d, Rng& rng, std::size_t env_dim) {
  const std::size_t env = env_dim == 0 ? d : env_dim;
  const ComplexMatrix g = ginibre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(env), rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

BipartiteState random_state(std::size_t dA, std::size_t dB, Rng& rng, std::size_t env_dim) {
  // Tracing a Haar ket on (AB) x E gives the Wishart construction G G^dag.
  return BipartiteState(dA, dB, random_density(dA * dB, rng, env_dim));
}

namespace {

std::vector<ComplexMatrix> normalize_povm(std::vector<ComplexMatrix> positives) {
  ComplexMatrix total = ComplexMatrix::Zero(positives.front().rows(), positives.front().cols());
  for (const auto& g : positives) total += g;
  const auto eig = eigh(total);
  const RealVector inv = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix s = eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
  for (auto& g : positives) g = hermitian_part(s * g * s);
  return positives;
}

}  // namespace

MeasurementAssemblage random_measurement(std::size_t d, std::size_t n_x, Rng& rng, std::size_t n_a) {
  const std::size_t outcomes = n_a == 0 ? d : n_a;
  const auto n = static_cast<Eigen::Index>(d);
  OperatorFamily elements(n_x);
  for (std::size_t x = 0; x < n_x; ++x) {
    std::vector<ComplexMatrix> positives;
    for (std::size_t a = 0; a < outcomes; ++a) {
      const ComplexMatrix g = ginibre(n, n, rng);
      positives.push_back(g * g.adjoint());
    }
    elements[x] = normalize_povm(std::move(positives));
  }
  return MeasurementAssemblage(d, std::move(elements));
}

MeasurementAssemblage random_incoherent_measurement(std::size_t d, std::size_t n_x, std::size_t n_a, Rng& rng,
                                                    bool computational_basis) {
  const ComplexMatrix u = computational_basis ? identity(d) : haar_unitary(d, rng);
  const auto n = static_cast<Eigen::Index>(d);
  OperatorFamily elements(n_x);
  for (std::size_t x = 0; x < n_x; ++x) {
    std::vector<RealVector> diag(n_a, RealVector::Zero(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto w = dirichlet(n_a, 1.0, rng);
      for (std::size_t a = 0; a < n_a; ++a) diag[a](i) = w[a];
    }
    for (std::size_t a = 0; a < n_a; ++a) {
      elements[x].push_back(hermitian_part(u * diag[a].asDiagonal() * u.adjoint()));
    }
  }
  return MeasurementAssemblage(d, std::move(elements));
}

StateAssemblage random_state_assemblage(std::size_t dA, std::size_t dB, std::size_t n_x, std::size_t n_a, Rng& rng) {
  const auto state = random_state(dA, dB, rng);
  return steer(state, random_measurement(dA, n_x, rng, n_a));
}

Scenario build_scenario(const ScenarioSpec& spec) {
  Rng rng = make_rng(spec.seed, 0x5ce7);
  std::optional<BipartiteState> state;
  std::size_t dA = spec.d;
  if (spec.family == "isotropic") {
    state = isotropic(spec.d, spec.alpha);
  } else if (spec.family == "pure") {
    if (spec.schmidt.empty()) throw DomainError("pure: Schmidt spectrum required");
    state = pure_entangled(spec.schmidt);
    dA = spec.schmidt.size();
  } else if (spec.family == "product") {
    state = BipartiteState(spec.d, spec.d, tensor(random_density(spec.d, rng), random_density(spec.d, rng)));
  } else if (spec.family == "random") {
    state = random_state(spec.d, spec.d, rng);
  } else {
    throw DomainError("unknown scenario family '" + spec.family + "'");
  }

  std::optional<MeasurementAssemblage> meas;
  switch (spec.measurement) {
    case MeasurementKind::Mub:
      meas = mub_pair(dA);
      break;
    case MeasurementKind::Random:
      meas = random_measurement(dA, 2, rng);
      break;
    case MeasurementKind::Bloch:
      if (dA != 2 || spec.bloch.size() != 2) {
        throw DomainError("bloch measurements need a qubit scenario and exactly two vectors");
      }
      meas = qubit_pair_from_bloch(spec.bloch[0], spec.bloch[1], spec.sharpness);
      break;
  }
  if (spec.eta) meas = apply_inefficiency(*meas, *spec.eta);
  return Scenario{std::move(*state), std::move(*meas)};
}

}  // namespace steerlab
