#include "steerlab/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "steerlab/error.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

double upsilon(const OperatorFamily& elements, double p) {
  if (elements.size() != 2) {
    std::ostringstream msg;
    msg << "upsilon: defined for two settings, got " << elements.size();
    throw UnsupportedScenarioError(msg.str());
  }
  double total = 0.0;
  for (const auto& e0 : elements[0]) {
    for (const auto& e1 : elements[1]) total += schatten_norm(commutator(e0, e1), p);
  }
  return total;
}

double upsilon_bound(std::size_t d, double p) {
  if (std::isnan(p) || p < 1.0) throw ParameterError("upsilon_bound: p must be >= 1 or infinity");
  const double dd = static_cast<double>(d);
  const double two_p = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);
  return two_p * dd * std::sqrt(dd - 1.0);
}

double sdi_steerability(const Seo& seo, double p) {
  if (seo.n_x() != 2) {
    throw UnsupportedScenarioError("sdi_steerability: the monotone is defined for two settings");
  }
  if (seo.dim <= 1) return 0.0;
  return upsilon(seo.elements, p) / upsilon_bound(seo.dim, p);
}

double sdi_steerability(const StateAssemblage& s, double p, double tol) {
  if (s.n_x() != 2) {
    throw UnsupportedScenarioError("sdi_steerability: the monotone is defined for two settings");
  }
  return sdi_steerability(seo_of(s, tol), p);
}

double bloch_steerability(const BlochVector& r, const BlochVector& v) {
  return r.norm() * v.norm() * std::sin(r.angle(v));
}

double measurement_upper_bound(const MeasurementAssemblage& m) {
  if (m.n_x() != 2) throw UnsupportedScenarioError("measurement_upper_bound: two settings required");
  return 0.25 * upsilon(m.elements(), 1.0);
}

GuessingBound guessing_bound(double s, double tol) {
  if (std::isnan(s) || s < -tol || s > 1.0 + tol) {
    std::ostringstream msg;
    msg << "guessing_bound: steerability " << s << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  double c = std::clamp(s, 0.0, 1.0);
  if (c >= 1.0 - kUnitSnap) c = 1.0;
  GuessingBound g;
  g.p_g = 0.5 * (1.0 + std::sqrt((1.0 - c) * (1.0 + c)));
  g.h_min = std::log2(g.p_g) == 0.0 ? 0.0 : -std::log2(g.p_g);
  return g;
}

RandomnessReport randomness_report(const StateAssemblage& s, std::size_t x, double p, std::optional<double> eta) {
  if (x >= s.n_x()) throw ParameterError("randomness_report: setting index out of range");
  RandomnessReport r;
  r.x = x;
  r.steerability = sdi_steerability(s, p);
  const auto g = guessing_bound(r.steerability);
  r.p_g = g.p_g;
  r.h_min = g.h_min;
  r.eta = eta;
  return r;
}

namespace {

// Qubit effect E = (m 1 + t.sigma) / 2 stored as (m, t).
struct Effect {
  double m = 0.0;
  std::array<double, 3> t{0.0, 0.0, 0.0};

  double tnorm() const { return std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]); }
  bool valid(double eps) const {
    const double n = tnorm();
    return n <= m + eps && n <= 2.0 - m + eps;
  }
  // Tr(E rho) for rho = (1 + r.sigma) / 2
  double probability(const std::array<double, 3>& r) const {
    return 0.5 * (m + t[0] * r[0] + t[1] * r[1] + t[2] * r[2]);
  }
};

Effect combine(const Effect& e, const Effect& f, double lambda) {
  // (e - lambda f) / (1 - lambda)
  Effect g;
  const double s = 1.0 / (1.0 - lambda);
  g.m = (e.m - lambda * f.m) * s;
  for (int i = 0; i < 3; ++i) g.t[static_cast<std::size_t>(i)] = (e.t[static_cast<std::size_t>(i)] - lambda * f.t[static_cast<std::size_t>(i)]) * s;
  return g;
}

// Largest lambda with (e - lambda f)/(1 - lambda) still a valid effect.
double max_peel(const Effect& e, const Effect& f) {
  constexpr double eps = 1e-13;
  double lo = 0.0;
  double hi = 1.0 - 1e-12;
  if (combine(e, f, hi).valid(eps)) return hi;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (combine(e, f, mid).valid(eps)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Effect random_extremal(Rng& rng) {
  const double u = uniform(rng);
  Effect f;
  if (u < 0.1) return f;  // zero effect
  if (u < 0.2) {
    f.m = 2.0;  // identity
    return f;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 3> n{normal(rng), normal(rng), normal(rng)};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  f.m = 1.0;
  for (std::size_t i = 0; i < 3; ++i) f.t[i] = n[i] / len;
  return f;
}

double guess_value(const Effect& e, const std::array<double, 3>& r) {
  const double p = std::clamp(e.probability(r), 0.0, 1.0);
  return std::max(p, 1.0 - p);
}

}  // namespace

GuessingOracleResult guessing_oracle(const MeasurementAssemblage& m, const BipartiteState& state, std::size_t x,
                                     std::size_t samples, std::uint64_t seed) {
  if (m.dim() != 2 || m.n_a() != 2 || state.dA() != 2) {
    throw UnsupportedScenarioError("guessing_oracle: qubit dichotomic measurements on a qubit-A state required");
  }
  if (x >= m.n_x()) throw ParameterError("guessing_oracle: setting index out of range");

  const ComplexMatrix& e0 = m.at(x, 0);
  Effect target;
  target.m = e0.trace().real();
  const BlochVector tb = bloch_vector(e0);
  target.t = tb.v;
  const std::array<double, 3> r = bloch_vector(state.reduced_a()).v;

  GuessingOracleResult out;
  out.trivial = guess_value(target, r);
  out.best = out.trivial;
  out.samples = samples;

  std::uniform_int_distribution<int> components(2, 5);
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, 0x6e55, s);
    const int k = components(rng);
    const auto w = dirichlet(static_cast<std::size_t>(k), 1.0, rng);
    Effect rest = target;
    double mass = 1.0;
    double value = 0.0;
    double tail = 1.0;
    for (int c = 0; c + 1 < k; ++c) {
      const Effect f = random_extremal(rng);
      const double want = tail > 0.0 ? w[static_cast<std::size_t>(c)] / tail : 0.0;
      tail -= w[static_cast<std::size_t>(c)];
      const double lambda = std::min(want, max_peel(rest, f));
      if (lambda <= 0.0) continue;
      value += mass * lambda * guess_value(f, r);
      rest = combine(rest, f, lambda);
      mass *= 1.0 - lambda;
    }
    value += mass * guess_value(rest, r);
    out.best = std::max(out.best, value);
  }
  return out;
}

}  // namespace steerlab
