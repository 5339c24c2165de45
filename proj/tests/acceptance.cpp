// One line per acceptance criterion: PASS/FAIL, number, name, wall time,
// measured figures. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "steerlab/analysis.hpp"
#include "steerlab/batteries.hpp"
#include "steerlab/error.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/random.hpp"
#include "steerlab/scenarios.hpp"

using namespace steerlab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string g(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1
Outcome mub_saturation() {
  const auto t0 = Clock::now();
  double dev = 0.0;
  for (std::size_t d = 2; d <= 5; ++d)
    for (double p : {1.0, 2.0, kInfNorm})
      dev = std::max(dev, std::abs(sdi_steerability(steer(maximally_entangled(d), mub_pair(d)), p) - 1.0));
  double dev_nonuniform = 0.0;
  const std::vector<std::vector<double>> spectra{{0.6, 0.8}, {std::sqrt(0.9), std::sqrt(0.1)},
                                                 {std::sqrt(0.2), std::sqrt(0.3), std::sqrt(0.5)},
                                                 {std::sqrt(0.7), std::sqrt(0.2), std::sqrt(0.1)}};
  for (const auto& lam : spectra)
    for (double p : {1.0, 2.0, kInfNorm})
      dev_nonuniform =
          std::max(dev_nonuniform, std::abs(sdi_steerability(steer(pure_entangled(lam), mub_pair(lam.size())), p) - 1.0));
  const double t = seconds_since(t0);
  return {dev <= 1e-9 && dev_nonuniform <= 1e-9 && t < 1.0,
          "max |S-1| " + g(dev) + " (maximally entangled), " + g(dev_nonuniform) + " (non-uniform Schmidt)"};
}

// 2
Outcome isotropic_line() {
  const auto t0 = Clock::now();
  double dev = 0.0;
  double dev_sq = 0.0;
  double worst_alpha = 0.0;
  std::size_t worst_d = 0;
  std::string rejected;
  for (std::size_t d : {2, 3}) {
    for (double alpha : {-0.3, -0.1, 0.0, 0.2, 0.5, 0.8, 1.0}) {
      if (alpha < -1.0 / (double(d * d) - 1.0)) {
        // outside the family's PSD domain: the generator must refuse it
        try {
          isotropic(d, alpha);
          return {false, "isotropic accepted a non-PSD parameter"};
        } catch (const DomainError&) {
          rejected += " (d=" + std::to_string(d) + ", alpha=" + g(alpha) + ")";
        }
        continue;
      }
      const double s = sdi_steerability(steer(isotropic(d, alpha), mub_pair(d)));
      if (std::abs(s - std::abs(alpha)) > dev) {
        dev = std::abs(s - std::abs(alpha));
        worst_alpha = alpha;
        worst_d = d;
      }
      dev_sq = std::max(dev_sq, std::abs(s - alpha * alpha));
    }
  }
  const double t = seconds_since(t0);
  return {dev <= 1e-9 && t < 1.0, "max |S-|alpha|| " + g(dev) + " at d=" + std::to_string(worst_d) + " alpha=" +
                                       g(worst_alpha) + "; max |S-alpha^2| " + g(dev_sq) +
                                       (rejected.empty() ? "" : "; outside PSD domain:" + rejected)};
}

// 3
Outcome fig3_curve() {
  SweepSpec spec;
  spec.alphas = parse_grid("0:1:101");
  const SweepResult r = run_sweep(spec);
  double dev = 0.0;
  std::size_t bad = 0;
  for (const auto& row : r.rows) {
    const double ref = oracle::hmin_closed_form(row.alpha);
    const double e = std::abs(row.h_min - ref);
    dev = std::max(dev, e);
    if (e > 1e-12) ++bad;
  }
  const double h0 = r.rows.front().h_min;
  const double h1 = r.rows.back().h_min;
  const bool endpoints = std::abs(h0) <= 1e-12 && std::abs(h1 - 1.0) <= 1e-12;
  return {r.rows.size() == 101 && bad == 0 && endpoints,
          std::to_string(bad) + "/101 points off the closed form (max " + g(dev) + "); H_min(0)=" + g(h0) +
              ", H_min(1)=" + g(h1)};
}

// 4
Outcome theorem1_roundtrip() {
  std::size_t bad = 0;
  double worst = 0.0;
  std::size_t max_dl = 0;
  for (std::size_t k = 0; k < 500; ++k) {
    Rng rng = make_rng(2024, 4, k);
    const BipartiteState rho = random_state(2, 2, rng);
    const MeasurementAssemblage m = random_incoherent_measurement(2, 2, 2, rng);
    const LhsModel lhs = lhs_from_commuting_seo(steer(rho, m));
    // rebuild sigma from the model and compare with the explicit partial trace
    double residual = 0.0;
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t a = 0; a < 2; ++a) {
        ComplexMatrix sigma = ComplexMatrix::Zero(2, 2);
        for (std::size_t l = 0; l < lhs.d_lambda(); ++l) sigma += lhs.weights[l] * lhs.response[l][x][a] * lhs.states[l];
        residual = std::max(residual, max_abs_diff(sigma, oracle::steer_element(rho.rho(), m.at(x, a), 2, 2)));
      }
    }
    worst = std::max(worst, residual);
    max_dl = std::max(max_dl, lhs.d_lambda());
    if (!(residual < 1e-9) || lhs.d_lambda() > 2) ++bad;
  }
  const CheckResult converse = lhs_converse_battery(500, 2024);
  return {bad == 0 && converse.passed, "forward: " + std::to_string(bad) + "/500 failures, max residual " + g(worst) +
                                           ", max d_lambda " + std::to_string(max_dl) + "; converse: " +
                                           std::to_string(converse.failures) + "/500 failures, " + converse.detail};
}

// 5
Outcome decision_consistency() {
  const CheckResult c = decision_consistency_battery(1200, 2025, 1e-8);
  return {c.passed && c.count >= 1000, std::to_string(c.failures) + "/" + std::to_string(c.count) + " inconsistent; " + c.detail};
}

// 6
Outcome measurement_bound() {
  std::size_t bad = 0;
  double min_slack = kInfNorm;
  double oracle_dev = 0.0;
  for (std::size_t k = 0; k < 500; ++k) {
    Rng rng = make_rng(2026, 6, k);
    const BipartiteState rho = random_state(2, 2, rng);
    const MeasurementAssemblage m = random_measurement(2, 2, rng, 2);
    const double s = sdi_steerability(steer(rho, m));
    std::vector<std::vector<oracle::Mat>> f(2);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t a = 0; a < 2; ++a) f[x].push_back(m.at(x, a));
    const double bound = oracle::upsilon1_2x2(f) / 4.0;
    oracle_dev = std::max(oracle_dev, std::abs(bound - measurement_upper_bound(m)));
    min_slack = std::min(min_slack, bound - s);
    if (s > bound + 1e-9) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/500 violations, min slack " + g(min_slack) +
                        ", |library - oracle| bound " + g(oracle_dev)};
}

// 7
Outcome bloch_shortcut() {
  double dev = 0.0;
  for (std::size_t k = 0; k < 500; ++k) {
    Rng rng = make_rng(2027, 7, k);
    auto draw = [&] {
      const ComplexVector psi = haar_ket(2, rng);
      const ComplexMatrix proj = psi * psi.adjoint();
      const auto b = oracle::bloch(proj);
      return BlochVector(b[0], b[1], b[2]).scaled(std::sqrt(uniform(rng)));
    };
    const MeasurementAssemblage m = qubit_pair_from_bloch(draw(), draw());
    const double pipeline = sdi_steerability(steer(maximally_entangled(2), m));
    const double ref = oracle::bloch_area(oracle::bloch(m.at(0, 0)), oracle::bloch(m.at(1, 0)));
    dev = std::max(dev, std::abs(pipeline - ref));
  }
  return {dev < 1e-8, "max |pipeline - |r||v|sin(theta)| " + g(dev) + " over 500 instances"};
}

// 8
Outcome guessing_bound_check() {
  bool ok = true;
  std::ostringstream detail;
  for (double alpha : {0.4, 0.8, 1.0}) {
    const BipartiteState rho = isotropic(2, alpha);
    const MeasurementAssemblage m = mub_pair(2);
    const double s = sdi_steerability(steer(rho, m));
    const double f = oracle::guessing_closed_form(std::min(1.0, s));
    double best = 0.0;
    for (std::size_t x : {0u, 1u}) best = std::max(best, guessing_oracle(m, rho, x, 10000, 2028 + x).best);
    ok = ok && best <= f + 1e-6;
    detail << "alpha=" << alpha << ": oracle " << g(best) << " <= f(S)=" << g(f) << "; ";
  }
  return {ok, detail.str()};
}

// 9
Outcome free_closure() {
  const CheckResult closure = free_closure_battery(1000, 100, 2029, 1e-7);
  const CheckResult witness = losr_witness_battery(1000, 2029);
  return {closure.passed && witness.passed, closure.detail + "; LOSR witness: " + witness.detail};
}

// 10
Outcome monotonicity() {
  const CheckResult u = monotonicity_battery(FreeOpClass::UnitaryIdentityKernels, 20, 100, 2030);
  const CheckResult i = monotonicity_battery(FreeOpClass::IdentityChannel, 20, 100, 2030);
  const CheckResult gen = monotonicity_battery(FreeOpClass::General, 20, 100, 2030, false, 1e-7);
  return {u.passed && i.passed, "unitary: " + u.detail + "; identity channel: " + i.detail + "; general (report): " + gen.detail};
}

// 11
Outcome nonconvexity() {
  const CheckResult c = nonconvexity_battery(200, 2031, 1e-6);
  return {c.passed, c.detail};
}

// 12
Outcome efficiency_sweep() {
  SweepSpec spec;
  spec.alphas = {0.8};
  spec.etas = parse_grid("0.25:1:16");
  const SweepResult r = run_sweep(spec);
  bool monotone = true;
  for (std::size_t k = 1; k < r.rows.size(); ++k) monotone = monotone && r.rows[k].steerability >= r.rows[k - 1].steerability - 1e-12;
  const double at_one = r.rows.back().steerability;
  const bool unit = std::abs(at_one - 0.8) <= 1e-9;
  return {unit && monotone, "S(eta=1) = " + g(at_one) + " (expected 0.8), monotone " + (monotone ? "yes" : "no") +
                                ", fitted eta exponent " + g(r.eta_exponent.value_or(0.0)) + " (reported)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "mub-saturation", mub_saturation},
      {2, "isotropic-line", isotropic_line},
      {3, "hmin-curve", fig3_curve},
      {4, "lhs-roundtrip", theorem1_roundtrip},
      {5, "decision-consistency", decision_consistency},
      {6, "measurement-upper-bound", measurement_bound},
      {7, "bloch-shortcut", bloch_shortcut},
      {8, "guessing-bound", guessing_bound_check},
      {9, "free-operation-closure", free_closure},
      {10, "monotonicity", monotonicity},
      {11, "nonconvexity-existence", nonconvexity},
      {12, "efficiency-sweep", efficiency_sweep},
  };
  const auto start = Clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    std::printf("%s  %2d  %-24s %8.3fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, t, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  const double total = seconds_since(start);
  const bool fast = total < 300.0;
  std::printf("%s  %2d  %-24s %8.3fs  whole suite under 300 s\n", fast ? "PASS" : "FAIL", 13, "runtime", total);
  if (!fast) ++failed;
  std::printf("%d/13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
