#include "steerlab/batteries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "steerlab/bloch.hpp"
#include "steerlab/error.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/random.hpp"
#include "steerlab/scenarios.hpp"

namespace steerlab {

namespace {

enum Stream : std::uint64_t {
  kRoundtrip = 11,
  kConverse,
  kConsistency,
  kBound,
  kValidation,
  kClosure,
  kLosr,
  kMonotonicity,
  kNonconvexity,
  kDiscrepancy,
};

std::size_t scaled(std::size_t n, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale)));
}

void record(CheckResult& c, bool ok, double value) {
  ++c.count;
  if (!ok) {
    ++c.failures;
    c.worst = std::max(c.worst, value);
  }
}

CheckResult finish(CheckResult c) {
  c.passed = c.failures == 0;
  return c;
}

StateAssemblage commuting_qubit_assemblage(Rng& rng, std::size_t dB = 2) {
  const BipartiteState rho = random_state(2, dB, rng);
  const MeasurementAssemblage m = random_incoherent_measurement(2, 2, 2, rng);
  return steer(rho, m);
}

double max_commutator(const StateAssemblage& s) { return pairwise_commutativity(seo_of(s).elements).max_norm; }

CheckResult make_check(std::string name, std::size_t count, bool passed, double worst, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.count = count;
  c.passed = passed;
  c.worst = worst;
  c.detail = std::move(detail);
  return c;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

}  // namespace

bool SuiteResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.asserted || c.passed; });
}

CheckResult lhs_roundtrip_battery(std::size_t n, std::uint64_t seed, double tol) {
  CheckResult c;
  c.name = "lhs-roundtrip";
  double max_residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, kRoundtrip, k);
    const StateAssemblage s = commuting_qubit_assemblage(rng);
    double residual = kInfNorm;
    std::size_t d_lambda = 0;
    try {
      const LhsModel lhs = lhs_from_commuting_seo(s);
      residual = assemblage_distance(lhs_assemblage(lhs), s);
      d_lambda = lhs.d_lambda();
    } catch (const Error&) {
    }
    max_residual = std::max(max_residual, residual);
    record(c, residual < tol && d_lambda >= 1 && d_lambda <= 2, residual);
  }
  c.detail = "max residual " + fmt(max_residual) + ", two-qubit inputs";
  return finish(c);
}

CheckResult lhs_converse_battery(std::size_t n, std::uint64_t seed, double tol) {
  CheckResult c;
  c.name = "lhs-converse";
  double max_norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, kConverse, k);
    LhsModel l;
    if (k % 2 == 0) {
      // arbitrary mixed hidden states, d_lambda = 2, qubit Bob
      l.weights = dirichlet(2, 1.0, rng);
      for (int i = 0; i < 2; ++i) l.states.push_back(random_density(2, rng));
    } else {
      // rho^{1/2}|lambda><lambda|rho^{1/2} in a random basis, qutrit Bob
      const ComplexMatrix rho = random_density(3, rng);
      const ComplexMatrix root = herm_sqrt(rho);
      const ComplexMatrix u = haar_unitary(3, rng);
      for (int i = 0; i < 3; ++i) {
        const ComplexMatrix t = root * u.col(i) * u.col(i).adjoint() * root;
        const double w = t.trace().real();
        l.weights.push_back(w);
        l.states.push_back(t / w);
      }
    }
    l.response.resize(l.weights.size());
    for (auto& per_x : l.response) {
      per_x.resize(2);
      for (auto& p : per_x) p = dirichlet(2, 1.0, rng);
    }
    const double norm = max_commutator(lhs_assemblage(l));
    max_norm = std::max(max_norm, norm);
    record(c, norm < tol, norm);
  }
  c.detail = "max commutator norm " + fmt(max_norm);
  return finish(c);
}

CheckResult decision_consistency_battery(std::size_t n, std::uint64_t seed, double tol) {
  CheckResult c;
  c.name = "decision-consistency";
  std::size_t commuting = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, kConsistency, k);
    const std::size_t d = 2 + k % 2;
    const StateAssemblage s = k % 3 == 0 ? commuting_qubit_assemblage(rng, d) : random_state_assemblage(d, d, 2, 2, rng);
    const Seo seo = seo_of(s);
    const auto verdict = pairwise_commutativity(seo.elements, 1.0, tol);
    const double sv = sdi_steerability(seo);
    commuting += verdict.commuting ? 1 : 0;
    record(c, verdict.commuting == (sv <= tol), sv);
  }
  c.detail = std::to_string(commuting) + " commuting, " + std::to_string(n - commuting) + " noncommuting";
  return finish(c);
}

CheckResult measurement_bound_battery(std::size_t n, std::uint64_t seed, double slack) {
  CheckResult c;
  c.name = "measurement-upper-bound";
  double min_gap = kInfNorm;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, kBound, k);
    const BipartiteState rho = random_state(2, 2, rng);
    const MeasurementAssemblage m = random_measurement(2, 2, rng, 2);
    const double sv = sdi_steerability(steer(rho, m));
    const double bound = measurement_upper_bound(m);
    min_gap = std::min(min_gap, bound - sv);
    record(c, sv <= bound + slack, sv - bound);
  }
  c.detail = "min slack " + fmt(min_gap);
  return finish(c);
}

CheckResult free_validation_battery(std::size_t n, std::uint64_t seed) {
  CheckResult c;
  c.name = "free-op-validation";
  for (std::size_t k = 0; k < n; ++k) {
    FreeOpShape shape;
    shape.dim = 2 + k % 2;
    bool ok = true;
    try {
      validate_operation(sample_free(shape, derive_seed(seed, kValidation, k)));
    } catch (const InvalidOperationError&) {
      ok = false;
    }
    record(c, ok, 1.0);
  }
  c.detail = std::to_string(c.count - c.failures) + "/" + std::to_string(c.count) + " valid";
  return finish(c);
}

CheckResult free_closure_battery(std::size_t n_ops, std::size_t n_inputs, std::uint64_t seed, double tol) {
  CheckResult c;
  c.name = "free-op-closure";
  std::vector<StateAssemblage> inputs;
  for (std::size_t i = 0; i < n_inputs; ++i) {
    Rng rng = make_rng(seed, kClosure, i);
    inputs.push_back(commuting_qubit_assemblage(rng));
  }
  double max_norm = 0.0;
  for (std::size_t k = 0; k < n_ops; ++k) {
    const FreeOperation f = sample_free(FreeOpShape{}, derive_seed(seed, kClosure + 100, k));
    for (const auto& s : inputs) {
      const double norm = max_commutator(apply_free(f, s));
      max_norm = std::max(max_norm, norm);
      record(c, norm <= tol, norm);
    }
  }
  c.detail = std::to_string(n_ops) + " operations x " + std::to_string(n_inputs) + " inputs, max commutator norm " +
             fmt(max_norm);
  return finish(c);
}

CheckResult losr_witness_battery(std::size_t attempts, std::uint64_t seed) {
  CheckResult c;
  c.name = "losr-witness";
  const ComplexMatrix p0 = (identity(2) + pauli(2)) / 2.0;
  const ComplexMatrix p1 = (identity(2) - pauli(2)) / 2.0;
  const StateAssemblage s(2, {{p0 / 2.0, p1 / 2.0}, {p0 / 2.0, p1 / 2.0}});
  const LosrWitness w = find_losr_witness(s, attempts, derive_seed(seed, kLosr, 0));
  c.count = w.tried;
  if (w.found) {
    validate_operation(w.operation);
    const double out = sdi_steerability(apply_losr(w.operation, s));
    c.worst = out;
    c.passed = out > 1e-3 && max_commutator(s) < kCommutativityTol;
    c.detail = "input S = " + fmt(w.input_steerability) + ", output S = " + fmt(out) + " after " +
               std::to_string(w.tried) + " attempts";
  } else {
    c.failures = 1;
    c.passed = false;
    c.detail = "no witness in " + std::to_string(w.tried) + " attempts";
  }
  return c;
}

CheckResult monotonicity_battery(FreeOpClass op_class, std::size_t n_inputs, std::size_t n_ops, std::uint64_t seed,
                                 bool asserted, double bound, std::size_t dim) {
  static constexpr const char* names[] = {"monotonicity-unitary", "monotonicity-identity-channel",
                                          "monotonicity-general"};
  CheckResult c;
  c.name = names[static_cast<int>(op_class)];
  c.asserted = asserted;
  if (dim != 2) c.name += "-d" + std::to_string(dim);
  double max_margin = 0.0;
  double mean = 0.0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < n_inputs; ++i) {
    Rng rng = make_rng(seed, kMonotonicity, i);
    const StateAssemblage s = random_state_assemblage(dim, dim, 2, 2, rng);
    const MonotonicityReport r = monotonicity_report(s, n_ops, derive_seed(seed, kMonotonicity + 100, i), op_class);
    max_margin = std::max(max_margin, r.max_margin);
    mean += r.mean_margin / static_cast<double>(n_inputs);
    violations += r.violations.size();
    for (std::size_t k = 0; k < r.samples; ++k) ++c.count;
    if (r.max_margin > bound) {
      c.failures += std::max<std::size_t>(1, r.violations.size());
      c.worst = std::max(c.worst, r.max_margin);
    }
  }
  c.passed = c.failures == 0;
  if (!asserted) c.worst = max_margin;
  c.detail = "max margin " + fmt(max_margin) + ", mean margin " + fmt(mean) + ", " + std::to_string(violations) +
             " samples above 1e-7";
  return c;
}

namespace {

struct ConvexityScan {
  double best = -kInfNorm;
  std::string where;
  std::size_t below = 0;
  std::size_t count = 0;
};

ConvexityScan convexity_scan(std::size_t n, std::uint64_t seed) {
  ConvexityScan scan;
  auto try_pair = [&](const StateAssemblage& s1, const StateAssemblage& s2, const std::string& label) {
    const double a = sdi_steerability(s1);
    const double b = sdi_steerability(s2);
    for (double p : {0.25, 0.5, 0.75}) {
      const double excess = sdi_steerability(mix(p, s1, s2)) - (p * a + (1.0 - p) * b);
      ++scan.count;
      if (excess < -1e-9) ++scan.below;
      if (excess > scan.best) {
        scan.best = excess;
        scan.where = label + " at p = " + fmt(p);
      }
    }
  };
  // each input has one uninformative setting
  {
    const BipartiteState phi = maximally_entangled(2);
    const ComplexMatrix half = identity(2) / 2.0;
    const auto z = qubit_povm_from_bloch(BlochVector(0.0, 0.0, 1.0));
    const auto x = qubit_povm_from_bloch(BlochVector(1.0, 0.0, 0.0));
    const StateAssemblage s1 = steer(phi, MeasurementAssemblage(2, {z, {half, half}}));
    const StateAssemblage s2 = steer(phi, MeasurementAssemblage(2, {{half, half}, x}));
    try_pair(s1, s2, "structured pair");
  }
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, kNonconvexity, k);
    const BipartiteState rho = random_state(2, 2, rng);
    const StateAssemblage s1 = steer(rho, random_measurement(2, 2, rng, 2));
    const StateAssemblage s2 = steer(rho, random_measurement(2, 2, rng, 2));
    try_pair(s1, s2, "random pair " + std::to_string(k));
  }
  return scan;
}

}  // namespace

CheckResult nonconvexity_battery(std::size_t n, std::uint64_t seed, double gap) {
  const ConvexityScan scan = convexity_scan(n, seed);
  CheckResult c = make_check("nonconvexity-existence", scan.count, true, scan.best, {});
  c.passed = scan.best > gap;
  c.failures = c.passed ? 0 : 1;
  c.detail = "largest excess " + fmt(scan.best) + " (" + scan.where + ")";
  return c;
}

SuiteResult run_core_suite(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "core";
  const std::uint64_t seed = o.seed;
  r.checks.push_back(lhs_roundtrip_battery(scaled(200, o.scale), seed));
  r.checks.push_back(lhs_converse_battery(scaled(200, o.scale), seed));
  r.checks.push_back(decision_consistency_battery(scaled(300, o.scale), seed));
  r.checks.push_back(measurement_bound_battery(scaled(300, o.scale), seed));
  r.checks.push_back(free_validation_battery(scaled(300, o.scale), seed));
  r.checks.push_back(free_closure_battery(scaled(100, o.scale), scaled(10, o.scale), seed));
  r.checks.push_back(losr_witness_battery(scaled(500, o.scale), seed));
  r.checks.push_back(monotonicity_battery(FreeOpClass::UnitaryIdentityKernels, scaled(10, o.scale), 50, seed));
  r.checks.push_back(monotonicity_battery(FreeOpClass::IdentityChannel, scaled(10, o.scale), 50, seed));
  r.checks.push_back(monotonicity_battery(FreeOpClass::General, scaled(10, o.scale), 50, seed, false, 1e-7));
  r.checks.push_back(nonconvexity_battery(scaled(100, o.scale), seed));
  return r;
}

SuiteResult run_discrepancy_suite(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "discrepancies";
  auto info = [&](CheckResult c) {
    c.asserted = false;
    r.checks.push_back(std::move(c));
  };

  // isotropic line: fitted alpha exponent against the closed form |alpha|
  for (std::size_t d : {2, 3}) {
    SweepSpec spec;
    spec.d = d;
    spec.alphas = {0.2, 0.4, 0.6, 0.8};
    const SweepResult sw = run_sweep(spec);
    std::vector<double> xs;
    std::vector<double> ys;
    double dev = 0.0;
    for (const auto& row : sw.rows) {
      xs.push_back(row.alpha);
      ys.push_back(row.steerability);
      dev = std::max(dev, std::abs(row.steerability - std::abs(row.alpha)));
    }
    const auto k = fit_exponent(xs, ys);
    info(make_check("isotropic-alpha-exponent-d" + std::to_string(d), sw.rows.size(), dev <= 1e-9, k.value_or(0.0),
                    "fitted exponent " + fmt(k.value_or(0.0)) + " (closed form claims 1), max |S - |alpha|| " +
                        fmt(dev)));
  }

  // detection efficiency
  {
    SweepSpec spec;
    spec.alphas = {0.8, 1.0};
    spec.etas = {0.25, 0.5, 0.75, 1.0};
    const SweepResult sw = run_sweep(spec);
    info(make_check("eta-exponent", sw.rows.size(), std::abs(sw.eta_exponent.value_or(0.0) - 1.0) < 1e-6, sw.eta_exponent.value_or(0.0), "fitted eta exponent " + fmt(sw.eta_exponent.value_or(0.0)) + " (claimed 1)"));
  }

  // universal direction of the convexity inequality
  {
    const ConvexityScan scan = convexity_scan(scaled(200, o.scale), o.seed + 7);
    info(make_check("convexity-universal-direction", scan.count, scan.below == 0, static_cast<double>(scan.below), std::to_string(scan.below) + "/" + std::to_string(scan.count) +
                               " mixtures fall below the convex combination"));
  }

  // monotonicity for general channels
  info(monotonicity_battery(FreeOpClass::General, scaled(20, o.scale), 50, o.seed + 3, false));
  info(monotonicity_battery(FreeOpClass::General, scaled(10, o.scale), 50, o.seed + 3, false, 1e-9, 3));

  // free-op closure at d = 3: measure-and-prepare onto trine-embedded states
  {
    OperatorFamily sigma(2, std::vector<ComplexMatrix>(2, ComplexMatrix::Zero(3, 3)));
    for (int l = 0; l < 3; ++l) {
      ComplexMatrix proj = ComplexMatrix::Zero(3, 3);
      proj(l, l) = 1.0;
      sigma[0][l == 0 ? 0 : 1] += proj / 3.0;
      sigma[1][l == 1 ? 0 : 1] += proj / 3.0;
    }
    const StateAssemblage input(3, sigma);
    Channel channel;
    for (int l = 0; l < 3; ++l) {
      const double angle = 2.0 * std::numbers::pi * l / 3.0;
      ComplexVector t = ComplexVector::Zero(3);
      t(0) = std::cos(angle / 2.0);
      t(1) = std::sin(angle / 2.0);
      ComplexVector two = ComplexVector::Zero(3);
      two(2) = 1.0;
      ComplexVector e = ComplexVector::Zero(3);
      e(l) = 1.0;
      channel.kraus.push_back(std::sqrt(2.0 / 3.0) * t * e.adjoint());
      channel.kraus.push_back(std::sqrt(1.0 / 3.0) * two * e.adjoint());
    }
    FreeOperation f{.weights = {1.0}, .kernels = {ClassicalKernel::identity(2, 2)}, .channel = channel};
    validate_operation(f);
    const double before = max_commutator(input);
    const double after = max_commutator(apply_free(f, input));
    info(make_check("free-op-closure-d3", 1, after <= 1e-7, after, "commuting input (norm " + fmt(before) + ") mapped to commutator norm " + fmt(after)));
  }

  // commuting-SEO converse with a three-valued hidden variable
  {
    double worst = 0.0;
    const std::size_t n = scaled(50, o.scale);
    for (std::size_t k = 0; k < n; ++k) {
      Rng rng = make_rng(o.seed, kDiscrepancy, k);
      const BipartiteState rho = random_state(3, 3, rng);
      worst = std::max(worst, max_commutator(steer(rho, random_incoherent_measurement(3, 2, 2, rng))));
    }
    info(make_check("incoherent-dA3-commutativity", n, worst <= 1e-8, worst, "max commutator norm " + fmt(worst) + " over incoherent d_A = 3 measurements"));
  }

  // MUB saturation, uniform and non-uniform Schmidt spectra
  {
    double dev = 0.0;
    std::string where = "none";
    std::size_t count = 0;
    for (std::size_t d = 2; d <= 5; ++d) {
      for (double p : {1.0, 2.0, kInfNorm}) {
        for (int trial = 0; trial < 4; ++trial) {
          Rng rng = make_rng(o.seed, kDiscrepancy + 1, d * 16 + trial);
          std::vector<double> lam(d, 1.0 / std::sqrt(static_cast<double>(d)));
          if (trial > 0) {
            const auto w = dirichlet(d, 1.0, rng);
            for (std::size_t i = 0; i < d; ++i) lam[i] = std::sqrt(w[i]);
          }
          const double sv = sdi_steerability(steer(pure_entangled(lam), mub_pair(d)), p);
          ++count;
          if (std::abs(sv - 1.0) > dev) {
            dev = std::abs(sv - 1.0);
            where = "d = " + std::to_string(d) + ", p = " + fmt(p);
          }
        }
      }
    }
    info(make_check("mub-saturation", count, dev <= 1e-9, dev, "max |S - 1| " + fmt(dev) + " (" + where + ")"));
  }
  return r;
}

SuiteResult verify_problem(const ProblemFile& problem, const AnalysisOptions& options) {
  SuiteResult r;
  r.name = "file";
  const AnalysisReport a = analyze(problem, options);
  const bool consistent = !a.steerability || a.n_a > 2 || a.commuting == (*a.steerability <= options.tol);
  r.checks.push_back(make_check("verdict-consistency", 1, consistent, a.steerability.value_or(0.0),
                                std::string(a.commuting ? "commuting" : "noncommuting") + ", max commutator norm " +
                                    fmt(a.max_commutator_norm)));
  if (a.commuting) {
    const double lhs = a.lhs_residual.value_or(kInfNorm);
    const double cq = a.cq_residual.value_or(kInfNorm);
    r.checks.push_back(make_check("lhs-reconstruction", 1, lhs < 1e-9, lhs,
                                  "residual " + fmt(lhs) + ", d_lambda " + std::to_string(a.d_lambda.value_or(0))));
    r.checks.push_back(make_check("cq-reconstruction", 1, cq < 1e-9, cq, "residual " + fmt(cq)));
  }
  if (a.steerability) {
    const double sv = *a.steerability;
    r.checks.push_back(make_check("normalization", 1, sv >= 0.0 && sv <= 1.0 + 1e-9, sv, "S = " + fmt(sv)));
    if (a.measurement_upper_bound) {
      r.checks.push_back(make_check("measurement-upper-bound", 1, sv <= *a.measurement_upper_bound + 1e-9, sv - *a.measurement_upper_bound, "S = " + fmt(sv) + " <= " + fmt(*a.measurement_upper_bound)));
    }
  }
  return r;
}

std::string format_suite_text(const SuiteResult& suite) {
  std::ostringstream out;
  for (const auto& c : suite.checks) {
    out << (c.asserted ? (c.passed ? "PASS" : "FAIL") : "INFO") << "  " << c.name << "  n=" << c.count;
    if (c.asserted) {
      out << " failures=" << c.failures;
    } else {
      out << (c.passed ? " claim-holds" : " claim-deviates");
    }
    out << "  " << c.detail << "\n";
  }
  out << "suite " << suite.name << ": " << (suite.ok() ? "ok" : "FAILED") << "\n";
  return out.str();
}

std::string format_suite_json(const SuiteResult& suite) {
  nlohmann::ordered_json j;
  j["suite"] = suite.name;
  j["ok"] = suite.ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : suite.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"mode", c.asserted ? "asserted" : "report"},
                           {"passed", c.passed},
                           {"count", c.count},
                           {"failures", c.failures},
                           {"value", std::isfinite(c.worst) ? nlohmann::ordered_json(c.worst) : nullptr},
                           {"detail", c.detail}});
  }
  return j.dump(2) + "\n";
}

}  // namespace steerlab
