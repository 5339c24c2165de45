#pragma once

// End-to-end analysis of a problem file, parameter sweeps and their
// serialized forms (text, JSON, CSV).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/error.hpp"
#include "steerlab/io.hpp"
#include "steerlab/scenarios.hpp"
#include "steerlab/seo.hpp"

namespace steerlab {

struct AnalysisOptions {
  double p = 1.0;
  double tol = kCommutativityTol;
  std::uint64_t seed = 0;
};

/// Default tolerance, overridden by the STEERLAB_TOL environment variable
/// when it holds a positive number.
double default_tolerance();

/// Thrown by analyze() when an input object fails validation.
class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string& what, ValidationReport report)
      : Error(what + ": " + report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

struct AnalysisReport {
  std::string digest;
  std::size_t dim = 0;  // Bob's dimension
  std::size_t n_x = 0;
  std::size_t n_a = 0;
  std::size_t seo_dim = 0;
  bool commuting = true;
  double max_commutator_norm = 0.0;
  double p = 1.0;
  double tol = kCommutativityTol;
  std::optional<double> steerability;
  std::optional<double> p_g;
  std::optional<double> h_min;
  std::optional<double> measurement_upper_bound;
  std::optional<std::size_t> d_lambda;
  std::optional<double> lhs_residual;
  std::optional<double> cq_residual;
  double no_signaling_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Uses state + measurements when both are present (steering them), the
/// raw assemblage otherwise. Throws ValidationFailure on invalid input.
AnalysisReport analyze(const ProblemFile& problem, const AnalysisOptions& options, std::string digest = {});

/// SHA-256 of `bytes`, lower-case hex.
std::string sha256_hex(std::string_view bytes);

std::string format_text(const AnalysisReport& r);
std::string format_json(const AnalysisReport& r);
std::string format_csv(const AnalysisReport& r);

/// "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_grid(const std::string& text);

struct SweepSpec {
  std::string family = "isotropic";  // "isotropic" or "pure"
  std::size_t d = 2;
  std::vector<double> alphas{1.0};
  std::vector<double> schmidt;
  /// Empty: ideal detectors.
  std::vector<double> etas;
  MeasurementKind measurement = MeasurementKind::Mub;
  double p = 1.0;
  std::uint64_t seed = 0;
};

struct SweepRow {
  double alpha = 0.0;
  std::optional<double> eta;
  double steerability = 0.0;
  double p_g = 1.0;
  double h_min = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order: alpha-major, then eta
  /// Least-squares slope of log S against log eta, within each alpha.
  std::optional<double> eta_exponent;
};

/// Throws DomainError on an empty grid or invalid parameters.
SweepResult run_sweep(const SweepSpec& spec);

/// Header "alpha,S,p_g,H_min" (plus "eta" and "eta_exponent" columns for
/// efficiency sweeps). '.' decimal point, '\n' line endings.
std::string sweep_csv(const SweepResult& result);

/// Least-squares exponent k in S ~ c * x^k over points with x, S > 0.
std::optional<double> fit_exponent(const std::vector<double>& xs, const std::vector<double>& ss);

}  // namespace steerlab
