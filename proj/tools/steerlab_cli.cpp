// steerlab command line: analyze, scenario, sweep, verify.
//
// Exit codes: 0 ok, 1 bad parameter or usage, 2 validation failure,
// 3 parse/schema failure, 4 unreadable file, 5 asserted invariant failed.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "steerlab/analysis.hpp"
#include "steerlab/batteries.hpp"
#include "steerlab/error.hpp"

namespace {

using namespace steerlab;

enum Exit : int { kOk = 0, kParam = 1, kInvalid = 2, kParse = 3, kUnreadable = 4, kInvariant = 5 };

struct Common {
  std::string p = "1";
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string output;
};

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfNorm;
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(v >= 1.0)) {
    throw ParameterError("--p must be a real number >= 1 or 'inf', got '" + text + "'");
  }
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw FileError("cannot write '" + path + "'");
}

MeasurementKind parse_kind(const std::string& s) {
  if (s == "mub") return MeasurementKind::Mub;
  if (s == "random") return MeasurementKind::Random;
  if (s == "bloch") return MeasurementKind::Bloch;
  throw ParameterError("--meas must be mub, random or bloch");
}

std::vector<BlochVector> parse_bloch(const std::string& s) {
  std::vector<BlochVector> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ';');) {
    const auto v = parse_grid(part);
    if (v.size() != 3) throw ParameterError("--bloch expects 'x,y,z;x,y,z'");
    out.emplace_back(v[0], v[1], v[2]);
  }
  if (out.size() != 2) throw ParameterError("--bloch expects two vectors");
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool with_format) {
  cmd->add_option("--p", c.p, "Schatten index: real >= 1 or inf")->capture_default_str();
  cmd->add_option("--tol", c.tol, "commutativity tolerance (default 1e-8, or STEERLAB_TOL)");
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  if (with_format) cmd->add_option("--format", c.format, "text, json or csv")->capture_default_str();
  cmd->add_option("-o,--output", c.output, "output file (default stdout)");
}

AnalysisOptions options_of(const Common& c) {
  AnalysisOptions o;
  o.p = parse_p(c.p);
  o.tol = c.tol > 0.0 ? c.tol : default_tolerance();
  o.seed = c.seed;
  return o;
}

int run(int argc, char** argv) {
  CLI::App app{"steerlab: semi-device-independent steering via steering-equivalent observables"};
  app.require_subcommand(1);

  Common common;

  std::string analyze_file;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a JSON problem file");
  analyze_cmd->add_option("file", analyze_file, "problem file")->required();
  add_common(analyze_cmd, common, true);

  std::string family;
  ScenarioSpec spec;
  std::string schmidt;
  std::string meas = "mub";
  std::string bloch;
  double eta = -1.0;
  auto* scenario_cmd = app.add_subcommand("scenario", "write a named scenario as a JSON problem file");
  scenario_cmd->add_option("family", family, "isotropic, pure, product or random")->required();
  scenario_cmd->add_option("--d", spec.d, "local dimension")->capture_default_str();
  scenario_cmd->add_option("--alpha", spec.alpha, "isotropic visibility")->capture_default_str();
  scenario_cmd->add_option("--schmidt", schmidt, "Schmidt coefficients, comma separated");
  scenario_cmd->add_option("--meas", meas, "mub, random or bloch")->capture_default_str();
  scenario_cmd->add_option("--bloch", bloch, "two Bloch vectors 'x,y,z;x,y,z' for --meas bloch");
  scenario_cmd->add_option("--sharpness", spec.sharpness, "sharpness of Bloch measurements")->capture_default_str();
  scenario_cmd->add_option("--eta", eta, "detection efficiency");
  add_common(scenario_cmd, common, false);

  SweepSpec sweep;
  std::string alpha_grid = "0:1:101";
  std::string eta_grid;
  std::string sweep_schmidt;
  std::string sweep_meas = "mub";
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate S, p_g and H_min over a parameter grid (CSV)");
  sweep_cmd->add_option("family", sweep.family, "isotropic or pure")->required();
  sweep_cmd->add_option("--d", sweep.d, "local dimension")->capture_default_str();
  sweep_cmd->add_option("--alpha", alpha_grid, "alpha grid: a,b,c or start:stop:count")->capture_default_str();
  sweep_cmd->add_option("--eta", eta_grid, "efficiency grid: a,b,c or start:stop:count");
  sweep_cmd->add_option("--schmidt", sweep_schmidt, "Schmidt coefficients for the pure family");
  sweep_cmd->add_option("--meas", sweep_meas, "mub or random")->capture_default_str();
  add_common(sweep_cmd, common, false);

  std::string verify_file;
  std::string suite;
  double scale = 1.0;
  auto* verify_cmd = app.add_subcommand("verify", "run invariant batteries or check one problem file");
  verify_cmd->add_option("file", verify_file, "problem file");
  verify_cmd->add_option("--suite", suite, "core or discrepancies");
  verify_cmd->add_option("--scale", scale, "multiplier for sample budgets")->capture_default_str();
  add_common(verify_cmd, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParam;
  }

  try {
    if (analyze_cmd->parsed()) {
      const AnalysisOptions o = options_of(common);
      const std::string text = slurp(analyze_file);
      const ProblemFile problem = parse_problem(text);
      const AnalysisReport r = analyze(problem, o, sha256_hex(text));
      if (common.format == "json") {
        emit(format_json(r), common.output);
      } else if (common.format == "csv") {
        emit(format_csv(r), common.output);
      } else if (common.format == "text") {
        emit(format_text(r), common.output);
      } else {
        throw ParameterError("--format must be text, json or csv");
      }
      return kOk;
    }
    if (scenario_cmd->parsed()) {
      spec.family = family;
      spec.schmidt = parse_grid(schmidt);
      spec.measurement = parse_kind(meas);
      if (!bloch.empty()) spec.bloch = parse_bloch(bloch);
      if (scenario_cmd->count("--eta") > 0) spec.eta = eta;
      spec.seed = common.seed;
      const Scenario sc = build_scenario(spec);
      ProblemFile out;
      out.dA = sc.state.dA();
      out.dB = sc.state.dB();
      out.state = sc.state;
      out.measurements = sc.measurements;
      out.assemblage = steer(sc.state, sc.measurements);
      emit(serialize_problem(out), common.output);
      return kOk;
    }
    if (sweep_cmd->parsed()) {
      sweep.alphas = parse_grid(alpha_grid);
      sweep.etas = parse_grid(eta_grid);
      sweep.schmidt = parse_grid(sweep_schmidt);
      sweep.measurement = parse_kind(sweep_meas);
      sweep.p = parse_p(common.p);
      sweep.seed = common.seed;
      if (sweep_cmd->count("--eta") > 0 && sweep.etas.empty()) throw DomainError("sweep: empty eta grid");
      emit(sweep_csv(run_sweep(sweep)), common.output);
      return kOk;
    }
    if (verify_cmd->parsed()) {
      SuiteResult result;
      if (!suite.empty()) {
        const SuiteOptions so{.seed = common.seed, .scale = scale};
        if (suite == "core") {
          result = run_core_suite(so);
        } else if (suite == "discrepancies") {
          result = run_discrepancy_suite(so);
        } else {
          throw ParameterError("--suite must be core or discrepancies");
        }
      } else if (!verify_file.empty()) {
        const AnalysisOptions o = options_of(common);
        result = verify_problem(parse_problem(slurp(verify_file)), o);
      } else {
        throw ParameterError("verify needs a file or --suite");
      }
      emit(common.format == "json" ? format_suite_json(result) : format_suite_text(result), common.output);
      return result.ok() ? kOk : kInvariant;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnreadable;
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParam;
  }
  return kParam;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
