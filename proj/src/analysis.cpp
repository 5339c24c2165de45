#include "steerlab/analysis.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "json.hpp"
#include "steerlab/error.hpp"
#include "steerlab/measures.hpp"

namespace steerlab {

namespace {

// Shortest round-trip decimal, independent of the global locale.
std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> detect_isotropic_alpha(const BipartiteState& s) {
  if (s.dA() != s.dB() || s.dA() < 2) return std::nullopt;
  const std::size_t d = s.dA();
  const double dd = static_cast<double>(d);
  const ComplexVector phi = PureEntangledState(std::vector<double>(d, 1.0 / std::sqrt(dd))).ket();
  const double fidelity = (phi.adjoint() * s.rho() * phi)(0, 0).real();
  const double alpha = (fidelity - 1.0 / (dd * dd)) / (1.0 - 1.0 / (dd * dd));
  if (alpha < -1.0 / (dd * dd - 1.0) - 1e-9 || alpha > 1.0 + 1e-9) return std::nullopt;
  if (max_abs_diff(s.rho(), isotropic(d, std::clamp(alpha, -1.0 / (dd * dd - 1.0), 1.0)).rho()) > 1e-9) return std::nullopt;
  return alpha;
}

bool has_no_click_outcome(const MeasurementAssemblage& m) {
  if (m.n_a() < 2) return false;
  const ComplexMatrix id = identity(m.dim());
  for (std::size_t x = 0; x < m.n_x(); ++x) {
    const auto& last = m.at(x, m.n_a() - 1);
    const double c = last.trace().real() / static_cast<double>(m.dim());
    if (c <= 0.0 || c >= 1.0 || max_abs_diff(last, c * id) > 1e-12) return false;
  }
  return true;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("STEERLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return kCommutativityTol;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

AnalysisReport analyze(const ProblemFile& problem, const AnalysisOptions& options, std::string digest) {
  AnalysisReport r;
  r.digest = digest.empty() ? sha256_hex(serialize_problem(problem, -1)) : std::move(digest);
  r.p = options.p;
  r.tol = options.tol;

  std::optional<StateAssemblage> assemblage;
  if (problem.state && problem.measurements) {
    if (auto v = validate_state(*problem.state); !v.ok()) throw ValidationFailure("state", v);
    if (auto v = validate_measurement(*problem.measurements); !v.ok()) throw ValidationFailure("measurements", v);
    assemblage = steer(*problem.state, *problem.measurements);
    if (problem.assemblage && assemblage_distance(*assemblage, *problem.assemblage) > kValidationTol) {
      r.warnings.push_back("stored assemblage differs from steer(state, measurements); using the latter");
    }
  } else {
    assemblage = *problem.assemblage;
  }
  if (auto v = validate_state_assemblage(*assemblage); !v.ok()) throw ValidationFailure("assemblage", v);

  const StateAssemblage& s = *assemblage;
  r.dim = s.dim();
  r.n_x = s.n_x();
  r.n_a = s.n_a();
  r.no_signaling_residual = s.no_signaling_residual();

  const Seo seo = seo_of(s);
  r.seo_dim = seo.dim;
  if (seo.source_rank_deficient) {
    r.warnings.push_back("rho_B is rank deficient; SEO compressed to its " + std::to_string(seo.dim) +
                         "-dimensional support");
  }
  const auto verdict = pairwise_commutativity(seo.elements, 1.0, options.tol);
  r.commuting = verdict.commuting;
  r.max_commutator_norm = verdict.max_norm;
  if (verdict.max_norm > options.tol / 100.0 && verdict.max_norm < options.tol * 100.0) {
    r.warnings.push_back("max commutator norm " + num(verdict.max_norm) + " is within two decades of tol; verdict is tolerance sensitive");
  }

  if (s.n_x() == 2) {
    r.steerability = sdi_steerability(seo, options.p);
    const auto g = guessing_bound(*r.steerability);
    r.p_g = g.p_g;
    r.h_min = g.h_min;
    if (s.dim() != 2 || s.n_a() != 2) {
      r.warnings.push_back("guessing bound is derived for qubit dichotomic settings");
    }
  } else {
    r.warnings.push_back("steerability monotone is defined for two settings only; S, p_g, H_min omitted");
  }
  if (problem.measurements && problem.state && problem.measurements->n_x() == 2) {
    r.measurement_upper_bound = measurement_upper_bound(*problem.measurements);
  }

  if (r.commuting) {
    const LhsModel lhs = lhs_from_commuting_seo(s, options.tol);
    r.d_lambda = lhs.d_lambda();
    r.lhs_residual = assemblage_distance(lhs_assemblage(lhs), s);
    const CqState cq = cq_from_lhs(lhs);
    r.cq_residual = assemblage_distance(steer(cq.rho_cq, cq.measurements), s);
    for (const auto& w : lhs.warnings) r.warnings.push_back(w);
  }

  if (problem.state) {
    if (auto alpha = detect_isotropic_alpha(*problem.state); alpha && std::abs(*alpha) > 1e-9 && std::abs(*alpha) < 1.0 - 1e-9) {
      r.warnings.push_back("isotropic state with alpha = " + num(*alpha) +
                           ": steerability is quadratic in alpha for this pipeline (alpha^2 = " + num(*alpha * *alpha) +
                           "), the closed form |alpha| is not reproduced");
    }
  }
  if (problem.measurements && has_no_click_outcome(*problem.measurements)) {
    r.warnings.push_back("measurements carry a no-click outcome: steerability scales as eta^2, not eta");
  }
  return r;
}

std::string format_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "digest            " << r.digest << "\n";
  out << "bob dimension     " << r.dim << " (SEO support " << r.seo_dim << ")\n";
  out << "settings/outcomes " << r.n_x << " / " << r.n_a << "\n";
  out << "SEO verdict       " << (r.commuting ? "commuting" : "noncommuting") << " (max commutator trace norm "
      << num(r.max_commutator_norm) << ", tol " << num(r.tol) << ")\n";
  out << "SDI steering      " << (r.commuting ? "not demonstrated" : "demonstrated") << "\n";
  if (r.steerability) {
    out << "S_Upsilon (p=" << num(r.p) << ")   " << num(*r.steerability) << "\n";
    out << "p_g bound         " << num(*r.p_g) << "\n";
    out << "H_min (bits)      " << num(*r.h_min) << "\n";
  }
  if (r.measurement_upper_bound) out << "Upsilon_1(M)/4    " << num(*r.measurement_upper_bound) << "\n";
  if (r.lhs_residual) {
    out << "LHS model         d_lambda = " << *r.d_lambda << ", residual " << num(*r.lhs_residual) << "\n";
    out << "CQ reproduction   residual " << num(*r.cq_residual) << "\n";
  }
  out << "no-signaling res. " << num(r.no_signaling_residual) << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string format_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["digest"] = r.digest;
  j["dim"] = r.dim;
  j["seo_dim"] = r.seo_dim;
  j["n_x"] = r.n_x;
  j["n_a"] = r.n_a;
  j["verdict"] = r.commuting ? "commuting" : "noncommuting";
  j["max_commutator_norm"] = r.max_commutator_norm;
  j["tol"] = r.tol;
  if (std::isinf(r.p)) {
    j["p"] = "inf";
  } else {
    j["p"] = r.p;
  }
  auto opt = [&](const char* key, const std::optional<double>& v) { j[key] = v ? nlohmann::ordered_json(*v) : nullptr; };
  opt("S", r.steerability);
  opt("p_g", r.p_g);
  opt("H_min", r.h_min);
  opt("measurement_upper_bound", r.measurement_upper_bound);
  j["d_lambda"] = r.d_lambda ? nlohmann::ordered_json(*r.d_lambda) : nullptr;
  opt("lhs_residual", r.lhs_residual);
  opt("cq_residual", r.cq_residual);
  j["no_signaling_residual"] = r.no_signaling_residual;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string format_csv(const AnalysisReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  std::ostringstream out;
  out << "verdict,max_commutator_norm,p,S,p_g,H_min,lhs_residual,cq_residual\n";
  out << (r.commuting ? "commuting" : "noncommuting") << "," << num(r.max_commutator_norm) << "," << num(r.p) << ","
      << opt(r.steerability) << "," << opt(r.p_g) << "," << opt(r.h_min) << "," << opt(r.lhs_residual) << ","
      << opt(r.cq_residual) << "\n";
  return out.str();
}

std::vector<double> parse_grid(const std::string& text) {
  auto parse_num = [&](const std::string& tok) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw DomainError("grid: cannot parse '" + tok + "'");
    return v;
  };
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw DomainError("grid: expected start:stop:count");
    const double lo = parse_num(parts[0]);
    const double hi = parse_num(parts[1]);
    const double count = parse_num(parts[2]);
    if (!(count >= 1.0) || count != std::floor(count)) throw DomainError("grid: count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    if (n > 1) out.back() = hi;
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (!tok.empty()) out.push_back(parse_num(tok));
  }
  return out;
}

std::optional<double> fit_exponent(const std::vector<double>& xs, const std::vector<double>& ss) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size() && i < ss.size(); ++i) {
    if (xs[i] > 0.0 && ss[i] > 1e-300) pts.emplace_back(std::log(xs[i]), std::log(ss[i]));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.family != "isotropic" && spec.family != "pure") {
    throw DomainError("sweep: unsupported family '" + spec.family + "' (isotropic or pure)");
  }
  const std::vector<double> alphas = spec.family == "pure" ? std::vector<double>{1.0} : spec.alphas;
  if (alphas.empty()) throw DomainError("sweep: empty alpha grid");
  SweepResult result;
  double sxy = 0.0;
  double sxx = 0.0;
  for (double alpha : alphas) {
    ScenarioSpec sc;
    sc.family = spec.family;
    sc.d = spec.d;
    sc.alpha = alpha;
    sc.schmidt = spec.schmidt;
    sc.measurement = spec.measurement;
    sc.seed = spec.seed;
    const Scenario base = build_scenario(sc);
    const std::vector<std::optional<double>> etas = [&] {
      std::vector<std::optional<double>> v;
      if (spec.etas.empty()) {
        v.push_back(std::nullopt);
      } else {
        for (double e : spec.etas) v.push_back(e);
      }
      return v;
    }();
    std::vector<double> ex;
    std::vector<double> ey;
    for (const auto& eta : etas) {
      const MeasurementAssemblage m = eta ? apply_inefficiency(base.measurements, *eta) : base.measurements;
      SweepRow row;
      row.alpha = alpha;
      row.eta = eta;
      row.steerability = sdi_steerability(steer(base.state, m), spec.p);
      const auto g = guessing_bound(row.steerability);
      row.p_g = g.p_g;
      row.h_min = g.h_min;
      result.rows.push_back(row);
      if (eta && *eta > 0.0 && row.steerability > 1e-300) {
        ex.push_back(std::log(*eta));
        ey.push_back(std::log(row.steerability));
      }
    }
    // pooled slope with a separate intercept per alpha
    if (ex.size() >= 2) {
      double mx = 0.0;
      double my = 0.0;
      for (std::size_t i = 0; i < ex.size(); ++i) {
        mx += ex[i];
        my += ey[i];
      }
      mx /= static_cast<double>(ex.size());
      my /= static_cast<double>(ex.size());
      for (std::size_t i = 0; i < ex.size(); ++i) {
        sxy += (ex[i] - mx) * (ey[i] - my);
        sxx += (ex[i] - mx) * (ex[i] - mx);
      }
    }
  }
  if (sxx > 0.0) result.eta_exponent = sxy / sxx;
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  const bool with_eta = !result.rows.empty() && result.rows.front().eta.has_value();
  std::ostringstream out;
  out << (with_eta ? "alpha,eta,S,p_g,H_min,eta_exponent\n" : "alpha,S,p_g,H_min\n");
  const std::string expo = result.eta_exponent ? num(*result.eta_exponent) : std::string();
  for (const auto& row : result.rows) {
    out << num(row.alpha) << ",";
    if (with_eta) out << num(*row.eta) << ",";
    out << num(row.steerability) << "," << num(row.p_g) << "," << num(row.h_min);
    if (with_eta) out << "," << expo;
    out << "\n";
  }
  return out.str();
}

}  // namespace steerlab
