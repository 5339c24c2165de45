#include "steerlab/seo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "steerlab/error.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

Seo seo_of(const StateAssemblage& s, double tol) {
  const SupportRoot root = pinv_sqrt(s.reduced(), tol);
  Seo out;
  out.dim = root.support_dim;
  out.isometry = root.isometry;
  out.source_rank_deficient = !root.full_rank;
  out.reduced = hermitian_part(root.compress(s.reduced()));
  out.elements.resize(s.n_x());
  for (std::size_t x = 0; x < s.n_x(); ++x) {
    out.elements[x].reserve(s.n_a());
    for (std::size_t a = 0; a < s.n_a(); ++a) {
      out.elements[x].push_back(hermitian_part(root.inv_sqrt * root.compress(s.at(x, a)) * root.inv_sqrt));
    }
  }
  return out;
}

CommutativityVerdict pairwise_commutativity(const OperatorFamily& elements, double p, double tol) {
  std::vector<std::pair<ElementIndex, const ComplexMatrix*>> flat;
  for (std::size_t x = 0; x < elements.size(); ++x) {
    for (std::size_t a = 0; a < elements[x].size(); ++a) flat.push_back({{x, a}, &elements[x][a]});
  }
  CommutativityVerdict v;
  bool have_pair = false;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const double n = schatten_norm(commutator(*flat[i].second, *flat[j].second), p);
      if (!have_pair || n > v.max_norm) {
        have_pair = true;
        v.max_norm = n;
        v.first = flat[i].first;
        v.second = flat[j].first;
      }
    }
  }
  v.commuting = v.max_norm <= tol;
  return v;
}

namespace {

// Largest off-diagonal magnitude of U^dag E U over all operators.
double offdiag_residual(const ComplexMatrix& u, const std::vector<const ComplexMatrix*>& ops) {
  double worst = 0.0;
  for (const auto* e : ops) {
    ComplexMatrix t = u.adjoint() * (*e) * u;
    t.diagonal().setZero();
    if (t.size() > 0) worst = std::max(worst, t.cwiseAbs().maxCoeff());
  }
  return worst;
}

struct BasisSearch {
  ComplexMatrix basis;
  double residual = 0.0;
  int attempts = 0;
};

// Diagonalizes random real combinations of `ops` until one eigenbasis
// diagonalizes every operator to within tol.
std::optional<BasisSearch> search_common_basis(const std::vector<const ComplexMatrix*>& ops, double tol, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = ops.front()->rows();
  for (int attempt = 1; attempt <= kEigenbasisRetryCap; ++attempt) {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (const auto* e : ops) h += normal(rng) * hermitian_part(*e);
    const ComplexMatrix u = eigh(h).vectors;
    const double res = offdiag_residual(u, ops);
    if (res <= tol) return BasisSearch{u, res, attempt};
  }
  return std::nullopt;
}

std::vector<const ComplexMatrix*> flatten(const OperatorFamily& f) {
  std::vector<const ComplexMatrix*> ops;
  for (const auto& row : f) {
    for (const auto& e : row) ops.push_back(&e);
  }
  return ops;
}

}  // namespace

IncoherentResult incoherent_decomposition(const OperatorFamily& elements, double tol, std::uint64_t seed) {
  if (elements.empty() || elements.front().empty()) throw DimensionError("incoherent_decomposition: empty family");
  const auto verdict = pairwise_commutativity(elements, 1.0, tol);
  if (!verdict.commuting) return Refusal{verdict.max_norm};

  Rng rng = make_rng(seed, 0xd1a6);
  const auto ops = flatten(elements);
  const auto found = search_common_basis(ops, tol, rng);
  if (!found) {
    throw DegeneracyError("incoherent_decomposition: no common eigenbasis after retry cap");
  }
  CommonBasis out;
  out.basis = found->basis;
  out.attempts = found->attempts;
  out.coefficients.resize(elements.size());
  for (std::size_t x = 0; x < elements.size(); ++x) {
    for (const auto& e : elements[x]) {
      const RealVector alpha = (out.basis.adjoint() * e * out.basis).diagonal().real();
      const ComplexMatrix rebuilt = out.basis * alpha.asDiagonal() * out.basis.adjoint();
      out.residual = std::max(out.residual, max_abs_diff(rebuilt, e));
      out.coefficients[x].push_back(alpha);
    }
  }
  return out;
}

ValidationReport validate_lhs(const LhsModel& l, double tol) {
  ValidationReport report;
  double total = 0.0;
  for (std::size_t k = 0; k < l.d_lambda(); ++k) {
    const double w = l.weights[k];
    total += w;
    if (w < -tol) report.violations.push_back({"weight", -1, static_cast<int>(k), -w});
    const auto& rho = l.states[k];
    if (!is_psd(rho, tol)) report.violations.push_back({"state-positivity", -1, static_cast<int>(k), 1.0});
    const double tr = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr > tol) report.violations.push_back({"state-trace", -1, static_cast<int>(k), tr});
    for (std::size_t x = 0; x < l.response[k].size(); ++x) {
      double row = 0.0;
      for (std::size_t a = 0; a < l.response[k][x].size(); ++a) {
        const double p = l.response[k][x][a];
        row += p;
        if (p < -tol || p > 1.0 + tol) {
          report.violations.push_back({"response-range", static_cast<int>(x), static_cast<int>(a), std::abs(p)});
        }
      }
      if (std::abs(row - 1.0) > tol) report.violations.push_back({"response-normalization", static_cast<int>(x), -1, std::abs(row - 1.0)});
    }
  }
  if (std::abs(total - 1.0) > tol) report.violations.push_back({"weight-normalization", -1, -1, std::abs(total - 1.0)});
  return report;
}

StateAssemblage lhs_assemblage(const LhsModel& l) {
  if (l.d_lambda() == 0) throw DimensionError("lhs_assemblage: empty model");
  const auto d = static_cast<Eigen::Index>(l.dim());
  OperatorFamily out(l.n_x(), std::vector<ComplexMatrix>(l.n_a(), ComplexMatrix::Zero(d, d)));
  for (std::size_t k = 0; k < l.d_lambda(); ++k) {
    for (std::size_t x = 0; x < l.n_x(); ++x) {
      for (std::size_t a = 0; a < l.n_a(); ++a) out[x][a] += (l.weights[k] * l.response[k][x][a]) * l.states[k];
    }
  }
  return StateAssemblage(l.dim(), std::move(out));
}

LhsModel lhs_from_commuting_seo(const StateAssemblage& s, double tol) {
  const Seo seo = seo_of(s);
  const auto verdict = pairwise_commutativity(seo.elements, 1.0, tol);
  if (!verdict.commuting) {
    std::ostringstream msg;
    msg << "lhs_from_commuting_seo: SEO is noncommuting (max commutator trace norm " << verdict.max_norm << ")";
    throw PreconditionError(msg.str(), verdict.max_norm);
  }

  LhsModel model;
  Rng rng = make_rng(0, 0x1a5);
  auto ops = flatten(seo.elements);

  // Prefer a basis that also diagonalizes rho_B; then the hidden states are
  // exactly the eigen-projections of rho_B weighted by its spectrum.
  bool reduced_commutes = true;
  for (const auto* e : ops) {
    if (schatten_norm(commutator(*e, seo.reduced), 1.0) > tol) {
      reduced_commutes = false;
      break;
    }
  }
  std::optional<BasisSearch> found;
  if (reduced_commutes) {
    auto with_reduced = ops;
    with_reduced.push_back(&seo.reduced);
    found = search_common_basis(with_reduced, tol, rng);
  }
  if (!found) {
    found = search_common_basis(ops, tol, rng);
    model.warnings.push_back("hidden-state basis taken from the SEO alone: it does not diagonalize rho_B");
  }
  if (!found) throw DegeneracyError("lhs_from_commuting_seo: no common eigenbasis after retry cap");

  const RealVector spectrum = eigh(seo.reduced).values;
  for (Eigen::Index i = 1; i < spectrum.size(); ++i) {
    if (std::abs(spectrum(i) - spectrum(i - 1)) <= 1e-9 * std::max(1.0, spectrum.maxCoeff())) {
      model.warnings.push_back("rho_B has a degenerate spectrum; hidden-state basis is not unique");
      break;
    }
  }
  if (seo.source_rank_deficient) model.warnings.push_back("rho_B is rank deficient; model built on its support");

  const ComplexMatrix root = herm_sqrt(seo.reduced);
  const ComplexMatrix& u = found->basis;
  double top = 0.0;
  std::vector<double> weights;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    weights.push_back((u.col(k).adjoint() * seo.reduced * u.col(k))(0, 0).real());
    top = std::max(top, weights.back());
  }
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const double w = weights[static_cast<std::size_t>(k)];
    if (w <= kZeroThreshold * top) continue;  // dropped: zero-weight hidden variable
    const ComplexVector v = seo.isometry * (root * u.col(k));
    model.weights.push_back(w);
    model.states.push_back(hermitian_part(v * v.adjoint() / w));
    std::vector<std::vector<double>> table(seo.n_x());
    for (std::size_t x = 0; x < seo.n_x(); ++x) {
      for (std::size_t a = 0; a < seo.n_a(); ++a) {
        table[x].push_back((u.col(k).adjoint() * seo.at(x, a) * u.col(k))(0, 0).real());
      }
    }
    model.response.push_back(std::move(table));
  }
  return model;
}

CqState cq_from_lhs(const LhsModel& l) {
  const std::size_t k = l.d_lambda();
  if (k == 0) throw DimensionError("cq_from_lhs: empty model");
  const auto dl = static_cast<Eigen::Index>(k);
  const std::size_t dB = l.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(dl * static_cast<Eigen::Index>(dB), dl * static_cast<Eigen::Index>(dB));
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix proj = ComplexMatrix::Zero(dl, dl);
    proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    rho += l.weights[i] * tensor(proj, l.states[i]);
  }
  OperatorFamily meas(l.n_x(), std::vector<ComplexMatrix>(l.n_a(), ComplexMatrix::Zero(dl, dl)));
  for (std::size_t x = 0; x < l.n_x(); ++x) {
    for (std::size_t a = 0; a < l.n_a(); ++a) {
      for (std::size_t i = 0; i < k; ++i) {
        meas[x][a](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = l.response[i][x][a];
      }
    }
  }
  return CqState{l.weights, l.states, BipartiteState(k, dB, std::move(rho)),
                 MeasurementAssemblage(k, std::move(meas))};
}

}  // namespace steerlab
