#include "steerlab/assemblage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steerlab/error.hpp"

namespace steerlab {

void check_family_shape(const OperatorFamily& family, std::size_t dim, const char* what) {
  if (dim == 0) throw DimensionError(std::string(what) + ": dimension must be positive");
  if (family.empty() || family.front().empty()) {
    throw DimensionError(std::string(what) + ": needs at least one setting and one outcome");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  const std::size_t n_a = family.front().size();
  for (std::size_t x = 0; x < family.size(); ++x) {
    if (family[x].size() != n_a) {
      std::ostringstream msg;
      msg << what << ": setting " << x << " has " << family[x].size() << " outcomes, expected " << n_a;
      throw DimensionError(msg.str());
    }
    for (std::size_t a = 0; a < n_a; ++a) {
      const auto& e = family[x][a];
      if (e.rows() != d || e.cols() != d) {
        std::ostringstream msg;
        msg << what << ": element (x=" << x << ", a=" << a << ") is " << e.rows() << "x" << e.cols()
            << ", expected " << dim << "x" << dim;
        throw DimensionError(msg.str());
      }
    }
  }
}

const Violation* ValidationReport::worst() const noexcept {
  if (violations.empty()) return nullptr;
  return &*std::max_element(violations.begin(), violations.end(),
                            [](const Violation& l, const Violation& r) { return l.magnitude < r.magnitude; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  const Violation* w = worst();
  out << "; worst: " << w->kind;
  if (w->x >= 0) out << " at x=" << w->x;
  if (w->a >= 0) out << ", a=" << w->a;
  out << " (magnitude " << w->magnitude << ")";
  return out.str();
}

MeasurementAssemblage::MeasurementAssemblage(std::size_t dim, OperatorFamily elements)
    : dim_(dim), elements_(std::move(elements)) {
  check_family_shape(elements_, dim_, "MeasurementAssemblage");
}

BipartiteState::BipartiteState(std::size_t dA, std::size_t dB, ComplexMatrix rho)
    : dA_(dA), dB_(dB), rho_(std::move(rho)) {
  const auto n = static_cast<Eigen::Index>(dA * dB);
  if (dA == 0 || dB == 0 || rho_.rows() != n || rho_.cols() != n) {
    std::ostringstream msg;
    msg << "BipartiteState: matrix is " << rho_.rows() << "x" << rho_.cols() << ", expected " << n << "x" << n;
    throw DimensionError(msg.str());
  }
}

StateAssemblage::StateAssemblage(std::size_t dim, OperatorFamily elements)
    : dim_(dim), elements_(std::move(elements)) {
  check_family_shape(elements_, dim_, "StateAssemblage");
  reduced_ = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& e : elements_.front()) reduced_ += e;
}

double StateAssemblage::no_signaling_residual() const {
  double worst = 0.0;
  for (std::size_t x = 1; x < n_x(); ++x) {
    ComplexMatrix sum = ComplexMatrix::Zero(reduced_.rows(), reduced_.cols());
    for (const auto& e : elements_[x]) sum += e;
    worst = std::max(worst, max_abs_diff(sum, reduced_));
  }
  return worst;
}

double StateAssemblage::probability(std::size_t x, std::size_t a) const { return at(x, a).trace().real(); }

PureEntangledState::PureEntangledState(std::vector<double> schmidt, double tol) : schmidt_(std::move(schmidt)) {
  if (schmidt_.empty()) throw DomainError("PureEntangledState: empty Schmidt spectrum");
  double norm = 0.0;
  for (double c : schmidt_) {
    if (!std::isfinite(c) || c < 0.0) throw DomainError("PureEntangledState: Schmidt coefficients must be >= 0");
    norm += c * c;
  }
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "PureEntangledState: sum of squared Schmidt coefficients is " << norm << ", expected 1";
    throw DomainError(msg.str());
  }
}

std::size_t PureEntangledState::schmidt_number(double tol) const {
  return static_cast<std::size_t>(std::count_if(schmidt_.begin(), schmidt_.end(), [tol](double c) { return c > tol; }));
}

ComplexVector PureEntangledState::ket() const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = schmidt_[static_cast<std::size_t>(i)];
  return v;
}

BipartiteState PureEntangledState::density() const {
  const ComplexVector v = ket();
  return BipartiteState(dim(), dim(), v * v.adjoint());
}

ValidationReport validate_measurement(const MeasurementAssemblage& m, double tol) {
  ValidationReport report;
  const ComplexMatrix id = identity(m.dim());
  for (std::size_t x = 0; x < m.n_x(); ++x) {
    ComplexMatrix sum = ComplexMatrix::Zero(id.rows(), id.cols());
    for (std::size_t a = 0; a < m.n_a(); ++a) {
      const auto& e = m.at(x, a);
      sum += e;
      const double herm = (e - e.adjoint()).cwiseAbs().maxCoeff();
      if (herm > tol) {
        report.violations.push_back({"hermiticity", static_cast<int>(x), static_cast<int>(a), herm});
        continue;
      }
      const RealVector ev = eigh(e).values;
      if (ev.minCoeff() < -tol) {
        report.violations.push_back({"positivity", static_cast<int>(x), static_cast<int>(a), -ev.minCoeff()});
      }
      if (ev.maxCoeff() > 1.0 + tol) {
        report.violations.push_back({"upper-bound", static_cast<int>(x), static_cast<int>(a), ev.maxCoeff() - 1.0});
      }
    }
    const double comp = max_abs_diff(sum, id);
    if (comp > tol) report.violations.push_back({"completeness", static_cast<int>(x), -1, comp});
  }
  return report;
}

ValidationReport validate_state(const BipartiteState& s, double tol) {
  ValidationReport report;
  const auto& rho = s.rho();
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    report.violations.push_back({"hermiticity", -1, -1, herm});
    return report;
  }
  const double lo = eigh(rho).values.minCoeff();
  if (lo < -tol) report.violations.push_back({"positivity", -1, -1, -lo});
  const double tr = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr > tol) report.violations.push_back({"trace", -1, -1, tr});
  return report;
}

ValidationReport validate_state_assemblage(const StateAssemblage& s, double tol) {
  ValidationReport report;
  for (std::size_t x = 0; x < s.n_x(); ++x) {
    for (std::size_t a = 0; a < s.n_a(); ++a) {
      const auto& e = s.at(x, a);
      const double herm = (e - e.adjoint()).cwiseAbs().maxCoeff();
      if (herm > tol) {
        report.violations.push_back({"hermiticity", static_cast<int>(x), static_cast<int>(a), herm});
        continue;
      }
      const double lo = eigh(e).values.minCoeff();
      if (lo < -tol) report.violations.push_back({"positivity", static_cast<int>(x), static_cast<int>(a), -lo});
      const double p = s.probability(x, a);
      if (p > 1.0 + tol) report.violations.push_back({"probability", static_cast<int>(x), static_cast<int>(a), p - 1.0});
    }
  }
  const double ns = s.no_signaling_residual();
  if (ns > tol) report.violations.push_back({"no-signaling", -1, -1, ns});
  const double tr = std::abs(s.reduced().trace() - Complex(1.0, 0.0));
  if (tr > tol) report.violations.push_back({"trace", -1, -1, tr});
  return report;
}

StateAssemblage steer(const BipartiteState& state, const MeasurementAssemblage& m) {
  if (m.dim() != state.dA()) {
    std::ostringstream msg;
    msg << "steer: measurement dimension " << m.dim() << " does not match dA = " << state.dA();
    throw DimensionError(msg.str());
  }
  const ComplexMatrix idB = identity(state.dB());
  OperatorFamily out(m.n_x());
  for (std::size_t x = 0; x < m.n_x(); ++x) {
    out[x].reserve(m.n_a());
    for (std::size_t a = 0; a < m.n_a(); ++a) {
      const ComplexMatrix lifted = tensor(m.at(x, a), idB) * state.rho();
      out[x].push_back(hermitian_part(partial_trace_first(lifted, state.dA(), state.dB())));
    }
  }
  return StateAssemblage(state.dB(), std::move(out));
}

StateAssemblage assemblage_from_pure(const PureEntangledState& psi, const MeasurementAssemblage& m) {
  if (m.dim() != psi.dim()) throw DimensionError("assemblage_from_pure: measurement/state dimension mismatch");
  const auto d = static_cast<Eigen::Index>(psi.dim());
  RealVector root(d);
  for (Eigen::Index i = 0; i < d; ++i) root(i) = psi.schmidt()[static_cast<std::size_t>(i)];
  OperatorFamily out(m.n_x());
  for (std::size_t x = 0; x < m.n_x(); ++x) {
    for (std::size_t a = 0; a < m.n_a(); ++a) {
      out[x].push_back(root.asDiagonal() * m.at(x, a).transpose() * root.asDiagonal());
    }
  }
  return StateAssemblage(psi.dim(), std::move(out));
}

MeasurementAssemblage apply_inefficiency(const MeasurementAssemblage& m, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("apply_inefficiency: eta must lie in [0, 1]");
  const ComplexMatrix no_click = (1.0 - eta) * identity(m.dim());
  OperatorFamily out(m.n_x());
  for (std::size_t x = 0; x < m.n_x(); ++x) {
    for (std::size_t a = 0; a < m.n_a(); ++a) out[x].push_back(eta * m.at(x, a));
    out[x].push_back(no_click);
  }
  return MeasurementAssemblage(m.dim(), std::move(out));
}

StateAssemblage mix(double p, const StateAssemblage& s1, const StateAssemblage& s2) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mix: weight must lie in [0, 1]");
  if (s1.dim() != s2.dim() || s1.n_x() != s2.n_x() || s1.n_a() != s2.n_a()) {
    throw DimensionError("mix: assemblage shapes differ");
  }
  OperatorFamily out(s1.n_x());
  for (std::size_t x = 0; x < s1.n_x(); ++x) {
    for (std::size_t a = 0; a < s1.n_a(); ++a) out[x].push_back(p * s1.at(x, a) + (1.0 - p) * s2.at(x, a));
  }
  return StateAssemblage(s1.dim(), std::move(out));
}

double assemblage_distance(const StateAssemblage& s1, const StateAssemblage& s2) {
  if (s1.dim() != s2.dim() || s1.n_x() != s2.n_x() || s1.n_a() != s2.n_a()) {
    throw DimensionError("assemblage_distance: assemblage shapes differ");
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < s1.n_x(); ++x) {
    for (std::size_t a = 0; a < s1.n_a(); ++a) worst = std::max(worst, max_abs_diff(s1.at(x, a), s2.at(x, a)));
  }
  return worst;
}

}  // namespace steerlab
