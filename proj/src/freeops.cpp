#include "steerlab/freeops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steerlab/error.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

Channel Channel::identity_channel(std::size_t d) { return Channel{{steerlab::identity(d)}}; }

Channel Channel::unitary(const ComplexMatrix& u) { return Channel{{u}}; }

ComplexMatrix Channel::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return hermitian_part(out);
}

double Channel::completeness_residual() const {
  const auto d = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return max_abs_diff(sum, steerlab::identity(static_cast<std::size_t>(d)));
}

ClassicalKernel ClassicalKernel::identity(std::size_t n_x, std::size_t n_a) {
  ClassicalKernel k;
  k.output.assign(n_x, std::vector<std::vector<double>>(n_a, std::vector<double>(n_a, 0.0)));
  k.input.assign(n_x, std::vector<double>(n_x, 0.0));
  for (std::size_t x = 0; x < n_x; ++x) {
    k.input[x][x] = 1.0;
    for (std::size_t a = 0; a < n_a; ++a) k.output[x][a][a] = 1.0;
  }
  return k;
}

std::size_t FreeOperation::n_x_in() const { return kernels.front().input.front().size(); }
std::size_t FreeOperation::n_a_in() const { return kernels.front().output.front().size(); }
std::size_t FreeOperation::n_x_out() const { return kernels.front().output.size(); }
std::size_t FreeOperation::n_a_out() const { return kernels.front().output.front().front().size(); }

namespace {

void check_distribution(const std::vector<double>& w, double tol, const std::string& what) {
  double total = 0.0;
  for (double v : w) {
    if (!(v >= -tol)) throw InvalidOperationError(what + ": negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << what << ": probabilities sum to " << total;
    throw InvalidOperationError(msg.str());
  }
}

void check_kernels(const std::vector<double>& weights, const std::vector<ClassicalKernel>& kernels, double tol) {
  if (weights.empty() || weights.size() != kernels.size()) {
    throw InvalidOperationError("operation: need one kernel per randomness label");
  }
  check_distribution(weights, tol, "p(mu)");
  const auto& ref = kernels.front();
  if (ref.output.empty() || ref.input.size() != ref.output.size()) {
    throw InvalidOperationError("operation: input/output kernels disagree on the number of output settings");
  }
  const std::size_t n_x_in = ref.input.front().size();
  const std::size_t n_a_in = ref.output.front().size();
  const std::size_t n_a_out = ref.output.front().front().size();
  for (const auto& k : kernels) {
    if (k.output.size() != ref.output.size() || k.input.size() != ref.input.size()) {
      throw InvalidOperationError("operation: kernels of different shapes");
    }
    for (std::size_t xo = 0; xo < k.output.size(); ++xo) {
      if (k.input[xo].size() != n_x_in) throw InvalidOperationError("operation: ragged input kernel");
      check_distribution(k.input[xo], tol, "p(x|x',mu)");
      if (k.output[xo].size() != n_a_in) throw InvalidOperationError("operation: ragged output kernel");
      for (const auto& row : k.output[xo]) {
        if (row.size() != n_a_out) throw InvalidOperationError("operation: ragged output kernel");
        check_distribution(row, tol, "p(a'|a,x',mu)");
      }
    }
  }
}

void check_channel(const Channel& c, double tol) {
  if (c.kraus.empty()) throw InvalidOperationError("channel: no Kraus operators");
  const auto d = c.kraus.front().cols();
  for (const auto& k : c.kraus) {
    if (k.rows() != d || k.cols() != d) throw InvalidOperationError("channel: Kraus operators must be d x d");
  }
  const double r = c.completeness_residual();
  if (r > tol) {
    std::ostringstream msg;
    msg << "channel: Kraus completeness violated by " << r;
    throw InvalidOperationError(msg.str());
  }
}

void check_input_shape(const ClassicalKernel& k, std::size_t dim, std::size_t channel_dim, const StateAssemblage& s) {
  if (channel_dim != dim) throw DimensionError("operation: channel dimension does not match the assemblage");
  if (k.input.front().size() != s.n_x() || k.output.front().size() != s.n_a()) {
    throw DimensionError("operation: kernel input shape does not match the assemblage");
  }
}

// Accumulates p(mu) sum_{x,a} p(x|x',mu) p(a'|a,x',mu) channel(sigma_{a|x}).
void accumulate(OperatorFamily& out, double weight, const ClassicalKernel& k, const OperatorFamily& mapped) {
  for (std::size_t xo = 0; xo < k.output.size(); ++xo) {
    for (std::size_t x = 0; x < mapped.size(); ++x) {
      const double px = k.input[xo][x];
      if (px == 0.0) continue;
      for (std::size_t a = 0; a < mapped[x].size(); ++a) {
        for (std::size_t ao = 0; ao < k.output[xo][a].size(); ++ao) {
          const double c = weight * px * k.output[xo][a][ao];
          if (c != 0.0) out[xo][ao] += c * mapped[x][a];
        }
      }
    }
  }
}

OperatorFamily map_elements(const Channel& c, const StateAssemblage& s) {
  OperatorFamily mapped(s.n_x());
  for (std::size_t x = 0; x < s.n_x(); ++x) {
    for (std::size_t a = 0; a < s.n_a(); ++a) mapped[x].push_back(c.apply(s.at(x, a)));
  }
  return mapped;
}

OperatorFamily zero_family(const ClassicalKernel& k, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return OperatorFamily(k.output.size(), std::vector<ComplexMatrix>(k.output.front().front().size(), ComplexMatrix::Zero(d, d)));
}

ClassicalKernel random_kernel(std::size_t n_x_in, std::size_t n_a_in, std::size_t n_x_out, std::size_t n_a_out,
                              double concentration, Rng& rng) {
  ClassicalKernel k;
  k.input.resize(n_x_out);
  k.output.resize(n_x_out);
  for (std::size_t xo = 0; xo < n_x_out; ++xo) {
    k.input[xo] = dirichlet(n_x_in, concentration, rng);
    for (std::size_t a = 0; a < n_a_in; ++a) k.output[xo].push_back(dirichlet(n_a_out, concentration, rng));
  }
  return k;
}

Channel channel_from_isometry(const ComplexMatrix& v, std::size_t d, std::size_t env) {
  Channel c;
  const auto n = static_cast<Eigen::Index>(d);
  for (std::size_t k = 0; k < env; ++k) c.kraus.push_back(v.block(static_cast<Eigen::Index>(k) * n, 0, n, n));
  return c;
}

}  // namespace

void validate_operation(const FreeOperation& f, double tol) {
  check_kernels(f.weights, f.kernels, tol);
  check_channel(f.channel, tol);
}

void validate_operation(const LosrOperation& l, double tol) {
  check_kernels(l.weights, l.kernels, tol);
  if (l.channels.size() != l.weights.size()) throw InvalidOperationError("LOSR: need one channel per shared label");
  for (const auto& c : l.channels) {
    check_channel(c, tol);
    if (c.dim() != l.channels.front().dim()) throw InvalidOperationError("LOSR: channels of different dimensions");
  }
}

StateAssemblage apply_free(const FreeOperation& f, const StateAssemblage& s) {
  validate_operation(f);
  check_input_shape(f.kernels.front(), s.dim(), f.channel.dim(), s);
  const OperatorFamily mapped = map_elements(f.channel, s);
  OperatorFamily out = zero_family(f.kernels.front(), s.dim());
  for (std::size_t mu = 0; mu < f.weights.size(); ++mu) accumulate(out, f.weights[mu], f.kernels[mu], mapped);
  for (auto& row : out) {
    for (auto& e : row) e = hermitian_part(e);
  }
  return StateAssemblage(s.dim(), std::move(out));
}

StateAssemblage apply_losr(const LosrOperation& l, const StateAssemblage& s) {
  validate_operation(l);
  check_input_shape(l.kernels.front(), s.dim(), l.channels.front().dim(), s);
  OperatorFamily out = zero_family(l.kernels.front(), s.dim());
  for (std::size_t lam = 0; lam < l.weights.size(); ++lam) {
    accumulate(out, l.weights[lam], l.kernels[lam], map_elements(l.channels[lam], s));
  }
  for (auto& row : out) {
    for (auto& e : row) e = hermitian_part(e);
  }
  return StateAssemblage(s.dim(), std::move(out));
}

LosrOperation as_losr(const FreeOperation& f) {
  return LosrOperation{f.weights, f.kernels, std::vector<Channel>(f.weights.size(), f.channel)};
}

Channel random_channel(std::size_t d, std::size_t env_dim, std::uint64_t seed) {
  if (env_dim == 0) throw ParameterError("random_channel: environment dimension must be >= 1");
  Rng rng = make_rng(seed, 0xc4a7);
  if (env_dim == 1) return Channel::unitary(haar_unitary(d, rng));
  return channel_from_isometry(haar_isometry(d, d * env_dim, rng), d, env_dim);
}

FreeOperation sample_free(const FreeOpShape& shape, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0xf7ee);
  FreeOperation f;
  f.weights = dirichlet(shape.n_mu, 1.0, rng);
  for (std::size_t mu = 0; mu < shape.n_mu; ++mu) {
    f.kernels.push_back(random_kernel(shape.n_x_in, shape.n_a_in, shape.n_x_out, shape.n_a_out, 1.0, rng));
  }
  std::size_t env = shape.env_dim;
  if (env == 0) {
    std::uniform_int_distribution<std::size_t> pick(1, shape.dim * shape.dim);
    env = pick(rng);
  }
  f.channel = random_channel(shape.dim, env, rng());
  return f;
}

MonotonicityReport monotonicity_report(const StateAssemblage& s, std::size_t n, std::uint64_t seed,
                                       FreeOpClass op_class, double p) {
  if (s.n_x() != 2) throw UnsupportedScenarioError("monotonicity_report: two-setting assemblage required");
  MonotonicityReport report;
  report.op_class = op_class;
  report.samples = n;
  report.input_steerability = sdi_steerability(s, p);

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(op_class) + 0x40, k);
    FreeOperation f;
    switch (op_class) {
      case FreeOpClass::UnitaryIdentityKernels:
        f.weights = {1.0};
        f.kernels = {ClassicalKernel::identity(s.n_x(), s.n_a())};
        f.channel = Channel::unitary(haar_unitary(s.dim(), rng));
        break;
      case FreeOpClass::IdentityChannel:
      case FreeOpClass::General: {
        FreeOpShape shape;
        shape.dim = s.dim();
        shape.n_x_in = s.n_x();
        shape.n_a_in = s.n_a();
        shape.n_x_out = 2;
        shape.n_a_out = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        shape.n_mu = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        f = sample_free(shape, rng());
        if (op_class == FreeOpClass::IdentityChannel) f.channel = Channel::identity_channel(s.dim());
        break;
      }
    }
    const double out = sdi_steerability(apply_free(f, s), p);
    const double margin = std::max(0.0, out - report.input_steerability);
    total += margin;
    report.max_margin = std::max(report.max_margin, margin);
    if (margin > 1e-7) report.violations.push_back({k, margin, std::move(f)});
  }
  report.mean_margin = n > 0 ? total / static_cast<double>(n) : 0.0;
  return report;
}

LosrWitness find_losr_witness(const StateAssemblage& s, std::size_t attempts, std::uint64_t seed, double threshold) {
  if (s.n_x() != 2) throw UnsupportedScenarioError("find_losr_witness: two-setting assemblage required");
  LosrWitness w;
  w.input_steerability = sdi_steerability(s);
  for (std::size_t t = 0; t < attempts; ++t) {
    Rng rng = make_rng(seed, 0x1e33a, t);
    LosrOperation l;
    l.weights = dirichlet(2, 1.0, rng);
    for (int lam = 0; lam < 2; ++lam) {
      // low concentration favours near-deterministic relabelings
      l.kernels.push_back(random_kernel(s.n_x(), s.n_a(), 2, s.n_a(), 0.3, rng));
      l.channels.push_back(Channel::unitary(haar_unitary(s.dim(), rng)));
    }
    ++w.tried;
    const double out = sdi_steerability(apply_losr(l, s));
    if (out > threshold) {
      w.found = true;
      w.operation = std::move(l);
      w.output_steerability = out;
      return w;
    }
    w.output_steerability = std::max(w.output_steerability, out);
  }
  return w;
}

}  // namespace steerlab
