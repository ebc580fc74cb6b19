#include "spinstar/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinstar/error.hpp"

namespace spinstar {

namespace {

// exp(-x) / (2 cosh x) without overflow.
double up_population(double x) { return x > 0.0 ? std::exp(-2.0 * x) / (1.0 + std::exp(-2.0 * x)) : 1.0 / (1.0 + std::exp(2.0 * x)); }

double wrap_phase(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return std::abs(a);
}

}  // namespace

CorrelationSample bath_correlation(const ModelParams& params, double dt) {
  params.validate();
  if (params.beta.is_infinite()) return CorrelationSample{dt, cplx(0.0)};
  const double x = 0.5 * params.beta.value() * params.omega;
  const double modulus = params.g * params.g * params.n_spins * up_population(x);
  return CorrelationSample{dt, modulus * std::exp(cplx(0.0, -0.5 * params.omega * dt))};
}

cplx bath_correlation_numeric(const ModelParams& params, double t, double t_prime, int oracle_limit) {
  params.validate();
  const int n = params.n_spins;
  if (n > oracle_limit) {
    raise(ErrorKind::ResourceLimit, "N = " + std::to_string(n) + " exceeds the oracle limit " + std::to_string(oracle_limit));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double p_up =
      params.beta.is_infinite() ? 0.0 : up_population(0.5 * params.beta.value() * params.omega);

  Eigen::VectorXd energy(dim);
  Eigen::VectorXd rho(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    double e = 0.0;
    double p = 1.0;
    for (int b = 0; b < n; ++b) {
      const bool down = (s >> b) & 1;
      e += down ? -0.5 * params.omega : 0.5 * params.omega;
      p *= down ? 1.0 - p_up : p_up;
    }
    energy(s) = e;
    rho(s) = p;
  }

  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (int b = 0; b < n; ++b) {
      if (((s >> b) & 1) == 0) gamma(s | (Eigen::Index{1} << b), s) += params.g;
    }
  }
  auto heisenberg = [&](double time) {
    const Eigen::VectorXcd u = (energy.cast<cplx>() * cplx(0.0, time)).array().exp().matrix();
    return Eigen::MatrixXcd(u.asDiagonal() * gamma * u.conjugate().asDiagonal());
  };
  const Eigen::MatrixXcd g_t = heisenberg(t);
  const Eigen::MatrixXcd g_tp = heisenberg(t_prime);
  const Eigen::MatrixXcd prod = g_tp.adjoint() * g_t;
  cplx acc(0.0);
  for (Eigen::Index s = 0; s < dim; ++s) acc += rho(s) * prod(s, s);
  return acc;
}

double rabi_frequency(const ModelParams& params) {
  return 2.0 * std::sqrt(static_cast<double>(params.n_spins)) * params.g;
}

CorrelationPhaseReport correlation_phase_report(const ModelParams& params, std::span<const double> dts,
                                                int oracle_limit) {
  if (params.beta.is_infinite()) raise(ErrorKind::InvalidParameter, "the correlation vanishes at beta = inf");
  if (dts.empty()) raise(ErrorKind::InvalidInput, "no dt samples");
  CorrelationPhaseReport r;
  const cplx num0 = bath_correlation_numeric(params, 0.0, 0.0, oracle_limit);
  const cplx ana0 = bath_correlation(params, 0.0).value;
  // rates from the smallest nonzero |dt|, where the phase is unambiguous
  double probe = 0.0;
  for (double dt : dts) {
    if (dt != 0.0 && (probe == 0.0 || std::abs(dt) < std::abs(probe))) probe = dt;
  }
  if (probe != 0.0) {
    r.printed_rate = -std::arg(bath_correlation(params, probe).value / ana0) / probe;
    r.observed_rate = -std::arg(bath_correlation_numeric(params, probe, 0.0, oracle_limit) / num0) / probe;
  }
  for (double dt : dts) {
    const cplx a = bath_correlation(params, dt).value;
    const cplx b = bath_correlation_numeric(params, dt, 0.0, oracle_limit);
    r.max_modulus_deviation = std::max(r.max_modulus_deviation, std::abs(std::abs(a) - std::abs(b)));
    r.max_phase_deviation = std::max(r.max_phase_deviation, wrap_phase(std::arg(a) - std::arg(b)));
  }
  r.phases_agree = r.max_phase_deviation <= 1e-9;
  return r;
}

std::vector<TransitionLine> single_mode_transition_lines(const ModelParams& params, int cutoff) {
  const Eigen::MatrixXd h = build_single_mode_hamiltonian(params, cutoff).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) raise(ErrorKind::InvalidOperator, "eigensolver did not converge");
  const Eigen::VectorXd& e = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::Index dim = h.rows();
  // |up, n=0> is basis index 0
  const Eigen::VectorXd c = v.row(0).transpose();
  // <a|P_up|b>
  const Eigen::MatrixXd p_up = v.topRows(cutoff).transpose() * v.topRows(cutoff);

  std::vector<TransitionLine> raw;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      const double w = 2.0 * std::abs(c(a) * c(b) * p_up(a, b));
      if (w > 1e-14) raw.push_back(TransitionLine{e(b) - e(a), w});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.frequency < y.frequency; });
  std::vector<TransitionLine> merged;
  for (const auto& line : raw) {
    if (!merged.empty() && line.frequency - merged.back().frequency < 1e-9) {
      merged.back().weight += line.weight;
    } else {
      merged.push_back(line);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) { return x.weight > y.weight; });
  return merged;
}

}  // namespace spinstar
