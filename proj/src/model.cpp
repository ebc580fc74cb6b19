#include "spinstar/model.hpp"

#include <cmath>
#include <string>

#include "spinstar/error.hpp"

namespace spinstar {

CentralState CentralState::up() {
  CentralState s;
  s.rho(0, 0) = 1.0;
  return s;
}

CentralState CentralState::down() {
  CentralState s;
  s.rho(1, 1) = 1.0;
  return s;
}

CentralState CentralState::plus() { return from_amplitudes(std::sqrt(0.5), std::sqrt(0.5)); }

CentralState CentralState::from_amplitudes(cplx a, cplx b) {
  const double norm2 = std::norm(a) + std::norm(b);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-10) {
    raise(ErrorKind::InvalidState, "amplitudes must satisfy |a|^2 + |b|^2 = 1");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  Eigen::Vector2cd psi(a * scale, b * scale);
  CentralState s;
  s.rho = psi * psi.adjoint();
  return s;
}

CentralState CentralState::dephased() const {
  CentralState s;
  s.rho(0, 0) = rho(0, 0);
  s.rho(1, 1) = rho(1, 1);
  return s;
}

void CentralState::validate() const { validate_density_matrix(rho, "central state"); }

void validate_density_matrix(const Eigen::MatrixXcd& rho, const char* what) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    raise(ErrorKind::InvalidState, std::string(what) + " is not a square matrix");
  }
  if (!rho.allFinite()) raise(ErrorKind::InvalidState, std::string(what) + " has non-finite entries");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    raise(ErrorKind::InvalidState, std::string(what) + " is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx(1.0)) > kTraceTol) {
    raise(ErrorKind::InvalidState, std::string(what) + " does not have unit trace");
  }
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    raise(ErrorKind::InvalidState, std::string(what) + " is not positive semidefinite");
  }
}

BlockOperator build_block_hamiltonian(const ModelParams& params, BlockLabel label) {
  params.validate();
  check_sector(params.n_spins, label);
  const int n = label.bath_dim();
  BlockOperator h{label, Eigen::MatrixXcd::Zero(2 * n, 2 * n)};
  for (int k = 0; k < n; ++k) {
    const double m = k - label.j();
    h.matrix(k, k) = 0.5 * params.omega0 + params.omega * m;
    h.matrix(n + k, n + k) = -0.5 * params.omega0 + params.omega * m;
  }
  // sigma_x flips the central spin, 2 g J_x moves m by one.
  for (int k = 0; k + 1 < n; ++k) {
    const double c = params.g * ladder_element(label.two_j, k);  // 2g <m+1|Jx|m>
    h.matrix(k + 1, n + k) = c;
    h.matrix(n + k, k + 1) = c;
    h.matrix(k, n + k + 1) = c;
    h.matrix(n + k + 1, k) = c;
  }
  h.matrix = 0.5 * (h.matrix + h.matrix.adjoint()).eval();
  return h;
}

BlockState build_block_initial_state(const ModelParams& params, const CentralState& rho_s0, BlockLabel label) {
  params.validate();
  check_sector(params.n_spins, label);
  rho_s0.validate();
  const auto p = bath_populations(params, label);
  const int n = label.bath_dim();
  BlockState s{label, Eigen::MatrixXcd::Zero(2 * n, 2 * n)};
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      for (int k = 0; k < n; ++k) s.rho(mu * n + k, nu * n + k) = rho_s0.rho(mu, nu) * p[static_cast<std::size_t>(k)];
    }
  }
  return s;
}

Eigen::MatrixXcd build_full_hamiltonian(const ModelParams& params, int oracle_limit) {
  params.validate();
  if (params.n_spins > oracle_limit) {
    raise(ErrorKind::ResourceLimit, "full Hamiltonian requested for N=" + std::to_string(params.n_spins) +
                                        " above the oracle limit " + std::to_string(oracle_limit));
  }
  const int qubits = params.n_spins + 1;
  const long dim = 1L << qubits;
  const auto sz = [](long state, int bit) { return (state >> bit) & 1L ? -1.0 : 1.0; };
  const int central_bit = params.n_spins;  // most significant

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (long s = 0; s < dim; ++s) {
    double diag = 0.5 * params.omega0 * sz(s, central_bit);
    for (int b = 0; b < params.n_spins; ++b) diag += 0.5 * params.omega * sz(s, b);
    h(s, s) = diag;
    // g sigma_x^(0) sigma_x^(i)
    for (int b = 0; b < params.n_spins; ++b) {
      const long t = s ^ (1L << central_bit) ^ (1L << b);
      h(t, s) += params.g;
    }
  }
  return h;
}

Eigen::MatrixXcd build_single_mode_hamiltonian(const ModelParams& params, int cutoff) {
  params.validate();
  if (cutoff < 2) raise(ErrorKind::InvalidParameter, "Fock cutoff must be >= 2");
  const double lambda = params.g * std::sqrt(static_cast<double>(params.n_spins));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * cutoff, 2 * cutoff);
  for (int n = 0; n < cutoff; ++n) {
    h(n, n) = params.omega * n + 0.5 * params.omega0;
    h(cutoff + n, cutoff + n) = params.omega * n - 0.5 * params.omega0;
  }
  for (int n = 0; n + 1 < cutoff; ++n) {
    const double c = lambda * std::sqrt(n + 1.0);  // <n+1|b^dag|n>
    h(n + 1, cutoff + n) = c;
    h(cutoff + n, n + 1) = c;
    h(cutoff + n + 1, n) = c;
    h(n, cutoff + n + 1) = c;
  }
  return h;
}

int converged_fock_cutoff(const ModelParams& params, int start, int max_cutoff) {
  for (int cutoff = start; cutoff <= max_cutoff; cutoff += 20) {
    const Eigen::MatrixXd h = build_single_mode_hamiltonian(params, cutoff).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto ground = es.eigenvectors().col(0);
    double tail = 0.0;
    for (int mu = 0; mu < 2; ++mu) {
      for (int n = cutoff - 2; n < cutoff; ++n) tail += ground(mu * cutoff + n) * ground(mu * cutoff + n);
    }
    if (tail < 1e-8) return cutoff;
  }
  raise(ErrorKind::ResourceLimit, "single-mode ground state did not converge below Fock cutoff " +
                                      std::to_string(max_cutoff));
}

Eigen::VectorXd parity_diagonal(BlockLabel label, int n_spins) {
  check_sector(n_spins, label);
  const int n = label.bath_dim();
  const int offset = n_spins % 2 == 0 ? 1 : 0;  // (1 + (-1)^N) / 2 in doubled units
  Eigen::VectorXd d(2 * n);
  for (int mu = 0; mu < 2; ++mu) {
    const int two_sz = mu == 0 ? 1 : -1;
    for (int k = 0; k < n; ++k) {
      const int twice = (2 * k - label.two_j) + two_sz + offset;  // always even
      const int e = twice / 2;
      d(mu * n + k) = (e % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return d;
}

}  // namespace spinstar
