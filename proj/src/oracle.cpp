#include "spinstar/oracle.hpp"

#include <cmath>
#include <string>

#include "spinstar/error.hpp"
#include "spinstar/observables.hpp"

namespace spinstar {

namespace {

void check_limit(const ModelParams& params, int oracle_limit) {
  if (params.n_spins > oracle_limit) {
    raise(ErrorKind::ResourceLimit, "N = " + std::to_string(params.n_spins) + " exceeds the oracle limit " +
                                        std::to_string(oracle_limit));
  }
}

// Probability of one bath spin pointing up in its own Gibbs state.
double single_spin_up(const ModelParams& params) {
  if (params.beta.is_infinite()) return params.omega > 0.0 ? 0.0 : 1.0;
  const double a = std::exp(-0.5 * params.beta.value() * params.omega);
  const double b = std::exp(0.5 * params.beta.value() * params.omega);
  return a / (a + b);
}

Eigen::VectorXd product_gibbs(const ModelParams& params) {
  const int n = params.n_spins;
  const double p_up = single_spin_up(params);
  Eigen::VectorXd p(Eigen::Index{1} << n);
  for (Eigen::Index s = 0; s < p.size(); ++s) {
    double v = 1.0;
    for (int b = 0; b < n; ++b) v *= ((s >> b) & 1) ? 1.0 - p_up : p_up;
    p(s) = v;
  }
  return p;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// Bits; eigenvalues only, no validation (done once on the initial state).
double spectrum_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace

void FullState::validate() const {
  if (rho.rows() != (Eigen::Index{1} << (n_spins + 1))) raise(ErrorKind::InvalidState, "full state has the wrong dimension");
  validate_density_matrix(rho, "full state");
}

FullState full_initial_state(const ModelParams& params, const CentralState& rho_s0, int oracle_limit) {
  params.validate();
  rho_s0.validate();
  check_limit(params, oracle_limit);
  const Eigen::VectorXd p = product_gibbs(params);
  const Eigen::Index nb = p.size();
  FullState out{params.n_spins, Eigen::MatrixXcd::Zero(2 * nb, 2 * nb)};
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      out.rho.block(mu * nb, nu * nb, nb, nb).diagonal() = rho_s0.rho(mu, nu) * p.cast<cplx>();
    }
  }
  return out;
}

CentralState trace_out_bath(const FullState& state) {
  const Eigen::Index nb = state.rho.rows() / 2;
  CentralState out;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      cplx acc(0.0);
      for (Eigen::Index b = 0; b < nb; ++b) acc += state.rho(mu * nb + b, nu * nb + b);
      out.rho(mu, nu) = acc;
    }
  }
  return out;
}

Eigen::MatrixXcd trace_out_central(const FullState& state) {
  const Eigen::Index nb = state.rho.rows() / 2;
  return state.rho.topLeftCorner(nb, nb) + state.rho.bottomRightCorner(nb, nb);
}

FullEigen diagonalize_full(const ModelParams& params, int oracle_limit) {
  const Eigen::MatrixXcd h = build_full_hamiltonian(params, oracle_limit);
  if (h.imag().cwiseAbs().maxCoeff() != 0.0) raise(ErrorKind::InvalidOperator, "full Hamiltonian is not real");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
  if (es.info() != Eigen::Success) raise(ErrorKind::InvalidOperator, "eigensolver did not converge");
  return FullEigen{es.eigenvalues(), es.eigenvectors()};
}

FullState evolve_full(const FullEigen& eig, const FullState& state0, double t) {
  if (state0.rho.rows() != eig.vectors.rows()) raise(ErrorKind::SectorMismatch, "state and Hamiltonian dimensions differ");
  const Eigen::VectorXcd phase = (eig.values.cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  const Eigen::MatrixXcd v = eig.vectors.cast<cplx>();
  const Eigen::MatrixXcd u = v * phase.asDiagonal() * v.transpose();
  return FullState{state0.n_spins, u * state0.rho * u.adjoint()};
}

TrajectoryResult run_full_trajectory(const ModelParams& params, const CentralState& rho_s0, const TimeGrid& grid,
                                     const OracleOptions& options) {
  params.validate();
  grid.validate();
  rho_s0.validate();
  check_limit(params, options.oracle_limit);

  const FullEigen eig = diagonalize_full(params, options.oracle_limit);
  const Eigen::VectorXd p = product_gibbs(params);
  const Eigen::Index nb = p.size();
  const Eigen::Index dim = 2 * nb;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> central(rho_s0.rho);
  std::vector<Eigen::VectorXcd> columns;
  for (int i = 0; i < 2; ++i) {
    const double q = central.eigenvalues()(i);
    if (q <= 0.0) continue;
    for (Eigen::Index b = 0; b < nb; ++b) {
      if (p(b) == 0.0) continue;
      Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
      const double amp = std::sqrt(q * p(b));
      col(b) = amp * central.eigenvectors()(0, i);
      col(nb + b) = amp * central.eigenvectors()(1, i);
      columns.push_back(std::move(col));
    }
  }
  const auto ncol = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd psi_re(dim, ncol);
  Eigen::MatrixXd psi_im(dim, ncol);
  for (Eigen::Index c = 0; c < ncol; ++c) {
    psi_re.col(c) = columns[static_cast<std::size_t>(c)].real();
    psi_im.col(c) = columns[static_cast<std::size_t>(c)].imag();
  }
  const Eigen::MatrixXd a_re = eig.vectors.transpose() * psi_re;
  const Eigen::MatrixXd a_im = eig.vectors.transpose() * psi_im;

  TrajectoryResult result;
  result.grid = grid;
  result.params = params;
  EntropySeries es;

  Eigen::MatrixXd rotated(dim, 2 * ncol);
  Eigen::MatrixXd psi_t(dim, 2 * ncol);
  for (int step = 0; step < grid.n_steps; ++step) {
    const double t = grid.time(step);
    const Eigen::ArrayXd cs = (eig.values.array() * t).cos();
    const Eigen::ArrayXd sn = (eig.values.array() * t).sin();
    // exp(-iEt)(a + ib) = (cos a + sin b) + i(cos b - sin a)
    rotated.leftCols(ncol) = ((a_re.array().colwise() * cs) + (a_im.array().colwise() * sn)).matrix();
    rotated.rightCols(ncol) = ((a_im.array().colwise() * cs) - (a_re.array().colwise() * sn)).matrix();
    psi_t.noalias() = eig.vectors * rotated;
    Eigen::MatrixXcd psi(dim, ncol);
    psi.real() = psi_t.leftCols(ncol);
    psi.imag() = psi_t.rightCols(ncol);

    const auto up = psi.topRows(nb);
    const auto down = psi.bottomRows(nb);
    CentralState rs;
    rs.rho(0, 0) = up.squaredNorm();
    rs.rho(1, 1) = down.squaredNorm();
    rs.rho(1, 0) = (down.array() * up.array().conjugate()).sum();
    rs.rho(0, 1) = std::conj(rs.rho(1, 0));
    result.central_states.push_back(rs);

    if (options.want_entropies) {
      const Eigen::MatrixXcd rho_b = hermitian_part(up * up.adjoint() + down * down.adjoint());
      const Eigen::MatrixXcd gram = hermitian_part(psi.adjoint() * psi);
      if (step == 0) {
        validate_density_matrix(rho_b, "initial bath state");
        validate_density_matrix(gram, "initial global state");
      }
      const double s_s = von_neumann_entropy(rs.rho);
      const double s_b = spectrum_entropy(rho_b);
      const double s_sb = spectrum_entropy(gram);
      es.central.push_back(s_s);
      es.bath.push_back(s_b);
      es.global.push_back(s_sb);
      es.bath_excess.push_back(s_b - s_sb);
    }
  }
  if (options.want_entropies) result.entropies = std::move(es);
  return result;
}

}  // namespace spinstar
