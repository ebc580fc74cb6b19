#include "spinstar/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "entropy_kernel.hpp"
#include "parallel.hpp"
#include "sector_propagator.hpp"
#include "spinstar/error.hpp"

namespace spinstar {

TimeGrid TimeGrid::up_to(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) raise(ErrorKind::InvalidGrid, "dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) raise(ErrorKind::InvalidGrid, "t_max must be >= 0");
  TimeGrid g;
  g.dt = dt;
  g.n_steps = static_cast<int>(std::llround(t_max / dt)) + 1;
  return g;
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) raise(ErrorKind::InvalidGrid, "dt must be positive");
  if (n_steps < 1) raise(ErrorKind::InvalidGrid, "n_steps must be >= 1");
}

EigenSystem eigendecompose(const BlockOperator& h) {
  const auto& m = h.matrix;
  if (m.rows() != m.cols() || m.rows() != h.label.block_dim()) {
    raise(ErrorKind::InvalidOperator, "operator shape does not match its sector");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    raise(ErrorKind::InvalidOperator, "operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) raise(ErrorKind::InvalidOperator, "eigensolver did not converge");
  return EigenSystem{h.label, es.eigenvalues(), es.eigenvectors()};
}

BlockState evolve_block(const EigenSystem& eig, const BlockState& state0, double t) {
  if (eig.label != state0.label) {
    raise(ErrorKind::SectorMismatch, "eigensystem 2j=" + std::to_string(eig.label.two_j) + " vs state 2j=" +
                                         std::to_string(state0.label.two_j));
  }
  const Eigen::VectorXcd phases = (eig.eigenvalues.cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
  const Eigen::MatrixXcd u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  BlockState out{state0.label, u * state0.rho * u.adjoint()};
  return out;
}

CentralState reduce_to_central(const BlockState& state) {
  const Eigen::Index n = state.label.bath_dim();
  CentralState out;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) out.rho(mu, nu) = state.rho.block(mu * n, nu * n, n, n).trace();
  }
  return out;
}

Eigen::MatrixXcd reduce_to_bath(const BlockState& state) {
  const Eigen::Index n = state.label.bath_dim();
  return state.rho.topLeftCorner(n, n) + state.rho.bottomRightCorner(n, n);
}

TrajectoryResult run_trajectory(const ModelParams& params, const CentralState& rho_s0, const TimeGrid& grid,
                                const TrajectoryOptions& options) {
  params.validate();
  grid.validate();
  rho_s0.validate();

  const SectorWeights weights = sector_weights(params);
  // ascending 2j, only sectors that carry probability
  std::vector<SectorWeight> active;
  for (auto it = weights.sectors.rbegin(); it != weights.sectors.rend(); ++it) {
    if (it->weight() > 0.0) active.push_back(*it);
  }

  std::vector<detail::SectorTrace> traces(active.size());
  detail::parallel_for(active.size(), options.workers, [&](std::size_t i) {
    double threshold = -1.0;
    if (options.want_entropies) threshold = options.entropy_weight_cutoff / active[i].weight();
    traces[i] = detail::propagate_sector(params, active[i].label, rho_s0, grid, threshold);
  });

  const auto steps = static_cast<std::size_t>(grid.n_steps);
  TrajectoryResult result;
  result.grid = grid;
  result.params = params;
  result.central_states.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double w = active[i].weight();
      const double p = traces[i].up[t];
      const cplx c = traces[i].coherence[t];
      rho(0, 0) += w * p;
      rho(1, 1) += w * (1.0 - p);
      rho(1, 0) += w * c;
      rho(0, 1) += w * std::conj(c);
    }
    result.central_states[t].rho = rho;
  }

  if (options.want_entropies) {
    // Copies of a sector carry equal shares w_j / alpha_j on orthogonal
    // supports: S = sum_j w_j (log2 alpha_j - log2 w_j + S_j).
    constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
    double mixing = 0.0;
    double global = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double w = active[i].weight();
      mixing += w * (active[i].log_alpha - active[i].log_weight) * inv_ln2;
      global += w * traces[i].global_entropy;
    }
    EntropySeries es;
    es.central.resize(steps);
    es.bath.resize(steps);
    es.global.assign(steps, mixing + global);
    es.bath_excess.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      double bath = 0.0;
      double excess = 0.0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (traces[i].bath_entropy.empty()) continue;
        const double w = active[i].weight();
        bath += w * traces[i].bath_entropy[t];
        excess += w * (traces[i].bath_entropy[t] - traces[i].global_entropy_kept);
      }
      es.central[t] = detail::entropy_bits_2x2(result.central_states[t].rho);
      es.bath[t] = mixing + bath;
      es.bath_excess[t] = excess;
    }
    result.entropies = std::move(es);
  }
  return result;
}

}  // namespace spinstar
