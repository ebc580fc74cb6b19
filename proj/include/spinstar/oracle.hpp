#pragma once

// Brute-force reference simulator in the full 2^(N+1) space. It shares no code
// with the sector decomposition beyond the Hamiltonian builder.

#include <Eigen/Dense>

#include "spinstar/evolution.hpp"

namespace spinstar {

struct FullState {
  int n_spins = 0;
  Eigen::MatrixXcd rho;  // central spin = most significant qubit, bit 0 = up

  void validate() const;
};

/// rho_s0 x prod_i exp(-beta omega sigma_z^(i) / 2) / z.
FullState full_initial_state(const ModelParams& params, const CentralState& rho_s0,
                             int oracle_limit = kDefaultOracleLimit);

/// Tr over every bath qubit.
CentralState trace_out_bath(const FullState& state);

/// Tr over the central qubit; dimension 2^N.
Eigen::MatrixXcd trace_out_central(const FullState& state);

struct FullEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// The full Hamiltonian is real symmetric in the computational basis.
FullEigen diagonalize_full(const ModelParams& params, int oracle_limit = kDefaultOracleLimit);

FullState evolve_full(const FullEigen& eig, const FullState& state0, double t);

struct OracleOptions {
  int oracle_limit = kDefaultOracleLimit;
  bool want_entropies = true;
};

/// Same result shape as run_trajectory. The global state is carried as a
/// factor Psi with rho = Psi Psi^dag, one column per product basis state of
/// nonzero weight, so each step costs one GEMM.
TrajectoryResult run_full_trajectory(const ModelParams& params, const CentralState& rho_s0, const TimeGrid& grid,
                                     const OracleOptions& options = {});

}  // namespace spinstar
