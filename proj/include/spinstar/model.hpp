#pragma once

// Hamiltonians and initial states.
//
// Block basis contract: inside the sector 2j the flat index of |mu; j, m> is
//   i = mu * (2j + 1) + k,   mu = 0 for central spin up, 1 for down,  k = m + j.
// Full-space contract (oracle only): 2^(N+1) computational basis, central spin
// is the most significant qubit, bit value 0 means spin up.

#include <complex>

#include <Eigen/Dense>

#include "spinstar/symmetry.hpp"

namespace spinstar {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// 2x2 reduced state of the central spin in the basis {|up>, |down>}.
struct CentralState {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

  static CentralState up();
  static CentralState down();
  static CentralState plus();
  /// a|up> + b|down>; |a|^2 + |b|^2 must equal 1 within 1e-10 (then renormalised).
  static CentralState from_amplitudes(cplx a, cplx b);

  /// Same populations, coherences removed.
  CentralState dephased() const;
  bool is_diagonal() const { return rho(0, 1) == cplx(0.0) && rho(1, 0) == cplx(0.0); }

  /// Throws Error(InvalidState) on Hermiticity, trace or positivity violations.
  void validate() const;
};

struct BlockOperator {
  BlockLabel label;
  Eigen::MatrixXcd matrix;
};

struct BlockState {
  BlockLabel label;
  Eigen::MatrixXcd rho;
};

/// Checks Hermiticity, unit trace and positivity of any density matrix.
void validate_density_matrix(const Eigen::MatrixXcd& rho, const char* what);

BlockOperator build_block_hamiltonian(const ModelParams& params, BlockLabel label);

BlockState build_block_initial_state(const ModelParams& params, const CentralState& rho_s0, BlockLabel label);

inline constexpr int kDefaultOracleLimit = 12;

/// Explicit 2^(N+1) Hamiltonian; throws Error(ResourceLimit) above the limit.
Eigen::MatrixXcd build_full_hamiltonian(const ModelParams& params, int oracle_limit = kDefaultOracleLimit);

/// Spin coupled to one truncated bosonic mode (occupations 0..cutoff-1),
/// index mu * cutoff + n with the same mu convention as the blocks.
Eigen::MatrixXcd build_single_mode_hamiltonian(const ModelParams& params, int cutoff);

inline constexpr int kDefaultFockCutoff = 60;

/// Smallest cutoff (starting at `start`, growing in steps of 20) for which the
/// single-mode ground state has less than 1e-8 population in its two highest
/// Fock levels. Throws Error(ResourceLimit) past max_cutoff.
int converged_fock_cutoff(const ModelParams& params, int start = kDefaultFockCutoff, int max_cutoff = 600);

/// Parity eigenvalue (+1/-1) for every block basis state.
Eigen::VectorXd parity_diagonal(BlockLabel label, int n_spins);

}  // namespace spinstar
