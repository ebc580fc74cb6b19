#pragma once

// Fast propagation of one angular-momentum sector.
//
// The block Hamiltonian only couples |up, m> to |down, m +- 1>, so the 2(2j+1)
// block states split into two chains, each a real symmetric tridiagonal
// matrix of size 2j+1. Chain c holds the states (mu, k) with (mu + k) % 2 == c,
// at chain position k. These are the two parity classes.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "spinstar/evolution.hpp"

namespace spinstar::detail {

struct ChainEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // row = chain position k, column = eigenstate
};

struct SectorEigen {
  BlockLabel label;
  std::array<ChainEigen, 2> chains;
};

/// Central-spin index carried by chain c at position k.
constexpr int chain_spin(int chain, int k) { return (chain + k) % 2; }

SectorEigen diagonalize_sector(const ModelParams& params, BlockLabel label);

struct SectorTrace {
  std::vector<double> up;         // <up|rho_j^S(t)|up>
  std::vector<cplx> coherence;    // <down|rho_j^S(t)|up>
  std::vector<double> bath_entropy;  // S(rho_j^B(t)) in bits; empty if not requested
  double global_entropy = 0.0;       // S(rho_j^SB), all components
  double global_entropy_kept = 0.0;  // same, restricted to the components kept for bath_entropy
};

/// `entropy_threshold` < 0 disables entropies; otherwise pure components with
/// sector-local probability below it are excluded from bath_entropy.
SectorTrace propagate_sector(const ModelParams& params, BlockLabel label, const CentralState& rho_s0,
                             const TimeGrid& grid, double entropy_threshold);

}  // namespace spinstar::detail
