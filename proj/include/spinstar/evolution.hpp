#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spinstar/model.hpp"

namespace spinstar {

struct EigenSystem {
  BlockLabel label;
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // columns
};

/// Uniform grid t_k = dt * k, k = 0 .. n_steps-1.
struct TimeGrid {
  double dt = 0.05;
  int n_steps = 4001;

  /// Grid covering [0, t_max] inclusive (n_steps = round(t_max/dt) + 1).
  static TimeGrid up_to(double t_max, double dt);

  double time(int k) const { return dt * k; }
  double t_max() const { return dt * (n_steps - 1); }
  void validate() const;
};

/// Per-time entropies in bits. `bath_excess` is S(rho^B) - S(rho^SB) evaluated
/// without the large sector-mixing terms that cancel between the two, so the
/// mutual information stays accurate when both entropies are ~N bits.
struct EntropySeries {
  std::vector<double> central;
  std::vector<double> bath;
  std::vector<double> global;
  std::vector<double> bath_excess;
};

struct TrajectoryResult {
  TimeGrid grid;
  ModelParams params;
  std::vector<CentralState> central_states;
  std::optional<EntropySeries> entropies;
};

struct TrajectoryOptions {
  bool want_entropies = false;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  /// Pure components of the global state whose probability is below this
  /// value are left out of the per-time entropy evaluation (never out of
  /// P(t) or C(t)). Their combined effect on any entropy is < 1e-14 bits.
  double entropy_weight_cutoff = 1e-20;
};

EigenSystem eigendecompose(const BlockOperator& h);

/// U rho U^dag with U = V exp(-i Lambda t) V^dag.
BlockState evolve_block(const EigenSystem& eig, const BlockState& state0, double t);

CentralState reduce_to_central(const BlockState& state);

/// Partial trace over the central spin, dimension 2j+1.
Eigen::MatrixXcd reduce_to_bath(const BlockState& state);

/// Sector-decomposed exact dynamics. For beta = INFINITE only the 2j = N
/// sector carries weight and is evolved. Sector contributions are folded in
/// ascending 2j order whatever the worker count.
TrajectoryResult run_trajectory(const ModelParams& params, const CentralState& rho_s0, const TimeGrid& grid,
                                const TrajectoryOptions& options = {});

}  // namespace spinstar
