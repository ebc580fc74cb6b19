#pragma once

// Collective angular-momentum bookkeeping for a bath of N identical spin-1/2
// particles: which total-j sectors exist, how often each occurs, and how the
// Gibbs state of the bath distributes over them.
//
// Conventions used throughout the library:
//   * hbar = k_B = 1, energies in units where omega (bath splitting) is free.
//   * a sector is labelled by the integer 2j; inside a sector the basis
//     |j,m> is ordered by m ascending, k = m + j in {0, ..., 2j}.
//   * all weights are carried as natural logs.

#include <compare>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace spinstar {

/// Inverse temperature: a finite non-negative value or the zero-temperature
/// limit, which is kept as a distinct state instead of a large float.
class InverseTemperature {
 public:
  constexpr InverseTemperature() = default;
  constexpr explicit InverseTemperature(double beta) : value_(beta) {}

  static constexpr InverseTemperature infinite() {
    InverseTemperature b;
    b.infinite_ = true;
    b.value_ = std::numeric_limits<double>::infinity();
    return b;
  }

  constexpr bool is_infinite() const { return infinite_; }
  /// +inf for the zero-temperature limit.
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(const InverseTemperature&, const InverseTemperature&) = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

struct ModelParams {
  double omega0 = 1.0;  // central-spin splitting
  double omega = 1.0;   // bath-spin splitting
  double g = 0.1;       // coupling
  int n_spins = 201;
  InverseTemperature beta{};

  /// Throws Error(InvalidParameter) when n_spins < 1, omega <= 0, beta < 0 or
  /// any field is not finite.
  void validate() const;
};

struct BlockLabel {
  int two_j = 0;

  constexpr int bath_dim() const { return two_j + 1; }
  constexpr int block_dim() const { return 2 * (two_j + 1); }
  constexpr double j() const { return 0.5 * two_j; }

  friend constexpr auto operator<=>(const BlockLabel&, const BlockLabel&) = default;
};

/// Sectors of N spins, 2j = N, N-2, ..., N mod 2.
std::vector<BlockLabel> allowed_two_j(int n_spins);

/// Throws Error(InvalidSector) unless label is one of allowed_two_j(n_spins).
void check_sector(int n_spins, BlockLabel label);

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_exact(int n, int k);

/// Multiplicity of the spin-j sector: C(N, N/2-j) - C(N, N/2-j-1).
BigInt degeneracy_exact(int n_spins, BlockLabel label);

/// Natural log of degeneracy_exact, evaluated through lgamma so that it stays
/// finite for N in the hundreds.
double degeneracy_log(int n_spins, BlockLabel label);

double log_sum_exp(std::span<const double> values);

struct SectorWeight {
  BlockLabel label;
  double log_alpha = 0.0;
  /// ln sum_m exp(-beta omega m). At zero temperature this (and
  /// log_partition) is measured relative to the ground-state Boltzmann factor
  /// exp(beta omega N/2), which makes it 0 for 2j = N and -inf otherwise.
  double log_zj = 0.0;
  /// ln(alpha_j Z_j / Z): total probability carried by all copies of the sector.
  double log_weight = 0.0;

  double weight() const;
};

struct SectorWeights {
  std::vector<SectorWeight> sectors;  // same order as allowed_two_j
  double log_partition = 0.0;

  const SectorWeight& at(BlockLabel label) const;
};

SectorWeights sector_weights(const ModelParams& params);

/// Gibbs populations exp(-beta omega m)/Z_j inside one sector, m ascending.
/// At zero temperature: all population on m = -j.
std::vector<double> bath_populations(const ModelParams& params, BlockLabel label);

struct AngularMomentumMatrices {
  Eigen::MatrixXd jz;
  Eigen::MatrixXd jx;
  Eigen::MatrixXd jplus;
  Eigen::MatrixXd jminus;
};

AngularMomentumMatrices angular_momentum_matrices(int two_j);

/// <j,m+1|J+|j,m> for m = k - j; arguments in doubled units to stay exact.
double ladder_element(int two_j, int k);

}  // namespace spinstar
