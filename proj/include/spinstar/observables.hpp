#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinstar/evolution.hpp"

namespace spinstar {

enum class SeriesKind { Probability, Coherence, CoherenceRatio, MutualEntropy, SigmaX, SigmaY, SigmaZ };

struct ObservableSeries {
  TimeGrid grid;
  SeriesKind kind = SeriesKind::Probability;
  std::vector<double> values;
};

struct ComplexSeries {
  TimeGrid grid;
  SeriesKind kind = SeriesKind::Coherence;
  std::vector<cplx> values;

  std::vector<double> real() const;
  std::vector<double> imag() const;
  std::vector<double> magnitude() const;
};

double probability_up(const CentralState& rho_s);

/// <down|rho|up>
cplx coherence(const CentralState& rho_s);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// (<sigma_x>, <sigma_y>, <sigma_z>) of the central spin.
BlochVector bloch_vector(const CentralState& rho_s);

ObservableSeries probability_series(const TrajectoryResult& traj);
ComplexSeries coherence_series(const TrajectoryResult& traj);
ObservableSeries bloch_component_series(const TrajectoryResult& traj, SeriesKind component);

/// L(t) = C(t) / C(0). Throws Error(UndefinedRatio) when C(0) == 0.
ComplexSeries coherence_ratio(const ComplexSeries& coherence);

inline constexpr double kDefaultFluctuationStart = 50.0;

/// Variance of P(t) over the samples with t > t_min.
double fluctuation(const ObservableSeries& probability, double t_min = kDefaultFluctuationStart);

/// Mean of the samples with t_min <= t <= t_max.
double window_mean(const ObservableSeries& series, double t_min, double t_max);

/// -sum lambda log2 lambda. Throws Error(InvalidState) for non-Hermitian,
/// non-unit-trace or clearly non-positive input.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// I(t) = S(rho^S) + S(rho^B) - S(rho^SB) in bits; requires a trajectory run
/// with entropies.
ObservableSeries mutual_entropy_series(const TrajectoryResult& traj);

struct ThermalReference {
  CentralState state;
  double probability_up = 0.0;
};

/// Gibbs state of a lone spin with splitting omega0 at inverse temperature beta.
ThermalReference thermal_reference(InverseTemperature beta, double omega0);

}  // namespace spinstar
