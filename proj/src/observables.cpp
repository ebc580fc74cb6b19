#include "spinstar/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entropy_kernel.hpp"
#include "spinstar/error.hpp"

namespace spinstar {

std::vector<double> ComplexSeries::real() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

std::vector<double> ComplexSeries::imag() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].imag();
  return out;
}

std::vector<double> ComplexSeries::magnitude() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::abs(values[i]);
  return out;
}

double probability_up(const CentralState& rho_s) { return rho_s.rho(0, 0).real(); }

cplx coherence(const CentralState& rho_s) { return rho_s.rho(1, 0); }

BlochVector bloch_vector(const CentralState& rho_s) {
  const cplx up_down = rho_s.rho(0, 1);
  return BlochVector{2.0 * up_down.real(), -2.0 * up_down.imag(),
                     rho_s.rho(0, 0).real() - rho_s.rho(1, 1).real()};
}

ObservableSeries probability_series(const TrajectoryResult& traj) {
  ObservableSeries s{traj.grid, SeriesKind::Probability, {}};
  s.values.reserve(traj.central_states.size());
  for (const auto& st : traj.central_states) s.values.push_back(probability_up(st));
  return s;
}

ComplexSeries coherence_series(const TrajectoryResult& traj) {
  ComplexSeries s{traj.grid, SeriesKind::Coherence, {}};
  s.values.reserve(traj.central_states.size());
  for (const auto& st : traj.central_states) s.values.push_back(coherence(st));
  return s;
}

ObservableSeries bloch_component_series(const TrajectoryResult& traj, SeriesKind component) {
  if (component != SeriesKind::SigmaX && component != SeriesKind::SigmaY && component != SeriesKind::SigmaZ) {
    raise(ErrorKind::InvalidInput, "not a Bloch component");
  }
  ObservableSeries s{traj.grid, component, {}};
  for (const auto& st : traj.central_states) {
    const auto b = bloch_vector(st);
    s.values.push_back(component == SeriesKind::SigmaX ? b.x : component == SeriesKind::SigmaY ? b.y : b.z);
  }
  return s;
}

ComplexSeries coherence_ratio(const ComplexSeries& coherence) {
  if (coherence.values.empty() || coherence.values.front() == cplx(0.0)) {
    raise(ErrorKind::UndefinedRatio, "C(0) = 0, the coherence ratio is undefined");
  }
  const cplx c0 = coherence.values.front();
  ComplexSeries out{coherence.grid, SeriesKind::CoherenceRatio, {}};
  out.values.reserve(coherence.values.size());
  out.values.push_back(cplx(1.0));
  for (std::size_t i = 1; i < coherence.values.size(); ++i) out.values.push_back(coherence.values[i] / c0);
  return out;
}

double fluctuation(const ObservableSeries& probability, double t_min) {
  // shifted by the first sample in the window for conditioning
  double shift = 0.0;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < probability.values.size(); ++i) {
    if (probability.grid.time(static_cast<int>(i)) > t_min) {
      if (count == 0) shift = probability.values[i];
      sum += probability.values[i] - shift;
      ++count;
    }
  }
  if (count == 0) raise(ErrorKind::InvalidWindow, "no samples after t_min = " + std::to_string(t_min));
  const double mean = sum / static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = 0; i < probability.values.size(); ++i) {
    if (probability.grid.time(static_cast<int>(i)) > t_min) {
      const double d = probability.values[i] - shift - mean;
      var += d * d;
    }
  }
  return var / static_cast<double>(count);
}

double window_mean(const ObservableSeries& series, double t_min, double t_max) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const double t = series.grid.time(static_cast<int>(i));
    if (t >= t_min && t <= t_max) {
      sum += series.values[i];
      ++count;
    }
  }
  if (count == 0) raise(ErrorKind::InvalidWindow, "empty averaging window");
  return sum / static_cast<double>(count);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  validate_density_matrix(rho, "density matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = std::clamp(es.eigenvalues()(i), 0.0, 1.0);
    s += detail::entropy_term_bits(l);
  }
  return s;
}

ObservableSeries mutual_entropy_series(const TrajectoryResult& traj) {
  if (!traj.entropies) raise(ErrorKind::InvalidInput, "trajectory was run without entropies");
  const auto& e = *traj.entropies;
  ObservableSeries s{traj.grid, SeriesKind::MutualEntropy, {}};
  s.values.resize(e.central.size());
  for (std::size_t i = 0; i < e.central.size(); ++i) s.values[i] = e.central[i] + e.bath_excess[i];
  return s;
}

ThermalReference thermal_reference(InverseTemperature beta, double omega0) {
  ThermalReference out;
  if (beta.is_infinite()) {
    // ground state of omega0 sigma_z / 2 (for omega0 > 0)
    out.state = omega0 >= 0.0 ? CentralState::down() : CentralState::up();
    out.probability_up = omega0 >= 0.0 ? 0.0 : 1.0;
    return out;
  }
  if (beta.value() < 0.0) raise(ErrorKind::InvalidParameter, "beta must be >= 0");
  const double p = 0.5 - 0.5 * std::tanh(0.5 * beta.value() * omega0);
  out.probability_up = p;
  out.state.rho(0, 0) = p;
  out.state.rho(1, 1) = 1.0 - p;
  return out;
}

}  // namespace spinstar
