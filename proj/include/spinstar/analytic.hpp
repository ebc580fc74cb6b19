#pragma once

#include <span>
#include <vector>

#include "spinstar/model.hpp"

namespace spinstar {

struct CorrelationSample {
  double dt = 0.0;  // t - t'
  cplx value;
};

/// Closed-form bath correlation
///   g^2 N exp(-beta omega / 2) / (2 cosh(beta omega / 2)) * exp(-i omega dt / 2).
/// Zero at beta = INFINITE.
CorrelationSample bath_correlation(const ModelParams& params, double dt);

/// <Gamma^dag(t') Gamma(t)> with Gamma = g sum_i sigma_-^(i), evolved by the free
/// bath Hamiltonian (omega/2) sum sigma_z and averaged over the product Gibbs
/// state, all in the explicit 2^N bath space. Throws Error(ResourceLimit)
/// above the oracle limit.
cplx bath_correlation_numeric(const ModelParams& params, double t, double t_prime,
                              int oracle_limit = kDefaultOracleLimit);

/// Collective Rabi frequency 2 sqrt(N) g.
double rabi_frequency(const ModelParams& params);

/// Compares the phase of the closed form with the phase seen numerically.
struct CorrelationPhaseReport {
  double printed_rate = 0.0;   // d(-arg)/d(dt) of bath_correlation
  double observed_rate = 0.0;  // same, from bath_correlation_numeric
  double max_modulus_deviation = 0.0;
  double max_phase_deviation = 0.0;  // wrapped to [0, pi]
  bool phases_agree = false;         // max_phase_deviation <= 1e-9
};

/// Samples at the given dt values (t' = 0). Needs beta finite.
CorrelationPhaseReport correlation_phase_report(const ModelParams& params, std::span<const double> dts,
                                                int oracle_limit = kDefaultOracleLimit);

struct TransitionLine {
  double frequency = 0.0;  // |E_a - E_b|
  double weight = 0.0;     // amplitude of the cosine it contributes to P(t)
};

/// Lines of P(t) for the single-mode model started in |up> x |vacuum>, merged
/// when closer than 1e-9, strongest first.
std::vector<TransitionLine> single_mode_transition_lines(const ModelParams& params, int cutoff);

}  // namespace spinstar
