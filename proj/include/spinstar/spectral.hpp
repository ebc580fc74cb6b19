#pragma once

#include <span>
#include <string>
#include <vector>

#include "spinstar/observables.hpp"

namespace spinstar {

/// One-sided discrete Fourier spectrum of a uniformly sampled real series.
///
/// coefficients[k] = norm_k * sum_t x_t exp(-2 pi i k t / n), k = 0 .. n/2, with
/// norm_k = 2/n for interior bins and 1/n for the DC and Nyquist bins, so that
/// a unit-amplitude cosine sitting on a bin reports amplitude 1. With this
/// normalisation Parseval reads
///   mean(x^2) = A_0^2 + A_nyq^2 + sum_interior A_k^2 / 2.
struct SpectrumResult {
  std::vector<double> angular_frequencies;  // 2 pi k / (n dt)
  std::vector<double> amplitudes;           // |coefficients|
  std::vector<cplx> coefficients;
  int series_length = 0;
  double dt = 0.0;
  bool detrended = true;

  double bin_width() const;
  std::string normalization() const;
  /// The Parseval right-hand side above.
  double parseval_sum() const;
};

SpectrumResult power_spectrum(const ObservableSeries& series, bool detrend = true);
SpectrumResult power_spectrum(std::span<const double> values, double dt, bool detrend = true);

/// Overload for explicitly time-stamped samples; throws Error(InvalidGrid)
/// if the stamps are not uniformly spaced.
SpectrumResult power_spectrum(std::span<const double> times, std::span<const double> values, bool detrend = true);

struct Peak {
  double frequency = 0.0;  // angular, parabolically interpolated
  double amplitude = 0.0;
};

/// Interior local maxima with amplitude >= rel_threshold * (largest non-DC
/// amplitude), strongest first.
std::vector<Peak> find_peaks(const SpectrumResult& spectrum, double rel_threshold);

}  // namespace spinstar
