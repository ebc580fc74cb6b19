#include "spinstar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "spinstar/error.hpp"

namespace spinstar {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::vector<cplx> real_dft(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const int bins = n / 2 + 1;
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * x.size())));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(bins))));
  if (!in || !out) raise(ErrorKind::ResourceLimit, "FFT buffer allocation failed");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);
  std::vector<cplx> result(static_cast<std::size_t>(bins));
  for (int k = 0; k < bins; ++k) result[static_cast<std::size_t>(k)] = cplx(out.get()[k][0], out.get()[k][1]);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return result;
}

bool is_edge_bin(int k, int n) { return k == 0 || (n % 2 == 0 && k == n / 2); }

}  // namespace

double SpectrumResult::bin_width() const { return 2.0 * std::numbers::pi / (series_length * dt); }

std::string SpectrumResult::normalization() const {
  return "one-sided; interior bins scaled by 2/n, DC and Nyquist by 1/n; angular frequency 2*pi*k/(n*dt)";
}

double SpectrumResult::parseval_sum() const {
  double s = 0.0;
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    const double a2 = amplitudes[k] * amplitudes[k];
    s += is_edge_bin(static_cast<int>(k), series_length) ? a2 : 0.5 * a2;
  }
  return s;
}

SpectrumResult power_spectrum(std::span<const double> values, double dt, bool detrend) {
  if (!(dt > 0.0) || !std::isfinite(dt)) raise(ErrorKind::InvalidGrid, "dt must be positive");
  if (values.size() < 16) raise(ErrorKind::InvalidInput, "spectrum needs at least 16 samples");
  const int n = static_cast<int>(values.size());
  std::vector<double> x(values.begin(), values.end());
  if (detrend) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    for (double& v : x) v -= mean;
  }
  const auto raw = real_dft(x);
  SpectrumResult out;
  out.series_length = n;
  out.dt = dt;
  out.detrended = detrend;
  const double dw = out.bin_width();
  for (int k = 0; k < static_cast<int>(raw.size()); ++k) {
    const double scale = is_edge_bin(k, n) ? 1.0 / n : 2.0 / n;
    const cplx c = raw[static_cast<std::size_t>(k)] * scale;
    out.coefficients.push_back(c);
    out.amplitudes.push_back(std::abs(c));
    out.angular_frequencies.push_back(dw * k);
  }
  return out;
}

SpectrumResult power_spectrum(const ObservableSeries& series, bool detrend) {
  series.grid.validate();
  if (static_cast<int>(series.values.size()) != series.grid.n_steps) {
    raise(ErrorKind::InvalidGrid, "series length does not match its time grid");
  }
  return power_spectrum(series.values, series.grid.dt, detrend);
}

SpectrumResult power_spectrum(std::span<const double> times, std::span<const double> values, bool detrend) {
  if (times.size() != values.size() || times.size() < 2) raise(ErrorKind::InvalidGrid, "time stamps do not match samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::abs(dt)) {
      raise(ErrorKind::InvalidGrid, "time stamps are not uniformly spaced");
    }
  }
  return power_spectrum(values, dt, detrend);
}

std::vector<Peak> find_peaks(const SpectrumResult& spectrum, double rel_threshold) {
  const auto& a = spectrum.amplitudes;
  if (a.empty()) raise(ErrorKind::InvalidInput, "empty spectrum");
  if (!(rel_threshold > 0.0 && rel_threshold <= 1.0)) raise(ErrorKind::InvalidInput, "rel_threshold must lie in (0, 1]");
  double top = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) top = std::max(top, a[k]);
  std::vector<Peak> peaks;
  if (top <= 0.0) return peaks;
  const double floor = rel_threshold * top;
  const double dw = spectrum.bin_width();
  for (std::size_t k = 1; k + 1 < a.size(); ++k) {
    if (a[k] > a[k - 1] && a[k] >= a[k + 1] && a[k] >= floor) {
      const double denom = a[k - 1] - 2.0 * a[k] + a[k + 1];
      const double shift = denom != 0.0 ? 0.5 * (a[k - 1] - a[k + 1]) / denom : 0.0;
      peaks.push_back(Peak{dw * (static_cast<double>(k) + shift), a[k]});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) { return x.amplitude > y.amplitude; });
  return peaks;
}

}  // namespace spinstar
