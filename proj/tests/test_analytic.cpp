#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinstar/analytic.hpp"
#include "spinstar/error.hpp"

using namespace spinstar;

namespace {

ModelParams bath(int n, double beta, double g = 0.1) {
  ModelParams p;
  p.n_spins = n;
  p.g = g;
  p.beta = InverseTemperature(beta);
  return p;
}

}  // namespace

TEST_CASE("closed-form correlation") {
  const auto hot = bath(7, 0.0, 0.3);
  CHECK(std::abs(bath_correlation(hot, 0.0).value) == doctest::Approx(0.09 * 7 / 2));
  ModelParams cold = hot;
  cold.beta = InverseTemperature::infinite();
  CHECK(bath_correlation(cold, 2.0).value == cplx(0.0));
  const auto warm = bath(5, 1.3);
  const cplx at0 = bath_correlation(warm, 0.0).value;
  CHECK(at0.imag() == 0.0);
  CHECK(at0.real() == doctest::Approx(0.01 * 5 * std::exp(-0.65) / (2 * std::cosh(0.65))));
  const double modulus = std::abs(at0);
  for (double dt : {-3.0, 0.1, 1.0, 17.5, 1000.0}) {
    CHECK(std::abs(bath_correlation(warm, dt).value) == doctest::Approx(modulus).epsilon(1e-15));
  }
  // large beta stays finite
  CHECK(std::isfinite(std::abs(bath_correlation(bath(5, 2000.0), 1.0).value)));
}

TEST_CASE("numeric correlation") {
  CHECK(std::abs(bath_correlation_numeric(bath(1, 0.0, 1.0), 0.0, 0.0) - cplx(0.5)) < 1e-15);
  const auto p = bath(6, 1.0);
  const double expected = 0.01 * 6 * std::exp(-0.5) / (2 * std::cosh(0.5));
  CHECK(std::abs(bath_correlation_numeric(p, 0.4, 0.4) - expected) < 1e-12);
  for (double t : {0.0, 0.9, 4.2}) {
    CHECK(std::abs(std::abs(bath_correlation_numeric(p, t, 0.3)) - expected) < 1e-12);
  }
  CHECK_THROWS_AS(bath_correlation_numeric(bath(9, 1.0), 0.0, 0.0, 8), Error);
}

TEST_CASE("phase of the closed form versus the numeric correlation") {
  // The numeric route precesses at omega; the closed form carries omega / 2.
  const auto p = bath(4, 0.5);
  const std::vector<double> dts{0.0, 0.25, 1.0, 2.5};
  const auto r = correlation_phase_report(p, dts);
  CHECK(r.max_modulus_deviation < 1e-12);
  CHECK(r.printed_rate == doctest::Approx(0.5 * p.omega));
  CHECK(r.observed_rate == doctest::Approx(p.omega));
  CHECK_FALSE(r.phases_agree);
  MESSAGE("phase rate: closed form " << r.printed_rate << ", numeric " << r.observed_rate);
  ModelParams cold = p;
  cold.beta = InverseTemperature::infinite();
  CHECK_THROWS_AS(correlation_phase_report(cold, dts), Error);
}

TEST_CASE("Rabi frequency") {
  CHECK(rabi_frequency(bath(1, 0.0, 0.5)) == doctest::Approx(1.0));
  CHECK(rabi_frequency(bath(4, 0.0, 0.1)) == doctest::Approx(0.4));
  CHECK(rabi_frequency(bath(201, 0.0, 0.1)) == doctest::Approx(2.8355).epsilon(1e-4));
}

TEST_CASE("single-mode transition lines") {
  // without the mode the spin never leaves |up>
  auto p = bath(10, 0.0, 0.0);
  CHECK(single_mode_transition_lines(p, 8).empty());
  // weak coupling, resonance: vacuum Rabi splitting 2 g sqrt(N) dominates
  p.g = 0.01;
  const auto lines = single_mode_transition_lines(p, 8);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front().frequency == doctest::Approx(2 * 0.01 * std::sqrt(10.0)).epsilon(1e-3));
  CHECK(lines.front().weight == doctest::Approx(0.5).epsilon(1e-2));
}
