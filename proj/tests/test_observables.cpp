#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinstar/error.hpp"
#include "spinstar/observables.hpp"

using namespace spinstar;

namespace {

ObservableSeries series_of(double dt, std::vector<double> v) {
  TimeGrid g;
  g.dt = dt;
  g.n_steps = static_cast<int>(v.size());
  return ObservableSeries{g, SeriesKind::Probability, std::move(v)};
}

}  // namespace

TEST_CASE("probability and coherence") {
  CHECK(probability_up(CentralState::up()) == 1.0);
  CentralState mixed;
  mixed.rho = 0.5 * Eigen::Matrix2cd::Identity();
  CHECK(probability_up(mixed) == 0.5);
  CHECK(coherence(CentralState::up()) == cplx(0.0));
  CHECK(coherence(CentralState::plus()).real() == doctest::Approx(0.5));
}

TEST_CASE("Bloch vector") {
  const auto up = bloch_vector(CentralState::up());
  CHECK(up.z == 1.0);
  CHECK(up.x == 0.0);
  const auto plus = bloch_vector(CentralState::plus());
  CHECK(plus.x == doctest::Approx(1.0));
  CHECK(plus.y == doctest::Approx(0.0));
  // (|up> + i|down>)/sqrt2 points along +y
  const auto y = bloch_vector(CentralState::from_amplitudes(std::sqrt(0.5), cplx(0.0, std::sqrt(0.5))));
  CHECK(y.y == doctest::Approx(1.0));
  CHECK(y.x == doctest::Approx(0.0));
}

TEST_CASE("coherence ratio") {
  TimeGrid g;
  g.dt = 1.0;
  g.n_steps = 3;
  ComplexSeries c{g, SeriesKind::Coherence, {cplx(0.5, 0.1), cplx(0.25, 0.05), cplx(0.0, 0.5)}};
  const auto l = coherence_ratio(c);
  CHECK(l.values[0] == cplx(1.0));
  CHECK(std::abs(l.values[1] - cplx(0.5)) < 1e-15);
  CHECK(l.magnitude()[1] == doctest::Approx(0.5));
  CHECK(l.real().size() == 3);
  ComplexSeries zero{g, SeriesKind::Coherence, {cplx(0.0), cplx(0.1), cplx(0.2)}};
  try {
    coherence_ratio(zero);
    FAIL("expected undefined ratio");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedRatio);
  }
}

TEST_CASE("fluctuation") {
  CHECK(fluctuation(series_of(0.5, std::vector<double>(400, 0.3))) == 0.0);
  // dense sinusoid over many periods: variance A^2 / 2
  const double amp = 0.2;
  const double nu = 2.3;
  const double dt = 0.01;
  std::vector<double> v;
  for (int k = 0; k <= 100000; ++k) v.push_back(0.4 + amp * std::sin(nu * dt * k));
  const double periods = (1000.0 - 50.0) * nu / (2 * std::numbers::pi);
  REQUIRE(periods >= 50);
  CHECK(fluctuation(series_of(dt, v)) == doctest::Approx(amp * amp / 2).epsilon(0.01));
  CHECK_THROWS_AS(fluctuation(series_of(0.1, std::vector<double>(100, 0.0))), Error);
  CHECK(window_mean(series_of(1.0, {0, 1, 2, 3, 4}), 1.0, 3.0) == 2.0);
  CHECK_THROWS_AS(window_mean(series_of(1.0, {0, 1}), 5.0, 6.0), Error);
}

TEST_CASE("von Neumann entropy") {
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(3, 3);
  pure(1, 1) = 1.0;
  CHECK(von_neumann_entropy(pure) == 0.0);
  CHECK(von_neumann_entropy(Eigen::MatrixXcd(0.5 * Eigen::MatrixXcd::Identity(2, 2))) == doctest::Approx(1.0));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.2689;
  d(1, 1) = 0.7311;
  CHECK(von_neumann_entropy(d) == doctest::Approx(0.83988).epsilon(1e-5));
  const double p = 0.2689;
  CHECK(von_neumann_entropy(d) == doctest::Approx(-p * std::log2(p) - (1 - p) * std::log2(1 - p)));
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(von_neumann_entropy(bad), Error);
  bad << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(bad), Error);
}

TEST_CASE("thermal reference") {
  CHECK(thermal_reference(InverseTemperature(0.0), 1.0).probability_up == 0.5);
  CHECK(thermal_reference(InverseTemperature::infinite(), 1.0).probability_up == 0.0);
  CHECK(thermal_reference(InverseTemperature::infinite(), 1.0).state.rho(1, 1) == cplx(1.0));
  const auto r = thermal_reference(InverseTemperature(1.0), 1.0);
  CHECK(r.probability_up == doctest::Approx(0.26894).epsilon(1e-4));
  CHECK(r.probability_up == doctest::Approx(std::exp(-0.5) / (2 * std::cosh(0.5))));
}

TEST_CASE("mutual entropy requires entropies") {
  ModelParams p;
  p.n_spins = 3;
  const auto traj = run_trajectory(p, CentralState::up(), TimeGrid::up_to(1.0, 0.5));
  CHECK_THROWS_AS(mutual_entropy_series(traj), Error);
  CHECK_THROWS_AS(bloch_component_series(traj, SeriesKind::Probability), Error);
  CHECK(bloch_component_series(traj, SeriesKind::SigmaZ).values.front() == doctest::Approx(1.0).epsilon(1e-14));
}
