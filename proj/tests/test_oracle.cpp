#include <doctest.h>

#include <cmath>

#include "spinstar/error.hpp"
#include "spinstar/observables.hpp"
#include "spinstar/oracle.hpp"
#include "support.hpp"

using namespace spinstar;

namespace {

ModelParams params(int n, double beta, double g = 0.2) {
  ModelParams p;
  p.n_spins = n;
  p.g = g;
  p.omega0 = 1.3;
  p.omega = 1.0;
  p.beta = InverseTemperature(beta);
  return p;
}

ref::Mat gibbs_one(const ModelParams& p) {
  const double up = std::exp(-0.5 * p.beta.value() * p.omega);
  const double down = std::exp(0.5 * p.beta.value() * p.omega);
  ref::Mat one = ref::Mat::Zero(2, 2);
  one(0, 0) = up / (up + down);
  one(1, 1) = down / (up + down);
  return one;
}

}  // namespace

TEST_CASE("initial state is the product Gibbs state") {
  const auto p = params(4, 0.8);
  const auto st = full_initial_state(p, CentralState::plus());
  CHECK_NOTHROW(st.validate());
  ref::Mat bath = ref::Mat::Identity(1, 1);
  for (int i = 0; i < 4; ++i) bath = Eigen::kroneckerProduct(bath, gibbs_one(p)).eval();
  CHECK((trace_out_central(st) - bath).cwiseAbs().maxCoeff() < 1e-13);
  const ref::Mat expected = Eigen::kroneckerProduct(CentralState::plus().rho, bath).eval();
  CHECK((st.rho - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((trace_out_bath(st).rho - CentralState::plus().rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("no coupling keeps the spin up") {
  const auto traj = run_full_trajectory(params(3, 0.5, 0.0), CentralState::up(), TimeGrid::up_to(10.0, 0.5));
  for (const auto& st : traj.central_states) CHECK(probability_up(st) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("two-spin problem in closed form") {
  ModelParams p = params(1, 0.0, 0.15);
  p.beta = InverseTemperature::infinite();
  const auto grid = TimeGrid::up_to(40.0, 0.1);
  const auto traj = run_full_trajectory(p, CentralState::up(), grid);
  // |up,down> <-> |down,up> with detuning omega0 - omega and coupling g
  const double delta = p.omega0 - p.omega;
  const double rabi = std::sqrt(delta * delta + 4 * p.g * p.g);
  for (int k = 0; k < grid.n_steps; ++k) {
    const double s = std::sin(0.5 * rabi * grid.time(k));
    const double expected = 1.0 - 4 * p.g * p.g / (rabi * rabi) * s * s;
    CHECK(probability_up(traj.central_states[static_cast<std::size_t>(k)]) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("evolution preserves trace, Hermiticity and global entropy") {
  const auto p = params(4, 1.0);
  const auto eig = diagonalize_full(p);
  const auto st0 = full_initial_state(p, CentralState::from_amplitudes(0.8, cplx(0.0, 0.6)));
  const double s0 = ref::entropy_bits(st0.rho);
  for (double t : {0.5, 3.0, 25.0}) {
    const auto st = evolve_full(eig, st0, t);
    CHECK(std::abs(st.rho.trace() - cplx(1.0)) < 1e-10);
    CHECK((st.rho - st.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(ref::entropy_bits(st.rho) - s0) < 1e-9);
    const ref::Mat u = ref::propagator(ref::hamiltonian(p), t);
    CHECK((st.rho - u * st0.rho * u.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("trajectory agrees with explicit density-matrix evolution") {
  const auto p = params(3, 0.4);
  const auto init = CentralState::plus();
  const auto grid = TimeGrid::up_to(6.0, 1.5);
  const auto traj = run_full_trajectory(p, init, grid);
  const auto eig = diagonalize_full(p);
  const auto st0 = full_initial_state(p, init);
  REQUIRE(traj.entropies);
  for (int k = 0; k < grid.n_steps; ++k) {
    const auto st = evolve_full(eig, st0, grid.time(k));
    const auto i = static_cast<std::size_t>(k);
    CHECK((traj.central_states[i].rho - trace_out_bath(st).rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(traj.entropies->bath[i] == doctest::Approx(ref::entropy_bits(trace_out_central(st))).epsilon(1e-10));
    CHECK(traj.entropies->global[i] == doctest::Approx(ref::entropy_bits(st.rho)).epsilon(1e-10));
    CHECK(std::abs(traj.entropies->global[i] - traj.entropies->global[0]) < 1e-9);
  }
}

TEST_CASE("oracle limit") {
  CHECK_THROWS_AS(run_full_trajectory(params(13, 0.0), CentralState::up(), TimeGrid::up_to(1.0, 0.5)), Error);
  OracleOptions tight;
  tight.oracle_limit = 2;
  try {
    run_full_trajectory(params(3, 0.0), CentralState::up(), TimeGrid::up_to(1.0, 0.5), tight);
    FAIL("expected a resource limit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}
