#include <doctest.h>

#include <cmath>
#include <map>

#include "spinstar/error.hpp"
#include "spinstar/symmetry.hpp"
#include "support.hpp"

using namespace spinstar;

TEST_CASE("sector labels") {
  auto five = allowed_two_j(5);
  REQUIRE(five.size() == 3);
  CHECK(five[0].two_j == 5);
  CHECK(five[2].two_j == 1);
  auto four = allowed_two_j(4);
  REQUIRE(four.size() == 3);
  CHECK(four.back().two_j == 0);
  CHECK(allowed_two_j(201).size() == 101);

  CHECK_THROWS_AS(check_sector(4, BlockLabel{3}), Error);
  CHECK_THROWS_AS(check_sector(4, BlockLabel{6}), Error);
  CHECK_THROWS_AS(check_sector(4, BlockLabel{-2}), Error);
  CHECK_NOTHROW(check_sector(4, BlockLabel{2}));
}

TEST_CASE("degeneracies of small baths") {
  CHECK(degeneracy_exact(4, BlockLabel{4}) == 1);
  CHECK(degeneracy_exact(4, BlockLabel{2}) == 3);
  CHECK(degeneracy_exact(4, BlockLabel{0}) == 2);
  CHECK(degeneracy_exact(1, BlockLabel{1}) == 1);
  CHECK(degeneracy_exact(3, BlockLabel{1}) == 2);
}

TEST_CASE("degeneracies match the J^2 spectrum of the explicit bath") {
  for (int n = 1; n <= 7; ++n) {
    const auto jx = ref::collective('x', n);
    const auto jy = ref::collective('y', n);
    const auto jz = ref::collective('z', n);
    const ref::Mat j2 = jx * jx + jy * jy + jz * jz;
    Eigen::SelfAdjointEigenSolver<ref::Mat> es(j2, Eigen::EigenvaluesOnly);
    std::map<int, int> count;  // 2j -> states
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double jj = es.eigenvalues()(i);
      const int two_j = static_cast<int>(std::lround(std::sqrt(1.0 + 4.0 * jj) - 1.0));
      ++count[two_j];
    }
    for (auto label : allowed_two_j(n)) {
      CHECK(BigInt(count[label.two_j]) == degeneracy_exact(n, label) * label.bath_dim());
    }
  }
}

TEST_CASE("dimension sum rule is exact") {
  for (int n = 1; n <= 30; ++n) {
    BigInt total = 0;
    for (auto label : allowed_two_j(n)) total += degeneracy_exact(n, label) * label.bath_dim();
    CHECK(total == (BigInt(1) << n));
  }
}

TEST_CASE("log degeneracy agrees with exact arithmetic") {
  for (int n : {1, 2, 17, 100, 201}) {
    for (auto label : allowed_two_j(n)) {
      const double exact = std::log(degeneracy_exact(n, label).convert_to<double>());
      CHECK(degeneracy_log(n, label) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("binomials") {
  CHECK(binomial_exact(5, 2) == 10);
  CHECK(binomial_exact(5, -1) == 0);
  CHECK(binomial_exact(5, 6) == 0);
  BigInt sum = 0;
  for (int k = 0; k <= 200; ++k) sum += binomial_exact(200, k);
  CHECK(sum == (BigInt(1) << 200));
}

TEST_CASE("log_sum_exp") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> a{0.0, 0.0};
  CHECK(log_sum_exp(a) == doctest::Approx(std::log(2.0)));
  std::vector<double> b{1000.0, 1000.0};
  CHECK(log_sum_exp(b) == doctest::Approx(1000.0 + std::log(2.0)));
  std::vector<double> c{-inf, -inf};
  CHECK(log_sum_exp(c) == -inf);
  std::vector<double> d{-inf, 3.0};
  CHECK(log_sum_exp(d) == doctest::Approx(3.0));
}

TEST_CASE("sector weights") {
  for (double beta : {0.0, 0.1, 0.5, 1.0, 3.0}) {
    ModelParams p;
    p.beta = InverseTemperature(beta);
    const auto w = sector_weights(p);
    double total = 0.0;
    for (const auto& s : w.sectors) total += s.weight();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const double expected = p.n_spins * std::log(2.0 * std::cosh(0.5 * beta));
    CHECK(std::abs(w.log_partition - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
  }
  ModelParams cold;
  cold.beta = InverseTemperature::infinite();
  const auto w = sector_weights(cold);
  CHECK(w.at(BlockLabel{cold.n_spins}).weight() == 1.0);
  CHECK(w.at(BlockLabel{cold.n_spins - 2}).weight() == 0.0);
  CHECK_THROWS_AS(w.at(BlockLabel{cold.n_spins + 2}), Error);
}

TEST_CASE("sector populations reproduce the binomial magnetisation law") {
  for (int n : {5, 6, 31}) {
    for (double beta : {0.0, 0.4, 2.0}) {
      ModelParams p;
      p.n_spins = n;
      p.beta = InverseTemperature(beta);
      const double p_up = std::exp(-0.5 * beta) / (2.0 * std::cosh(0.5 * beta));
      const auto w = sector_weights(p);
      // two_m -> probability
      std::map<int, double> law;
      for (const auto& s : w.sectors) {
        const auto pops = bath_populations(p, s.label);
        for (int k = 0; k <= s.label.two_j; ++k) law[2 * k - s.label.two_j] += s.weight() * pops[k];
      }
      for (int ups = 0; ups <= n; ++ups) {
        const double expected = binomial_exact(n, ups).convert_to<double>() * std::pow(p_up, ups) *
                                std::pow(1.0 - p_up, n - ups);
        CHECK(law[2 * ups - n] == doctest::Approx(expected).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("zero-temperature populations") {
  ModelParams p;
  p.n_spins = 6;
  p.beta = InverseTemperature::infinite();
  const auto pops = bath_populations(p, BlockLabel{6});
  CHECK(pops[0] == 1.0);
  for (std::size_t k = 1; k < pops.size(); ++k) CHECK(pops[k] == 0.0);
}

TEST_CASE("small spin matrices") {
  const auto half = angular_momentum_matrices(1);
  CHECK(half.jz(0, 0) == -0.5);
  CHECK(half.jz(1, 1) == 0.5);
  CHECK(half.jx(0, 1) == 0.5);
  CHECK(half.jx(1, 0) == 0.5);
  const auto one = angular_momentum_matrices(2);
  CHECK(one.jx(1, 0) == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(one.jx(1, 2) == doctest::Approx(std::sqrt(2.0) / 2));
}

TEST_CASE("angular momentum algebra") {
  for (int two_j = 0; two_j <= 9; ++two_j) {
    const auto a = angular_momentum_matrices(two_j);
    const double j = 0.5 * two_j;
    CHECK((a.jx - a.jx.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.jz - a.jz.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.jz * a.jplus - a.jplus * a.jz - a.jplus).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd casimir = a.jplus * a.jminus + a.jz * a.jz - a.jz;
    CHECK((casimir - j * (j + 1) * Eigen::MatrixXd::Identity(two_j + 1, two_j + 1)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd comm = a.jplus * a.jminus - a.jminus * a.jplus;
    CHECK((comm - 2.0 * a.jz).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd jy_sq = -0.25 * (a.jplus - a.jminus) * (a.jplus - a.jminus);
    const Eigen::MatrixXd j2 = a.jx * a.jx + jy_sq + a.jz * a.jz;
    const Eigen::MatrixXd target = j * (j + 1) * Eigen::MatrixXd::Identity(two_j + 1, two_j + 1);
    CHECK((j2 - target).cwiseAbs().maxCoeff() < 1e-12);
    for (int k = 0; k < two_j; ++k) {
      const double m = k - j;
      CHECK(ladder_element(two_j, k) == doctest::Approx(std::sqrt(j * (j + 1) - m * (m + 1))));
      CHECK(a.jplus(k + 1, k) == doctest::Approx(ladder_element(two_j, k)));
    }
  }
}
