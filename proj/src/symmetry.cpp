#include "spinstar/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinstar/error.hpp"

namespace spinstar {

void ModelParams::validate() const {
  if (n_spins < 1) raise(ErrorKind::InvalidParameter, "n_spins must be >= 1, got " + std::to_string(n_spins));
  if (!std::isfinite(omega) || omega <= 0.0) raise(ErrorKind::InvalidParameter, "omega must be a finite positive number");
  if (!std::isfinite(omega0)) raise(ErrorKind::InvalidParameter, "omega0 must be finite");
  if (!std::isfinite(g)) raise(ErrorKind::InvalidParameter, "g must be finite");
  if (!beta.is_infinite() && (!std::isfinite(beta.value()) || beta.value() < 0.0)) {
    raise(ErrorKind::InvalidParameter, "beta must be >= 0 or infinite");
  }
}

std::vector<BlockLabel> allowed_two_j(int n_spins) {
  if (n_spins < 1) raise(ErrorKind::InvalidParameter, "n_spins must be >= 1, got " + std::to_string(n_spins));
  std::vector<BlockLabel> out;
  out.reserve(static_cast<std::size_t>(n_spins / 2 + 1));
  for (int two_j = n_spins; two_j >= 0; two_j -= 2) out.push_back(BlockLabel{two_j});
  return out;
}

void check_sector(int n_spins, BlockLabel label) {
  if (n_spins < 1) raise(ErrorKind::InvalidParameter, "n_spins must be >= 1");
  if (label.two_j < 0 || label.two_j > n_spins || (n_spins - label.two_j) % 2 != 0) {
    raise(ErrorKind::InvalidSector,
          "2j=" + std::to_string(label.two_j) + " is not a sector of N=" + std::to_string(n_spins));
  }
}

BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  k = std::min(k, n - k);
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= (n - k + i);
    c /= i;
  }
  return c;
}

BigInt degeneracy_exact(int n_spins, BlockLabel label) {
  check_sector(n_spins, label);
  const int a = (n_spins - label.two_j) / 2;
  return binomial_exact(n_spins, a) - binomial_exact(n_spins, a - 1);
}

double degeneracy_log(int n_spins, BlockLabel label) {
  check_sector(n_spins, label);
  // alpha = C(N, a) (2j + 1) / (N - a + 1), a = N/2 - j.
  const int a = (n_spins - label.two_j) / 2;
  const double n = n_spins;
  return std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n - a + 1.0) +
         std::log(label.two_j + 1.0) - std::log(n - a + 1.0);
}

double log_sum_exp(std::span<const double> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

double SectorWeight::weight() const { return std::exp(log_weight); }

const SectorWeight& SectorWeights::at(BlockLabel label) const {
  for (const auto& s : sectors) {
    if (s.label == label) return s;
  }
  raise(ErrorKind::InvalidSector, "no weight for 2j=" + std::to_string(label.two_j));
}

namespace {

// -beta*omega*m for m = -j..j
std::vector<double> boltzmann_exponents(const ModelParams& params, BlockLabel label) {
  std::vector<double> e(static_cast<std::size_t>(label.bath_dim()));
  const double bw = params.beta.value() * params.omega;
  for (int k = 0; k <= label.two_j; ++k) {
    const double m = k - 0.5 * label.two_j;
    e[static_cast<std::size_t>(k)] = -bw * m;
  }
  return e;
}

}  // namespace

SectorWeights sector_weights(const ModelParams& params) {
  params.validate();
  SectorWeights out;
  const auto labels = allowed_two_j(params.n_spins);
  std::vector<double> log_terms;
  for (const auto label : labels) {
    SectorWeight s;
    s.label = label;
    s.log_alpha = degeneracy_log(params.n_spins, label);
    if (params.beta.is_infinite()) {
      s.log_zj = label.two_j == params.n_spins ? 0.0 : -std::numeric_limits<double>::infinity();
    } else {
      s.log_zj = log_sum_exp(boltzmann_exponents(params, label));
    }
    log_terms.push_back(s.log_alpha + s.log_zj);
    out.sectors.push_back(s);
  }
  out.log_partition = log_sum_exp(log_terms);
  for (auto& s : out.sectors) s.log_weight = s.log_alpha + s.log_zj - out.log_partition;
  return out;
}

std::vector<double> bath_populations(const ModelParams& params, BlockLabel label) {
  params.validate();
  std::vector<double> p(static_cast<std::size_t>(label.bath_dim()), 0.0);
  if (params.beta.is_infinite()) {
    p[0] = 1.0;
    return p;
  }
  const auto e = boltzmann_exponents(params, label);
  const double lz = log_sum_exp(e);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::exp(e[k] - lz);
  return p;
}

double ladder_element(int two_j, int k) {
  const long two_m = 2L * k - two_j;
  const long four_x = static_cast<long>(two_j) * (two_j + 2) - two_m * (two_m + 2);
  return 0.5 * std::sqrt(static_cast<double>(std::max(four_x, 0L)));
}

AngularMomentumMatrices angular_momentum_matrices(int two_j) {
  if (two_j < 0) raise(ErrorKind::InvalidParameter, "two_j must be >= 0");
  const int d = two_j + 1;
  AngularMomentumMatrices out;
  out.jz = Eigen::MatrixXd::Zero(d, d);
  out.jplus = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    out.jz(k, k) = k - 0.5 * two_j;
    if (k + 1 < d) out.jplus(k + 1, k) = ladder_element(two_j, k);
  }
  out.jminus = out.jplus.transpose();
  out.jx = 0.5 * (out.jplus + out.jminus);
  return out;
}

}  // namespace spinstar
