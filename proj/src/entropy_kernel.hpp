#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace spinstar::detail {

inline double entropy_term_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

template <class Vec>
double entropy_bits_of_spectrum(const Vec& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) s += entropy_term_bits(eigenvalues(i));
  return s;
}

/// Entropy of X X^dag from whichever of X X^dag / X^dag X is smaller; the
/// two share their nonzero spectrum.
inline double entropy_bits_of_gram(const Eigen::MatrixXcd& x) {
  if (x.size() == 0) return 0.0;
  const bool wide = x.rows() <= x.cols();
  const Eigen::Index d = wide ? x.rows() : x.cols();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  if (wide) {
    a.selfadjointView<Eigen::Lower>().rankUpdate(x);
  } else {
    a.selfadjointView<Eigen::Lower>().rankUpdate(x.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return entropy_bits_of_spectrum(es.eigenvalues());
}

inline double entropy_bits_2x2(const Eigen::Matrix2cd& rho) {
  // eigenvalues (1 +- r)/2 with r the Bloch-vector length
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double tr = a + d;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + std::norm(rho(1, 0))));
  return entropy_term_bits(0.5 * tr + disc) + entropy_term_bits(0.5 * tr - disc);
}

}  // namespace spinstar::detail
