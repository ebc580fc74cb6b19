#pragma once

// Small dense reference constructions built from Kronecker products. They
// deliberately avoid the library's own builders.

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinstar/symmetry.hpp"

namespace ref {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char which) {
  Mat m = Mat::Zero(2, 2);
  switch (which) {
    case 'i': m << 1, 0, 0, 1; break;
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    case '-': m << 0, 0, 1, 0; break;  // |down><up|
    case '+': m << 0, 1, 0, 0; break;
  }
  return m;
}

/// Operator acting on one qubit of `qubits`; site 0 is the leftmost factor.
inline Mat site_op(char which, int site, int qubits) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    const Mat f = q == site ? pauli(which) : pauli('i');
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

/// Central spin = site 0, bath = sites 1..N.
inline Mat hamiltonian(const spinstar::ModelParams& p) {
  const int q = p.n_spins + 1;
  Mat h = 0.5 * p.omega0 * site_op('z', 0, q);
  for (int i = 1; i < q; ++i) {
    h += 0.5 * p.omega * site_op('z', i, q);
    h += p.g * site_op('x', 0, q) * site_op('x', i, q);
  }
  return h;
}

/// Collective J_a = sum sigma_a / 2 on a bare N-spin bath.
inline Mat collective(char which, int n) {
  Mat out = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (int i = 0; i < n; ++i) out += 0.5 * site_op(which, i, n);
  return out;
}

inline double entropy_bits(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-300) s -= l * std::log2(l);
  }
  return s;
}

inline Mat propagator(const Mat& h, double t) { return (h * cplx(0.0, -t)).exp(); }

inline double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

}  // namespace ref
