#include "sector_propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entropy_kernel.hpp"
#include "spinstar/error.hpp"

namespace spinstar::detail {

SectorEigen diagonalize_sector(const ModelParams& params, BlockLabel label) {
  check_sector(params.n_spins, label);
  const int n = label.bath_dim();
  SectorEigen out;
  out.label = label;
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
      const double sz = chain_spin(c, k) == 0 ? 0.5 : -0.5;
      diag(k) = sz * params.omega0 + params.omega * (k - label.j());
    }
    for (int k = 0; k + 1 < n; ++k) sub(k) = params.g * ladder_element(label.two_j, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
      raise(ErrorKind::InvalidOperator, "tridiagonal eigensolver failed for 2j=" + std::to_string(label.two_j));
    }
    out.chains[static_cast<std::size_t>(c)] = ChainEigen{es.eigenvalues(), es.eigenvectors()};
  }
  return out;
}

namespace {

constexpr int kTimeChunk = 256;

struct Component {
  int k;
  cplx amp_up;
  cplx amp_down;
};

// Pure components sqrt(q p_k) |s> (x) |k> of the block initial state.
struct Decomposition {
  std::vector<Component> kept;
  double entropy_all = 0.0;
  double entropy_kept = 0.0;
};

Decomposition decompose_initial_state(const CentralState& rho_s0, const std::vector<double>& pops, double threshold) {
  std::vector<std::pair<double, Eigen::Vector2cd>> spin;
  if (rho_s0.is_diagonal()) {
    for (int mu = 0; mu < 2; ++mu) {
      const double q = rho_s0.rho(mu, mu).real();
      if (q > 0.0) spin.emplace_back(q, mu == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho_s0.rho);
    for (int i = 1; i >= 0; --i) {
      const double q = es.eigenvalues()(i);
      if (q > 0.0) spin.emplace_back(q, es.eigenvectors().col(i));
    }
  }
  Decomposition d;
  for (const auto& [q, s] : spin) {
    for (std::size_t k = 0; k < pops.size(); ++k) {
      const double w = q * pops[k];
      d.entropy_all += entropy_term_bits(w);
      if (w > 0.0 && w >= threshold) {
        const double r = std::sqrt(w);
        d.kept.push_back(Component{static_cast<int>(k), r * s(0), r * s(1)});
        d.entropy_kept += entropy_term_bits(w);
      }
    }
  }
  return d;
}

void fill_phases(const Eigen::VectorXd& values, const TimeGrid& grid, int t0, int count, Eigen::MatrixXd& cs,
                 Eigen::MatrixXd& sn) {
  cs.resize(values.size(), count);
  sn.resize(values.size(), count);
  for (int col = 0; col < count; ++col) {
    const double t = grid.time(t0 + col);
    for (Eigen::Index a = 0; a < values.size(); ++a) {
      const double x = values(a) * t;
      cs(a, col) = std::cos(x);
      sn(a, col) = std::sin(x);
    }
  }
}

}  // namespace

SectorTrace propagate_sector(const ModelParams& params, BlockLabel label, const CentralState& rho_s0,
                             const TimeGrid& grid, double entropy_threshold) {
  const int n = label.bath_dim();
  const int steps = grid.n_steps;
  const SectorEigen eig = diagonalize_sector(params, label);
  const auto pops = bath_populations(params, label);
  const Eigen::Matrix2cd& rs = rho_s0.rho;
  const bool coherent = !rho_s0.is_diagonal();

  SectorTrace out;
  out.up.assign(static_cast<std::size_t>(steps), 0.0);
  out.coherence.assign(static_cast<std::size_t>(steps), cplx(0.0));

  // rho_S(t)_{mu mu'} = sum_ab rho~_ab(0) G^{mu mu'}_ab exp(-i(l_a - l_b)t) in the
  // eigenbasis. <up|.|up> only pairs eigenstates of one chain, <down|.|up>
  // only pairs eigenstates of opposite chains.
  std::array<Eigen::MatrixXd, 2> m_up;
  std::array<Eigen::MatrixXcd, 2> m_coh;
  for (int c = 0; c < 2; ++c) {
    const auto& q = eig.chains[static_cast<std::size_t>(c)].vectors;
    Eigen::VectorXd pop(n), is_up(n);
    for (int k = 0; k < n; ++k) {
      const int mu = chain_spin(c, k);
      pop(k) = rs(mu, mu).real() * pops[static_cast<std::size_t>(k)];
      is_up(k) = mu == 0 ? 1.0 : 0.0;
    }
    const Eigen::MatrixXd rho_eig = q.transpose() * pop.asDiagonal() * q;
    const Eigen::MatrixXd g_up = q.transpose() * is_up.asDiagonal() * q;
    m_up[static_cast<std::size_t>(c)] = rho_eig.cwiseProduct(g_up);
    if (coherent) {
      const auto& q2 = eig.chains[static_cast<std::size_t>(1 - c)].vectors;
      Eigen::VectorXcd cross(n);
      Eigen::VectorXd is_down(n);
      for (int k = 0; k < n; ++k) {
        const int mu = chain_spin(c, k);
        cross(k) = rs(mu, 1 - mu) * pops[static_cast<std::size_t>(k)];
        is_down(k) = mu == 1 ? 1.0 : 0.0;
      }
      const Eigen::MatrixXcd rho_cross = q.transpose().cast<cplx>() * cross.asDiagonal() * q2.cast<cplx>();
      const Eigen::MatrixXd g_cross = q.transpose() * is_down.asDiagonal() * q2;
      m_coh[static_cast<std::size_t>(c)] = rho_cross.cwiseProduct(g_cross.cast<cplx>());
    }
  }

  std::array<Eigen::MatrixXd, 2> cs, sn;
  const cplx I(0.0, 1.0);
  for (int t0 = 0; t0 < steps; t0 += kTimeChunk) {
    const int count = std::min(kTimeChunk, steps - t0);
    for (std::size_t c = 0; c < 2; ++c) fill_phases(eig.chains[c].values, grid, t0, count, cs[c], sn[c]);
    for (std::size_t c = 0; c < 2; ++c) {
      Eigen::MatrixXd both(n, 2 * count);
      both << cs[c], sn[c];
      const Eigen::MatrixXd y = m_up[c] * both;
      for (int col = 0; col < count; ++col) {
        out.up[static_cast<std::size_t>(t0 + col)] +=
            cs[c].col(col).dot(y.col(col)) + sn[c].col(col).dot(y.col(count + col));
      }
    }
    if (coherent) {
      for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t c2 = 1 - c;
        const Eigen::MatrixXcd u = cs[c].cast<cplx>() - I * sn[c].cast<cplx>();
        const Eigen::MatrixXcd v = cs[c2].cast<cplx>() + I * sn[c2].cast<cplx>();
        const Eigen::MatrixXcd y = m_coh[c] * v;
        for (int col = 0; col < count; ++col) {
          out.coherence[static_cast<std::size_t>(t0 + col)] += u.col(col).cwiseProduct(y.col(col)).sum();
        }
      }
    }
  }

  if (entropy_threshold < 0.0) return out;

  const Decomposition dec = decompose_initial_state(rho_s0, pops, entropy_threshold);
  out.global_entropy = dec.entropy_all;
  out.global_entropy_kept = dec.entropy_kept;
  if (dec.kept.empty()) return out;

  // Pure components in each chain's eigenbasis, split into real and imaginary
  // parts so the per-time product with the real eigenvectors is one real GEMM.
  // With a diagonal central state every component lives in a single chain.
  std::array<Eigen::MatrixXd, 2> b_re, b_im;
  const Eigen::Index r = static_cast<Eigen::Index>(dec.kept.size());
  std::array<std::vector<Eigen::Index>, 2> members;
  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index col = 0; col < r; ++col) {
      const auto& comp = dec.kept[static_cast<std::size_t>(col)];
      const cplx amp = chain_spin(c, comp.k) == 0 ? comp.amp_up : comp.amp_down;
      if (coherent || amp != cplx(0.0)) members[static_cast<std::size_t>(c)].push_back(col);
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& q = eig.chains[c].vectors;
    const Eigen::Index rc = static_cast<Eigen::Index>(members[c].size());
    b_re[c].resize(n, rc);
    b_im[c].resize(n, rc);
    for (Eigen::Index j = 0; j < rc; ++j) {
      const auto& comp = dec.kept[static_cast<std::size_t>(members[c][static_cast<std::size_t>(j)])];
      const cplx amp = chain_spin(static_cast<int>(c), comp.k) == 0 ? comp.amp_up : comp.amp_down;
      b_re[c].col(j) = amp.real() * q.row(comp.k).transpose();
      b_im[c].col(j) = amp.imag() * q.row(comp.k).transpose();
    }
  }

  out.bath_entropy.assign(static_cast<std::size_t>(steps), 0.0);
  std::array<Eigen::MatrixXcd, 2> psi;
  Eigen::MatrixXd w, z;
  Eigen::VectorXd cosv, sinv;
  for (int step = 0; step < steps; ++step) {
    const double t = grid.time(step);
    for (std::size_t c = 0; c < 2; ++c) {
      const Eigen::Index rc = b_re[c].cols();
      const auto& values = eig.chains[c].values;
      cosv = (values * t).array().cos().matrix();
      sinv = (values * t).array().sin().matrix();
      w.resize(n, 2 * rc);
      w.leftCols(rc) = cosv.asDiagonal() * b_re[c] + sinv.asDiagonal() * b_im[c];
      w.rightCols(rc) = cosv.asDiagonal() * b_im[c] - sinv.asDiagonal() * b_re[c];
      z.noalias() = eig.chains[c].vectors * w;
      psi[c].resize(n, rc);
      psi[c].real() = z.leftCols(rc);
      psi[c].imag() = z.rightCols(rc);
    }
    double s = 0.0;
    if (!coherent) {
      // rho^B is block diagonal in k mod 2.
      const Eigen::Index r0 = psi[0].cols(), r1 = psi[1].cols();
      for (int cls = 0; cls < 2; ++cls) {
        const Eigen::Index rows = (n - cls + 1) / 2;
        Eigen::MatrixXcd x(rows, r0 + r1);
        for (Eigen::Index i = 0; i < rows; ++i) {
          const Eigen::Index k = 2 * i + cls;
          x.row(i).head(r0) = psi[0].row(k);
          x.row(i).tail(r1) = psi[1].row(k);
        }
        s += entropy_bits_of_gram(x);
      }
    } else {
      Eigen::MatrixXcd x(n, 2 * r);
      for (int k = 0; k < n; ++k) {
        x.row(k).head(r) = psi[static_cast<std::size_t>(k % 2)].row(k);
        x.row(k).tail(r) = psi[static_cast<std::size_t>((k + 1) % 2)].row(k);
      }
      s = entropy_bits_of_gram(x);
    }
    out.bath_entropy[static_cast<std::size_t>(step)] = s;
  }
  return out;
}

}  // namespace spinstar::detail
