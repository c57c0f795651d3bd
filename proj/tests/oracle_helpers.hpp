#ifndef SUNIRREP_TESTS_ORACLE_HELPERS_HPP
#define SUNIRREP_TESTS_ORACLE_HELPERS_HPP

// Test-side oracles shared by the unit and acceptance suites.  Everything
// here is deliberately independent of the pipeline implementation path:
// truncated Fock ladder matrices, sector-block exponentials, and dense
// grid operators.

#include <Eigen/Dense>

#include "sunirrep/algebra.hpp"
#include "sunirrep/fastforward.hpp"
#include "sunirrep/fock.hpp"
#include "sunirrep/linalg.hpp"
#include "sunirrep/oscillator.hpp"

namespace sunirrep::testing {

// Two truncated oscillator modes; factor exponentials applied through the
// single-mode eigenbases.  Mode 1 sits on the slow axis of the flat state.
struct TwoModeFock {
  int dim;
  Eigen::VectorXd wx, wp;
  Mat Qx, Qp;

  explicit TwoModeFock(int d) : dim(d) {
    Eigen::SelfAdjointEigenSolver<Mat> ex(Mat(fock_position(d).cast<cplx>()));
    wx = ex.eigenvalues();
    Qx = ex.eigenvectors();
    Eigen::SelfAdjointEigenSolver<Mat> ep(fock_momentum(d));
    wp = ep.eigenvalues();
    Qp = ep.eigenvectors();
  }

  // v <- exp(i angle O1_{mode 1} O2_{mode 2}) v; the column-major map
  // V(r, c) = v[c*dim + r] has mode 1 on columns, mode 2 on rows.
  void apply_pair(Vec& v, char o_mode1, char o_mode2, double angle) const {
    const Mat& Q1 = (o_mode1 == 'x') ? Qx : Qp;
    const Mat& Q2 = (o_mode2 == 'x') ? Qx : Qp;
    const Eigen::VectorXd& w1 = (o_mode1 == 'x') ? wx : wp;
    const Eigen::VectorXd& w2 = (o_mode2 == 'x') ? wx : wp;
    Eigen::Map<Mat> V(v.data(), dim, dim);
    Mat W = Q2.adjoint() * V * Q1.conjugate();
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        W(r, c) *= std::exp(cplx(0.0, angle * w2(r) * w1(c)));
    V = Q2 * W * Q1.transpose();
  }

  void apply_single(Vec& v, int mode, char o, double angle) const {
    const Mat& Q = (o == 'x') ? Qx : Qp;
    const Eigen::VectorXd& w = (o == 'x') ? wx : wp;
    Eigen::Map<Mat> V(v.data(), dim, dim);
    if (mode == 1) {
      Mat W = V * Q.conjugate();
      for (int c = 0; c < dim; ++c)
        W.col(c) *= std::exp(cplx(0.0, angle * w(c) * w(c)));
      V = W * Q.transpose();
    } else {
      Mat W = Q.adjoint() * V;
      for (int r = 0; r < dim; ++r)
        W.row(r) *= std::exp(cplx(0.0, angle * w(r) * w(r)));
      V = Q * W;
    }
  }

  void apply_term(Vec& v, const FactorTerm& t) const {
    switch (t.monomial) {
      case Monomial::XX: apply_pair(v, 'x', 'x', t.angle); break;
      case Monomial::PP: apply_pair(v, 'p', 'p', t.angle); break;
      case Monomial::XP:
        if (t.j == 1)
          apply_pair(v, 'x', 'p', t.angle);
        else
          apply_pair(v, 'p', 'x', t.angle);
        break;
      case Monomial::X2: apply_single(v, t.j, 'x', t.angle); break;
      case Monomial::P2: apply_single(v, t.j, 'p', t.angle); break;
    }
  }

  Vec basis_state(int m1, int m2) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim) * dim);
    v(static_cast<Eigen::Index>(m1) * dim + m2) = 1.0;
    return v;
  }
};

// Continuum action of exp(i angle T) on |m1, m2>, exact through the su(2)
// irrep block of the total-number sector (valid while m1 + m2 < dim).
inline Vec sector_exponential(const TwoModeFock& fock, GeneratorKind kind,
                              double angle, int m1, int m2) {
  const int M = m1 + m2;
  const IrrepShape shape = make_shape(2, M);
  const Generator g = (kind == GeneratorKind::Diagonal) ? Generator::diagonal(1)
                      : (kind == GeneratorKind::Symmetric)
                          ? Generator::symmetric(1, 2)
                          : Generator::antisymmetric(1, 2);
  const Mat U = expm_i_hermitian(Mat(build_generator(shape, g).entries), angle);
  Vec out = Vec::Zero(static_cast<Eigen::Index>(fock.dim) * fock.dim);
  for (int ell = 0; ell <= M; ++ell)
    out(static_cast<Eigen::Index>(M - ell) * fock.dim + ell) = U(ell, m2);
  return out;
}

/// Worst Lemma-1 identity residual over the m <= mmax Fock grid (step 4).
inline double lemma1_fock_residual(GeneratorKind kind, double angle, int dim = 64,
                                   int mmax = 16, int stride = 4) {
  const TwoModeFock fock(dim);
  const Generator g = (kind == GeneratorKind::Diagonal) ? Generator::diagonal(1)
                      : (kind == GeneratorKind::Symmetric)
                          ? Generator::symmetric(1, 2)
                          : Generator::antisymmetric(1, 2);
  const auto terms = expand_factor({g, angle});
  double worst = 0.0;
  for (int m1 = 0; m1 <= mmax; m1 += stride)
    for (int m2 = 0; m2 <= mmax; m2 += stride) {
      Vec v = fock.basis_state(m1, m2);
      for (auto it = terms.rbegin(); it != terms.rend(); ++it) fock.apply_term(v, *it);
      worst = std::max(worst, (v - sector_exponential(fock, kind, angle, m1, m2)).norm());
    }
  return worst;
}

/// Claim-1 residual on the discrete grid, restricted to m <= mmax.
inline double claim1_grid_residual(int L, double t, int mmax = 16) {
  const DiscreteOscillator osc(L);
  Mat x2 = Mat::Zero(L, L);
  for (int J = 0; J < L; ++J) x2(J, J) = osc.grid()(J) * osc.grid()(J);
  Mat F(L, L);
  Vec e(L);
  for (int c = 0; c < L; ++c) {
    e.setZero();
    e(c) = 1.0;
    osc.dft().forward(e.data());
    F.col(c) = e;
  }
  const Mat p2 = F * x2 * F.adjoint();
  Mat E(L, mmax + 1);
  for (int m = 0; m <= mmax; ++m) E.col(m) = osc.hermite_state(m).amplitudes;
  const double root2 = std::sqrt(2.0);
  const auto [alpha, beta] = claim1_angles(t);
  const Mat lhs = expm_i_hermitian(Mat((x2 + p2) / root2), t);
  const Mat rhs = expm_i_hermitian(p2, alpha / root2) *
                  expm_i_hermitian(x2, beta / root2) *
                  expm_i_hermitian(p2, alpha / root2);
  return spectral_norm(Mat((lhs - rhs) * E));
}

}  // namespace sunirrep::testing

#endif
