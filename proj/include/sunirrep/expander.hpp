#ifndef SUNIRREP_EXPANDER_HPP
#define SUNIRREP_EXPANDER_HPP

// Explicit Ramanujan quantum expanders from the LPS rotation set.  The
// degree-D channel averages conjugations by D unitaries of the su(2)
// irrep, with rotation angles and axes read off the integer quaternion
// solutions of a0^2 + a1^2 + a2^2 + a3^2 = p:
//
//   theta = 2 arccos(a0 / sqrt(p)),  axis = (a1, a2, a3) / sqrt(p - a0^2).
//
// The figure of merit is the largest singular value lambda of the channel
// on the traceless subspace, against the optimal bound 2 sqrt(D-1)/D.

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sunirrep/algebra.hpp"
#include "sunirrep/combinatorics.hpp"
#include "sunirrep/common.hpp"
#include "sunirrep/linalg.hpp"

namespace sunirrep {

struct QuaternionSolution {
  std::array<std::int64_t, 4> a{};
  std::int64_t p = 0;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// The p+1 distinct quaternion solutions.  For p = 1 mod 4 the canonical
/// representative of each class has a0 odd and positive; for p = 3 the
/// four axis solutions (1,1,1), (1,1,-1), (1,-1,1), (-1,1,1) (all with
/// a0 = 0, theta = pi) are used.
inline std::vector<QuaternionSolution> distinct_solutions(std::int64_t p) {
  if (!is_prime(p)) throw std::domain_error("distinct_solutions: p must be prime");
  std::vector<QuaternionSolution> out;
  if (p == 3) {
    out.push_back({{0, 1, 1, 1}, p});
    out.push_back({{0, 1, 1, -1}, p});
    out.push_back({{0, 1, -1, 1}, p});
    out.push_back({{0, -1, 1, 1}, p});
    return out;
  }
  if (p % 4 != 1)
    throw std::domain_error("distinct_solutions: need p = 1 mod 4 (or p = 3)");
  const auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
  for (std::int64_t a0 = 1; a0 * a0 <= p; a0 += 2)
    for (std::int64_t a1 = -s; a1 <= s; ++a1)
      for (std::int64_t a2 = -s; a2 <= s; ++a2) {
        const std::int64_t rem = p - a0 * a0 - a1 * a1 - a2 * a2;
        if (rem < 0) continue;
        const auto a3 = static_cast<std::int64_t>(std::llround(std::sqrt(
            static_cast<double>(rem))));
        if (a3 * a3 != rem) continue;
        out.push_back({{a0, a1, a2, a3}, p});
        if (a3 != 0) out.push_back({{a0, a1, a2, -a3}, p});
      }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.a > y.a;  // deterministic listing, descending lexicographic
  });
  if (out.size() != static_cast<std::size_t>(p + 1))
    throw std::runtime_error("distinct_solutions: expected p+1 solutions, got " +
                             std::to_string(out.size()));
  return out;
}

struct Rotation {
  double theta = 0.0;
  std::array<double, 3> axis{};
};

struct ExpanderSpec {
  std::int64_t p = 0;
  int D = 0;
  std::vector<Rotation> rotations;
  IrrepShape shape;  // n = 2, M = N - 1
};

inline ExpanderSpec make_expander_spec(std::int64_t p, std::int64_t N) {
  if (N < 2) throw std::domain_error("make_expander_spec: N must be >= 2");
  ExpanderSpec spec;
  spec.p = p;
  spec.shape = make_shape(2, N - 1);
  const auto sols = distinct_solutions(p);
  spec.D = static_cast<int>(sols.size());
  const double rp = std::sqrt(static_cast<double>(p));
  for (const auto& sol : sols) {
    Rotation rot;
    rot.theta = 2.0 * std::acos(static_cast<double>(sol.a[0]) / rp);
    const double denom =
        std::sqrt(static_cast<double>(p - sol.a[0] * sol.a[0]));
    for (int i = 0; i < 3; ++i)
      rot.axis[i] = static_cast<double>(sol.a[i + 1]) / denom;
    spec.rotations.push_back(rot);
  }
  return spec;
}

/// The D Kraus unitaries U_d = exp(-i theta (n_x J_x + n_y J_y + n_z J_z))
/// in the (M+1)-dimensional irrep, with J_x = S_{1,2}, J_y = A_{1,2},
/// J_z = H_1.  The J_y sign convention is immaterial: the solution set is
/// closed under a2 -> -a2.
inline std::vector<Mat> build_channel(const ExpanderSpec& spec,
                                      Eigen::Index dense_cap = kDefaultDenseCap) {
  if (static_cast<Eigen::Index>(spec.shape.N) > dense_cap)
    throw resource_error("build_channel: N exceeds dense cap");
  const Mat Jx = Mat(build_generator(spec.shape, Generator::symmetric(1, 2)).entries);
  const Mat Jy =
      Mat(build_generator(spec.shape, Generator::antisymmetric(1, 2)).entries);
  const Mat Jz = Mat(build_generator(spec.shape, Generator::diagonal(1)).entries);
  std::vector<Mat> kraus;
  kraus.reserve(spec.rotations.size());
  for (const auto& rot : spec.rotations) {
    const Mat H = rot.axis[0] * Jx + rot.axis[1] * Jy + rot.axis[2] * Jz;
    kraus.push_back(expm_i_hermitian(H, -rot.theta));
  }
  return kraus;
}

struct ChannelSpectrum {
  int N = 0;
  std::vector<double> singular_values;  // leading values, descending
  double lambda = 0.0;                  // largest singular value, traceless subspace
  double bound = 0.0;                   // 2 sqrt(D-1)/D
  int iterations = 0;
  double residual = 0.0;
};

struct SpectralGapOptions {
  std::uint64_t seed = 0;
  double tol = 1e-12;          // stabilization of successive lambda estimates
  double residual_tol = 1e-10; // top Ritz pair residual, in lambda units
  int max_iterations = 500;
};

/// Largest singular value of X -> (1/D) sum_d U_d X U_d^dagger on the
/// traceless subspace: Lanczos on Phi^dagger Phi with the identity
/// direction deflated, matrix-free (D conjugations per matvec), fixed
/// seed, full reorthogonalization.
inline ChannelSpectrum spectral_gap(const std::vector<Mat>& kraus,
                                    const SpectralGapOptions& opts = {}) {
  const int D = static_cast<int>(kraus.size());
  if (D < 2) throw std::domain_error("spectral_gap: need at least 2 Kraus terms");
  const Eigen::Index N = kraus.front().rows();
  for (const Mat& U : kraus)
    if (U.rows() != N || U.cols() != N)
      throw std::domain_error("spectral_gap: Kraus dimensions differ");

  auto channel = [&](const Mat& X, bool adjoint) {
    Mat Y = Mat::Zero(N, N);
    for (const Mat& U : kraus) {
      if (adjoint)
        Y += U.adjoint() * X * U;
      else
        Y += U * X * U.adjoint();
    }
    return Mat(Y / static_cast<double>(D));
  };
  auto deflate = [&](Mat& X) {
    const cplx tr = X.trace() / static_cast<double>(N);
    X -= tr * Mat::Identity(N, N);
  };
  auto dot = [](const Mat& A, const Mat& B) {
    return (A.adjoint() * B).trace();
  };

  // deterministic Hermitian traceless start
  std::mt19937_64 rng(opts.seed);
  auto canon = [&]() { return (rng() >> 11) * 0x1.0p-53 - 0.5; };
  Mat q = Mat::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j) q(i, j) = cplx(canon(), canon());
  q = 0.5 * (q + q.adjoint()).eval();
  deflate(q);
  q /= std::sqrt(std::real(dot(q, q)));

  std::vector<Mat> basis{q};
  std::vector<double> alpha, beta;
  double lambda_prev = -1.0;
  int stable = 0;
  Eigen::VectorXd ritz;
  Eigen::MatrixXd ritz_vecs;

  // residual of the top Ritz pair of Phi^dag Phi, scaled to lambda units
  auto top_residual = [&](double* lambda_out) {
    const int k = static_cast<int>(alpha.size());
    Mat y = Mat::Zero(N, N);
    for (int i = 0; i < k; ++i) y += ritz_vecs(i, k - 1) * basis[i];
    Mat r = channel(channel(y, false), true);
    deflate(r);
    r -= ritz(k - 1) * y;
    const double lam = std::sqrt(std::max(0.0, ritz(k - 1)));
    if (lambda_out) *lambda_out = lam;
    return std::sqrt(std::real(dot(r, r))) / std::max(2.0 * lam, 1e-30);
  };

  bool converged = false;
  double residual = 0.0;
  while (static_cast<int>(alpha.size()) < opts.max_iterations) {
    Mat w = channel(channel(basis.back(), false), true);  // Phi^dag Phi
    deflate(w);
    const double a = std::real(dot(basis.back(), w));
    alpha.push_back(a);
    w -= a * basis.back();
    if (!beta.empty()) w -= beta.back() * basis[basis.size() - 2];
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& b : basis) w -= dot(b, w) * b;
    const double bnorm = std::sqrt(std::real(dot(w, w)));

    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    ritz = es.eigenvalues();
    ritz_vecs = es.eigenvectors();
    const double lambda_now = std::sqrt(std::max(0.0, ritz(k - 1)));

    const bool breakdown = bnorm < 1e-14;  // Krylov space exhausted: exact
    if (std::abs(lambda_now - lambda_prev) < opts.tol * std::max(1.0, lambda_now))
      ++stable;
    else
      stable = 0;
    lambda_prev = lambda_now;
    if (breakdown || stable >= 3) {
      residual = top_residual(nullptr);
      if (breakdown || residual <= opts.residual_tol) {
        converged = true;
        break;
      }
      stable = 0;  // value settled but the Ritz pair has not: keep going
    }
    if (!breakdown) {
      beta.push_back(bnorm);
      basis.push_back(w / bnorm);
    }
  }
  if (!converged) residual = top_residual(nullptr);

  ChannelSpectrum out;
  out.N = static_cast<int>(N);
  out.iterations = static_cast<int>(alpha.size());
  out.bound = 2.0 * std::sqrt(static_cast<double>(D - 1)) / D;
  const int k = static_cast<int>(alpha.size());
  for (int i = k - 1; i >= 0 && out.singular_values.size() < 8; --i)
    out.singular_values.push_back(std::sqrt(std::max(0.0, ritz(i))));
  out.lambda = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  out.residual = residual;
  if (!converged)
    throw convergence_error("spectral_gap: no convergence after " +
                                std::to_string(opts.max_iterations) + " iterations",
                            out.residual);
  return out;
}

}  // namespace sunirrep

#endif
