#ifndef SUNIRREP_DECOMPOSE_HPP
#define SUNIRREP_DECOMPOSE_HPP

// Factorization of a fundamental SU(n) unitary into an ordered product of
// n^2-1 one-parameter Cartan-Weyl exponentials.  The scheme is a one-sweep
// Jacobi elimination: every below-diagonal entry is zeroed by a pair
// exp(i theta S_{c,r}) exp(i phi A_{c,r}) acting on the (c, r) plane, and
// the remaining unitary diagonal is absorbed into the H_i factors.  Since
// the irrep is a group homomorphism, lifting the same factor list to the
// N-dimensional generators reproduces the N-dimensional group element.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sunirrep/algebra.hpp"
#include "sunirrep/combinatorics.hpp"
#include "sunirrep/common.hpp"
#include "sunirrep/linalg.hpp"

namespace sunirrep {

struct EulerFactor {
  Generator gen;       // Diagonal, Symmetric or Antisymmetric
  double angle = 0.0;  // stored in [0, 4pi)
};

struct EulerSequence {
  int n = 0;
  std::vector<EulerFactor> factors;  // product order, leftmost first
  double reconstruction_error = 0.0;
};

/// exp(i theta T) for a fundamental (n x n) generator, applied exactly.
inline Mat fundamental_factor(int n, const EulerFactor& f) {
  const IrrepShape shape = make_shape(n, 1);
  if (f.gen.kind == GeneratorKind::Diagonal) {
    Mat U = Mat::Identity(n, n);
    U(f.gen.j - 1, f.gen.j - 1) = std::exp(cplx(0.0, 0.5 * f.angle));
    U(f.gen.j, f.gen.j) = std::exp(cplx(0.0, -0.5 * f.angle));
    return U;
  }
  const Mat T = Mat(build_generator(shape, f.gen).entries);
  return expm_i_hermitian(T, f.angle);
}

/// The n x n element specified by an AngleSet (the M = 1 irrep).
inline Mat fundamental_matrix(int n, const AngleSet& angles) {
  return exact_unitary(make_shape(n, 1), angles);
}

namespace detail {

// Rotation pair (theta, phi) such that G = exp(i theta S) exp(i phi A)
// on the plane (c, r) maps (a, b)^T to (*, 0)^T.  Writing t1 = tan(theta/2),
// t2 = tan(phi/2) and w = b/a = u + iv, the zeroing condition reduces to
//   v t1^2 + (1 + u^2 + v^2) t1 + v = 0 ,     t2 = -u / (1 + v t1) ,
// whose discriminant (u^2 + (v-1)^2)(u^2 + (v+1)^2) is never negative and
// whose two t1 roots have product 1.  The t2 denominator of the in-range
// root vanishes as u -> 0 for |v| > 1, so the branch is chosen by |v|:
// the paired identities (1 + v t1_small)(1 + v t1_big) = -u^2 keep the
// evaluated denominator away from the 0/0 limit on either side, and a
// purely imaginary ratio (u = 0) is solved exactly by (t1, t2) = (-v, 0).
struct GivensPair {
  double theta = 0.0;
  double phi = 0.0;
};

inline GivensPair solve_givens(cplx a, cplx b) {
  GivensPair g;
  if (b == cplx(0.0, 0.0)) return g;  // already zero: keep zero angles
  if (a == cplx(0.0, 0.0)) {
    g.phi = kPi;  // pure swap
    return g;
  }
  const cplx w = b / a;
  const double u = w.real(), v = w.imag();
  double t1 = 0.0, t2 = 0.0;
  if (u == 0.0) {
    t1 = -v;
  } else {
    const double bq = 1.0 + u * u + v * v;
    const double q = -0.5 * (bq + std::sqrt(bq * bq - 4.0 * v * v));
    if (std::abs(v) <= 1.0) {
      t1 = (v == 0.0) ? 0.0 : v / q;
      t2 = -u / (1.0 + v * t1);
    } else {
      t1 = q / v;
      t2 = -u / (1.0 + q);
    }
  }
  g.theta = 2.0 * std::atan(t1);
  g.phi = 2.0 * std::atan(t2);
  return g;
}

// Apply the two-plane rotation G = Rx(theta) Ry(phi) to rows (c, r), 1-based.
inline void apply_pair_rows(Mat& A, int c, int r, double theta, double phi) {
  const double c1 = std::cos(0.5 * theta), s1 = std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * phi), s2 = std::sin(0.5 * phi);
  // Rx = [[c1, i s1], [i s1, c1]],  Ry = [[c2, -s2], [s2, c2]]
  const cplx g00 = cplx(c1 * c2, s1 * s2);
  const cplx g01 = cplx(-c1 * s2, s1 * c2);
  const cplx g10 = cplx(c1 * s2, s1 * c2);
  const cplx g11 = cplx(c1 * c2, -s1 * s2);
  for (Eigen::Index col = 0; col < A.cols(); ++col) {
    const cplx top = A(c - 1, col), bot = A(r - 1, col);
    A(c - 1, col) = g00 * top + g01 * bot;
    A(r - 1, col) = g10 * top + g11 * bot;
  }
}

}  // namespace detail

/// Rebuild the fundamental product of a sequence (for its residual).
inline Mat rebuild_fundamental(const EulerSequence& seq) {
  Mat U = Mat::Identity(seq.n, seq.n);
  for (const EulerFactor& f : seq.factors) U = U * fundamental_factor(seq.n, f);
  return U;
}

/// Decompose a fundamental SU(n) unitary into n^2-1 ordered factors.
inline EulerSequence euler_decompose(const Mat& u, double tol = 1e-10) {
  const int n = static_cast<int>(u.rows());
  if (n < 2 || u.cols() != n)
    throw std::domain_error("euler_decompose: need a square matrix with n >= 2");
  if (unitarity_defect(u) > 1e-10)
    throw std::domain_error("euler_decompose: input is not unitary to 1e-10");
  if (std::abs(u.determinant() - cplx(1.0, 0.0)) > 1e-10)
    throw std::domain_error("euler_decompose: det(u) is not 1 to 1e-10");

  Mat A = u;
  struct Pivot {
    int c, r;
    double theta, phi;
  };
  std::vector<Pivot> pivots;
  pivots.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int c = 1; c <= n - 1; ++c)
    for (int r = c + 1; r <= n; ++r) {
      const auto g = detail::solve_givens(A(c - 1, c - 1), A(r - 1, c - 1));
      detail::apply_pair_rows(A, c, r, g.theta, g.phi);
      A(r - 1, c - 1) = 0.0;  // zeroed by construction
      pivots.push_back({c, r, g.theta, g.phi});
    }

  EulerSequence seq;
  seq.n = n;
  // u = prod_t [exp(-i phi_t A) exp(-i theta_t S)] * D
  for (const Pivot& p : pivots) {
    seq.factors.push_back(
        {Generator::antisymmetric(p.c, p.r), reduce_angle_4pi(-p.phi)});
    seq.factors.push_back({Generator::symmetric(p.c, p.r), reduce_angle_4pi(-p.theta)});
  }
  double arg_sum = 0.0;
  for (int i = 1; i <= n - 1; ++i) {
    arg_sum += std::arg(A(i - 1, i - 1));
    seq.factors.push_back({Generator::diagonal(i), reduce_angle_4pi(2.0 * arg_sum)});
  }
  seq.reconstruction_error = spectral_norm(rebuild_fundamental(seq) - u);
  if (!(seq.reconstruction_error <= tol))  // NaN-safe
    throw convergence_error("euler_decompose: residual " +
                                format_double(seq.reconstruction_error) +
                                " above tolerance " + format_double(tol),
                            seq.reconstruction_error);
  return seq;
}

/// Product of the N-dimensional exponentials of the same factors.
inline Mat lift_sequence(const EulerSequence& seq, const IrrepShape& shape,
                         Eigen::Index dense_cap = kDefaultDenseCap) {
  if (seq.n != shape.n)
    throw std::domain_error("lift_sequence: sequence rank does not match shape");
  const auto N = static_cast<Eigen::Index>(shape.N);
  if (N > dense_cap)
    throw resource_error("lift_sequence: N exceeds dense cap");
  Mat U = Mat::Identity(N, N);
  for (const EulerFactor& f : seq.factors) {
    if (f.angle == 0.0) continue;
    if (f.gen.kind == GeneratorKind::Diagonal) {
      // diagonal phases exp(i angle (m_i - m_{i+1})/2), applied as column scales
      Vec ph(N);
      for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
        const auto c = unrank(shape, ell);
        ph(static_cast<Eigen::Index>(ell)) = std::exp(
            cplx(0.0, 0.5 * f.angle * (c.parts[f.gen.j - 1] - c.parts[f.gen.j])));
      }
      U = U * ph.asDiagonal();
    } else {
      const Mat T = Mat(build_generator(shape, f.gen).entries);
      U = U * expm_i_hermitian(T, f.angle);
    }
  }
  return U;
}

}  // namespace sunirrep

#endif
