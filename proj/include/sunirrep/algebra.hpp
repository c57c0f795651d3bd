#ifndef SUNIRREP_ALGEBRA_HPP
#define SUNIRREP_ALGEBRA_HPP

// Cartan-Weyl generators of su(n) in the totally symmetric N-dimensional
// irrep, built in the descending-lexicographic Fock basis, and the exact
// N-dimensional group element by Hermitian matrix exponentiation.
//
// Generator labels are 1-based throughout, matching the usual notation:
// E_{j,k} with j != k, H_i = (E_{i,i} - E_{i+1,i+1})/2 for 1 <= i <= n-1,
// S_{j,k} = (E_{j,k} + E_{k,j})/2 and A_{j,k} = i(E_{j,k} - E_{k,j})/2
// for 1 <= j < k <= n.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sunirrep/combinatorics.hpp"
#include "sunirrep/common.hpp"
#include "sunirrep/linalg.hpp"

namespace sunirrep {

using SparseMat = Eigen::SparseMatrix<cplx>;  // column-major triplet storage

enum class GeneratorKind { Ladder, Diagonal, Symmetric, Antisymmetric };

struct Generator {
  GeneratorKind kind;
  int j = 0;  // for Diagonal this is the Cartan index i
  int k = 0;

  static Generator ladder(int j, int k) { return {GeneratorKind::Ladder, j, k}; }
  static Generator diagonal(int i) { return {GeneratorKind::Diagonal, i, 0}; }
  static Generator symmetric(int j, int k) { return {GeneratorKind::Symmetric, j, k}; }
  static Generator antisymmetric(int j, int k) {
    return {GeneratorKind::Antisymmetric, j, k};
  }
};

struct AlgebraMatrix {
  Generator kind;
  IrrepShape shape;
  SparseMat entries;  // N x N
};

namespace detail {

inline void check_generator_indices(const IrrepShape& shape, const Generator& g) {
  const int n = shape.n;
  switch (g.kind) {
    case GeneratorKind::Diagonal:
      if (g.j < 1 || g.j > n - 1)
        throw std::domain_error("Diagonal index i out of range [1, n-1]");
      break;
    case GeneratorKind::Ladder:
      if (g.j < 1 || g.j > n || g.k < 1 || g.k > n || g.j == g.k)
        throw std::domain_error("Ladder indices must satisfy 1 <= j != k <= n");
      break;
    case GeneratorKind::Symmetric:
    case GeneratorKind::Antisymmetric:
      if (g.j < 1 || g.k > n || g.j >= g.k)
        throw std::domain_error("S/A indices must satisfy 1 <= j < k <= n");
      break;
  }
}

// One column of E_{j,k}: source |ell> with m_k > 0 maps to the composition
// with m_j+1, m_k-1, amplitude sqrt((m_j+1) m_k).
inline void ladder_triplets(const IrrepShape& shape, int j, int k, double coeff_re,
                            double coeff_im,
                            std::vector<Eigen::Triplet<cplx>>& out) {
  for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
    CompositionIndex c = unrank(shape, ell);
    const std::int64_t mj = c.parts[j - 1];
    const std::int64_t mk = c.parts[k - 1];
    if (mk == 0) continue;
    const double value = std::sqrt(static_cast<double>((mj + 1) * mk));
    c.parts[j - 1] += 1;
    c.parts[k - 1] -= 1;
    const std::uint64_t row = rank_desc(c.parts, shape);
    out.emplace_back(static_cast<int>(row), static_cast<int>(ell),
                     cplx(coeff_re, coeff_im) * value);
  }
}

}  // namespace detail

inline AlgebraMatrix build_generator(const IrrepShape& shape, const Generator& g) {
  detail::check_generator_indices(shape, g);
  const auto N = static_cast<Eigen::Index>(shape.N);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(2 * shape.N);
  switch (g.kind) {
    case GeneratorKind::Ladder:
      detail::ladder_triplets(shape, g.j, g.k, 1.0, 0.0, trips);
      break;
    case GeneratorKind::Symmetric:
      detail::ladder_triplets(shape, g.j, g.k, 0.5, 0.0, trips);
      detail::ladder_triplets(shape, g.k, g.j, 0.5, 0.0, trips);
      break;
    case GeneratorKind::Antisymmetric:
      detail::ladder_triplets(shape, g.j, g.k, 0.0, 0.5, trips);
      detail::ladder_triplets(shape, g.k, g.j, 0.0, -0.5, trips);
      break;
    case GeneratorKind::Diagonal:
      for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
        const CompositionIndex c = unrank(shape, ell);
        const double v =
            0.5 * static_cast<double>(c.parts[g.j - 1] - c.parts[g.j]);
        if (v != 0.0)
          trips.emplace_back(static_cast<int>(ell), static_cast<int>(ell), cplx(v, 0.0));
      }
      break;
  }
  AlgebraMatrix out{g, shape, SparseMat(N, N)};
  out.entries.setFromTriplets(trips.begin(), trips.end());
  return out;
}

/// Number operator E_{i,i}: diagonal with entries m_i(ell).
inline SparseMat number_operator(const IrrepShape& shape, int i) {
  if (i < 1 || i > shape.n)
    throw std::domain_error("number_operator: index out of range");
  const auto N = static_cast<Eigen::Index>(shape.N);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
    const CompositionIndex c = unrank(shape, ell);
    if (c.parts[i - 1] != 0)
      trips.emplace_back(static_cast<int>(ell), static_cast<int>(ell),
                         cplx(static_cast<double>(c.parts[i - 1]), 0.0));
  }
  SparseMat out(N, N);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

/// The n^2-1 phases specifying one SU(n) element, reduced into [0, 4pi).
/// sigma_i multiplies H_i, theta_{j,k} multiplies S_{j,k}, phi_{j,k}
/// multiplies A_{j,k}.
struct AngleSet {
  int n = 0;
  std::vector<double> sigma;  // n-1 entries
  std::vector<double> theta;  // n(n-1)/2 entries, (j,k) with j < k
  std::vector<double> phi;

  static int pair_index(int n, int j, int k) {
    if (j < 1 || k > n || j >= k)
      throw std::domain_error("AngleSet: pair indices must satisfy 1 <= j < k <= n");
    // row-major over the strict upper triangle
    return (j - 1) * n - (j - 1) * j / 2 + (k - j - 1);
  }
  double theta_at(int j, int k) const { return theta[pair_index(n, j, k)]; }
  double phi_at(int j, int k) const { return phi[pair_index(n, j, k)]; }
};

/// Reduce into [0, 4pi); all one-parameter subgroups here have period 4pi.
inline double reduce_angle_4pi(double a) {
  const double period = 4.0 * kPi;
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  return r;
}

/// Builds an AngleSet, silently reducing every entry mod 4pi.  If `reduced`
/// is non-null it is set when any input was outside [0, 4pi).
inline AngleSet make_angles(int n, std::vector<double> sigma, std::vector<double> theta,
                            std::vector<double> phi, bool* reduced = nullptr) {
  if (n < 2) throw std::domain_error("AngleSet: n must be >= 2");
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (sigma.size() != static_cast<std::size_t>(n - 1) || theta.size() != pairs ||
      phi.size() != pairs)
    throw std::domain_error("AngleSet: wrong count (need n-1 sigma and n(n-1)/2 each of theta/phi)");
  bool any = false;
  auto fix = [&](std::vector<double>& v) {
    for (double& a : v) {
      const double r = reduce_angle_4pi(a);
      if (r != a) any = true;
      a = r;
    }
  };
  fix(sigma);
  fix(theta);
  fix(phi);
  if (reduced) *reduced = any;
  return AngleSet{n, std::move(sigma), std::move(theta), std::move(phi)};
}

inline AngleSet zero_angles(int n) {
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  return make_angles(n, std::vector<double>(n - 1, 0.0),
                     std::vector<double>(pairs, 0.0), std::vector<double>(pairs, 0.0));
}

/// Deterministic random angle set, uniform over [0, 2pi) per entry.
/// Uses a fixed 53-bit construction so the values do not depend on the
/// standard library's distribution implementation.
inline AngleSet random_angles(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    return 2.0 * kPi * ((rng() >> 11) * 0x1.0p-53);
  };
  std::vector<double> sigma(n - 1), theta(static_cast<std::size_t>(n) * (n - 1) / 2),
      phi(theta.size());
  for (double& a : sigma) a = draw();
  for (double& a : theta) a = draw();
  for (double& a : phi) a = draw();
  return make_angles(n, std::move(sigma), std::move(theta), std::move(phi));
}

inline constexpr Eigen::Index kDefaultDenseCap = 4096;

/// The exponent sum(sigma_i H_i) + sum(theta S + phi A) as a dense
/// Hermitian matrix.
inline Mat exponent_matrix(const IrrepShape& shape, const AngleSet& angles) {
  if (angles.n != shape.n)
    throw std::domain_error("exponent_matrix: angle set rank mismatch");
  const auto N = static_cast<Eigen::Index>(shape.N);
  Mat X = Mat::Zero(N, N);
  for (int i = 1; i <= shape.n - 1; ++i)
    if (angles.sigma[i - 1] != 0.0)
      X += angles.sigma[i - 1] * Mat(build_generator(shape, Generator::diagonal(i)).entries);
  for (int j = 1; j <= shape.n; ++j)
    for (int k = j + 1; k <= shape.n; ++k) {
      const double th = angles.theta_at(j, k);
      const double ph = angles.phi_at(j, k);
      if (th != 0.0)
        X += th * Mat(build_generator(shape, Generator::symmetric(j, k)).entries);
      if (ph != 0.0)
        X += ph * Mat(build_generator(shape, Generator::antisymmetric(j, k)).entries);
    }
  return X;
}

/// U = exp(i (sum sigma_i H_i + sum theta_{j,k} S_{j,k} + phi_{j,k} A_{j,k})),
/// the ground-truth N x N unitary.
inline Mat exact_unitary(const IrrepShape& shape, const AngleSet& angles,
                         Eigen::Index dense_cap = kDefaultDenseCap) {
  if (static_cast<Eigen::Index>(shape.N) > dense_cap)
    throw resource_error("exact_unitary: N = " + std::to_string(shape.N) +
                         " exceeds dense cap " + std::to_string(dense_cap));
  return expm_i_hermitian(exponent_matrix(shape, angles));
}

/// Max-entry residual of the Cartan-Weyl commutation relations over all
/// generator pairs; a structural self-test of build_generator.
inline double commutator_residual(const IrrepShape& shape) {
  const int n = shape.n;
  const auto N = static_cast<Eigen::Index>(shape.N);
  std::vector<std::vector<SparseMat>> E(n + 1, std::vector<SparseMat>(n + 1));
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      E[j][k] = (j == k) ? number_operator(shape, j)
                         : build_generator(shape, Generator::ladder(j, k)).entries;

  auto max_abs = [](const SparseMat& A) {
    double m = 0.0;
    for (int c = 0; c < A.outerSize(); ++c)
      for (SparseMat::InnerIterator it(A, c); it; ++it)
        m = std::max(m, std::abs(it.value()));
    return m;
  };

  double worst = 0.0;
  // [E_{j,k}, E_{l,m}] = delta_{k,l} E_{j,m} - delta_{j,m} E_{l,k}
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      if (j == k) continue;
      for (int l = 1; l <= n; ++l)
        for (int m = 1; m <= n; ++m) {
          if (l == m) continue;
          SparseMat comm = (E[j][k] * E[l][m] - E[l][m] * E[j][k]).pruned();
          SparseMat expect(N, N);
          if (k == l) expect = expect + E[j][m];
          if (j == m) expect = expect - E[l][k];
          worst = std::max(worst, max_abs(SparseMat(comm - expect)));
        }
    }
  // H_i relations: [E_{j,k}, H_i] = ((d_{ik} - d_{ij}) - (d_{i+1,k} - d_{i+1,j}))/2 E_{j,k}
  std::vector<SparseMat> H(n);
  for (int i = 1; i <= n - 1; ++i)
    H[i] = build_generator(shape, Generator::diagonal(i)).entries;
  for (int i = 1; i <= n - 1; ++i) {
    for (int ip = 1; ip <= n - 1; ++ip) {
      SparseMat comm = (H[i] * H[ip] - H[ip] * H[i]).pruned();
      worst = std::max(worst, max_abs(comm));
    }
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (j == k) continue;
        SparseMat comm = (E[j][k] * H[i] - H[i] * E[j][k]).pruned();
        const double coeff = 0.5 * (((i == k) ? 1 : 0) - ((i == j) ? 1 : 0) -
                                    ((i + 1 == k) ? 1 : 0) + ((i + 1 == j) ? 1 : 0));
        SparseMat expect = coeff * E[j][k];
        worst = std::max(worst, max_abs(SparseMat(comm - expect)));
      }
  }
  return worst;
}

}  // namespace sunirrep

#endif
