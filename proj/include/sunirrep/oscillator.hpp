#ifndef SUNIRREP_OSCILLATOR_HPP
#define SUNIRREP_OSCILLATOR_HPP

// The discrete quantum harmonic oscillator on an L-point centered grid:
// position operator xbar = diag(x_j) with x_j = j sqrt(2 pi / L) for
// j = -L/2 .. L/2-1, momentum pbar = F xbar F^{-1} with F the centered
// DFT of fft.hpp, and the sampled Hermite states
//
//   |psi_m> = (2 pi / L)^{1/4} sum_j psi_m(x_j) |j> .
//
// The residual routines measure how far these states are from exact
// eigenvectors; the decay of those residuals with L is what the error
// model of the whole pipeline rests on.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "sunirrep/common.hpp"
#include "sunirrep/fft.hpp"
#include "sunirrep/fock.hpp"

namespace sunirrep {

/// Hermite function psi_m(x) = H_m(x) e^{-x^2/2} / sqrt(2^m m! sqrt(pi)),
/// evaluated by the normalized three-term recurrence
///   psi_m = x sqrt(2/m) psi_{m-1} - sqrt((m-1)/m) psi_{m-2}
/// with a separate base-2 exponent so that neither the Gaussian nor the
/// recurrence can under- or overflow for m up to ~10^6.
inline double hermite_function(std::int64_t m, double x) {
  if (m < 0) throw std::domain_error("hermite_function: m must be >= 0");
  constexpr double kLn2 = 0.6931471805599453;
  const double expo = -0.5 * x * x;
  std::int64_t e2 = static_cast<std::int64_t>(std::floor(expo / kLn2));
  double prev = 0.0;
  double cur = 0.7511255444649425 * std::exp(expo - e2 * kLn2);  // pi^{-1/4} * gaussian
  for (std::int64_t k = 1; k <= m; ++k) {
    const double next = x * std::sqrt(2.0 / k) * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
    const double mag = std::max(std::abs(cur), std::abs(prev));
    if (mag > 0x1p+512) {
      cur = std::ldexp(cur, -512);
      prev = std::ldexp(prev, -512);
      e2 += 512;
    } else if (mag > 0.0 && mag < 0x1p-512) {
      cur = std::ldexp(cur, 512);
      prev = std::ldexp(prev, 512);
      e2 -= 512;
    }
  }
  if (cur == 0.0 || e2 < -1200) return 0.0;
  return std::ldexp(cur, static_cast<int>(std::max<std::int64_t>(e2, -1200)));
}

struct HermiteState {
  int m = 0;
  int L = 0;
  Vec amplitudes;
};

class DiscreteOscillator {
 public:
  explicit DiscreteOscillator(int L) : L_(L), dft_(L) {
    grid_.resize(L);
    const double h = std::sqrt(2.0 * kPi / L);
    for (int J = 0; J < L; ++J) grid_(J) = (J - L / 2) * h;
  }

  int L() const { return L_; }
  const RVec& grid() const { return grid_; }
  const CenteredDft& dft() const { return dft_; }

  /// Sampled Hermite state; defined (unnormalized) for any 0 <= m <= L-1.
  HermiteState hermite_state(int m) const {
    if (m < 0 || m >= L_)
      throw std::domain_error("hermite_state: m out of range [0, L-1]");
    Vec amp(L_);
    const double scale = std::pow(2.0 * kPi / L_, 0.25);
    for (int J = 0; J < L_; ++J)
      amp(J) = scale * hermite_function(m, grid_(J));
    return HermiteState{m, L_, std::move(amp)};
  }

  Vec apply_centered_dft(const Vec& v, bool inverse = false) const {
    Vec out = v;
    if (inverse)
      dft_.inverse(out.data());
    else
      dft_.forward(out.data());
    return out;
  }

  /// pbar^k v via F xbar^k F^{-1}.
  Vec apply_momentum_power(const Vec& v, int k) const {
    Vec w = apply_centered_dft(v, /*inverse=*/true);
    for (int J = 0; J < L_; ++J) w(J) *= std::pow(grid_(J), k);
    return apply_centered_dft(w, /*inverse=*/false);
  }

  /// || (Hbar - (m + 1/2)) |psi_m> || with Hbar = (xbar^2 + pbar^2)/2.
  double eigen_residual(int m) const {
    const Vec v = hermite_state(m).amplitudes;
    Vec x2v(L_);
    for (int J = 0; J < L_; ++J) x2v(J) = grid_(J) * grid_(J) * v(J);
    const Vec p2v = apply_momentum_power(v, 2);
    const Vec r = 0.5 * (x2v + p2v) - (m + 0.5) * v;
    return r.norm();
  }

  /// || F |psi_m> - i^m |psi_m> ||.
  double fourier_eigen_residual(int m) const {
    const Vec v = hermite_state(m).amplitudes;
    const Vec fv = apply_centered_dft(v);
    const cplx phase = std::pow(cplx(0.0, 1.0), m);
    return (fv - phase * v).norm();
  }

  /// | <psi_m' | xbar^a pbar^b | psi_m>  -  <m'| x^a p^b |m>_continuum |,
  /// the continuum side coming from the exact Fock ladder algebra.
  double matrix_element_residual(int m, int mprime, int a, int b) const {
    if (a < 0 || b < 0) throw std::domain_error("matrix_element_residual: negative power");
    Vec v = hermite_state(m).amplitudes;
    if (b > 0) v = apply_momentum_power(v, b);
    for (int J = 0; J < L_; ++J) v(J) *= std::pow(grid_(J), a);
    const Vec w = hermite_state(mprime).amplitudes;
    const cplx discrete = w.dot(v);  // conjugates w
    return std::abs(discrete - fock_matrix_element(mprime, a, b, m));
  }

 private:
  int L_;
  RVec grid_;
  CenteredDft dft_;
};

}  // namespace sunirrep

#endif
