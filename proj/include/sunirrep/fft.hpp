#ifndef SUNIRREP_FFT_HPP
#define SUNIRREP_FFT_HPP

// Centered unitary DFT on indices j, k in {-L/2, ..., L/2-1}:
//
//   F_{jk} = (1/sqrt(L)) exp(+2 pi i j k / L)
//
// so that F maps discrete Hermite states to (approximately) i^m times
// themselves and conjugation sends xbar -> pbar -> -xbar.  In 0-based
// storage J = j + L/2 this is  F = i^L * D * G+ * D  with D = diag((-1)^J)
// and G+ the standard unitary DFT of kernel exp(+2 pi i J K / L).
// Powers of two go through an iterative radix-2 transform; other even L
// fall back to a table-driven O(L^2) sum.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sunirrep/common.hpp"

namespace sunirrep {

class CenteredDft {
 public:
  explicit CenteredDft(int L) : L_(L) {
    if (L < 2 || L % 2 != 0)
      throw std::domain_error("CenteredDft: L must be even and >= 2");
    pow2_ = (L & (L - 1)) == 0;
    roots_.resize(L);
    for (int t = 0; t < L; ++t) {
      const double ang = 2.0 * kPi * t / L;
      roots_[t] = cplx(std::cos(ang), std::sin(ang));  // exp(+2 pi i t / L)
    }
    if (pow2_) {
      bitrev_.resize(L);
      int bits = 0;
      while ((1 << bits) < L) ++bits;
      for (int i = 0; i < L; ++i) {
        int r = 0;
        for (int b = 0; b < bits; ++b)
          if (i & (1 << b)) r |= 1 << (bits - 1 - b);
        bitrev_[i] = r;
      }
    }
    // i^L is real for even L: +1 when L = 0 mod 4, -1 otherwise
    center_phase_ = (L % 4 == 0) ? 1.0 : -1.0;
    inv_sqrt_ = 1.0 / std::sqrt(static_cast<double>(L));
  }

  int size() const { return L_; }

  /// In-place centered forward transform of a contiguous length-L line.
  void forward(cplx* a) const { centered(a, /*inverse=*/false); }
  /// In-place centered inverse transform (the adjoint).
  void inverse(cplx* a) const { centered(a, /*inverse=*/true); }

  /// Transform every line along one axis of a flat row-major array of
  /// shape (before, L, after).  `scratch` must hold L entries.
  void transform_axis(cplx* data, std::size_t before, std::size_t after, bool inverse,
                      cplx* scratch) const {
    const std::size_t L = static_cast<std::size_t>(L_);
    for (std::size_t b = 0; b < before; ++b) {
      cplx* block = data + b * L * after;
      if (after == 1) {
        centered(block, inverse);
        continue;
      }
      for (std::size_t c = 0; c < after; ++c) {
        for (std::size_t j = 0; j < L; ++j) scratch[j] = block[j * after + c];
        centered(scratch, inverse);
        for (std::size_t j = 0; j < L; ++j) block[j * after + c] = scratch[j];
      }
    }
  }

 private:
  void centered(cplx* a, bool inverse) const {
    for (int j = 1; j < L_; j += 2) a[j] = -a[j];
    // forward uses the e^{+} kernel, the adjoint the e^{-} kernel
    plain(a, /*plus_kernel=*/!inverse);
    for (int j = 1; j < L_; j += 2) a[j] = -a[j];
    if (center_phase_ < 0)
      for (int j = 0; j < L_; ++j) a[j] = -a[j];
  }

  // Unitary DFT with kernel exp(sign * 2 pi i J K / L).
  void plain(cplx* a, bool plus_kernel) const {
    if (pow2_) {
      for (int i = 0; i < L_; ++i)
        if (bitrev_[i] > i) std::swap(a[i], a[bitrev_[i]]);
      for (int len = 2; len <= L_; len <<= 1) {
        const int step = L_ / len;
        for (int i = 0; i < L_; i += len) {
          for (int j = 0; j < len / 2; ++j) {
            cplx w = roots_[static_cast<std::size_t>(j) * step];
            if (!plus_kernel) w = std::conj(w);
            const cplx u = a[i + j];
            const cplx v = a[i + j + len / 2] * w;
            a[i + j] = u + v;
            a[i + j + len / 2] = u - v;
          }
        }
      }
    } else {
      std::vector<cplx> out(L_);
      for (int J = 0; J < L_; ++J) {
        cplx acc = 0.0;
        for (int K = 0; K < L_; ++K) {
          cplx w = roots_[static_cast<std::size_t>(J) * K % L_];
          if (!plus_kernel) w = std::conj(w);
          acc += w * a[K];
        }
        out[J] = acc;
      }
      std::copy(out.begin(), out.end(), a);
    }
    for (int j = 0; j < L_; ++j) a[j] *= inv_sqrt_;
  }

  int L_;
  bool pow2_;
  double center_phase_;
  double inv_sqrt_;
  std::vector<cplx> roots_;
  std::vector<int> bitrev_;
};

}  // namespace sunirrep

#endif
