#ifndef SUNIRREP_COMBINATORICS_HPP
#define SUNIRREP_COMBINATORICS_HPP

// Ranking and unranking of weak compositions of M into n parts under the
// descending lexicographic order, and the dimension count
// N = binom(M+n-1, n-1) of the totally symmetric su(n) irrep.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunirrep {

/// binom(n, k) in exact 64-bit integer arithmetic.  Throws
/// std::overflow_error instead of wrapping.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw std::domain_error("binomial: negative argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // After dividing, result equals binom(n-k+i, i) exactly; the undivided
    // product is at most binom * k, so check it in 128-bit first.
    unsigned __int128 wide =
        static_cast<unsigned __int128>(result) * static_cast<std::uint64_t>(n - k + i);
    wide /= static_cast<std::uint64_t>(i);
    if (wide > UINT64_MAX)
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64-bit range");
    result = static_cast<std::uint64_t>(wide);
  }
  return result;
}

/// Dimension of the totally symmetric irrep: binom(M+n-1, n-1).
/// n = 1 is allowed (single bin, dimension 1).
inline std::uint64_t irrep_dimension(int n, std::int64_t M) {
  if (n < 1) throw std::domain_error("irrep_dimension: n must be >= 1");
  if (M < 0) throw std::domain_error("irrep_dimension: M must be >= 0");
  return binomial(M + n - 1, n - 1);
}

struct IrrepShape {
  int n = 0;             // group rank, >= 2
  std::int64_t M = 0;    // total boson number
  std::uint64_t N = 0;   // irrep dimension
};

inline IrrepShape make_shape(int n, std::int64_t M) {
  if (n < 2) throw std::domain_error("IrrepShape: n must be >= 2");
  if (M < 0) throw std::domain_error("IrrepShape: M must be >= 0");
  return IrrepShape{n, M, irrep_dimension(n, M)};
}

struct CompositionIndex {
  std::vector<std::int64_t> parts;  // (m_1, ..., m_n), sum = M
  std::uint64_t rank = 0;           // position in descending lex order
};

/// The ell-th composition of M into n parts, descending lexicographic.
/// Works one digit at a time: with k bins remaining to the right, the
/// compositions whose current digit is >= r occupy the first
/// S_r = binom(M_rem - r + k, k) ranks, so the digit is found by a
/// binary search for the smallest r with S_r <= ell.
inline CompositionIndex unrank(const IrrepShape& shape, std::uint64_t ell) {
  if (ell >= shape.N)
    throw std::domain_error("unrank: ell = " + std::to_string(ell) +
                            " out of range [0, " + std::to_string(shape.N) + ")");
  CompositionIndex out;
  out.rank = ell;
  out.parts.assign(shape.n, 0);
  std::int64_t m_rem = shape.M;
  std::uint64_t idx = ell;
  for (int level = 0; level + 1 < shape.n; ++level) {
    const std::int64_t k = shape.n - 1 - level;
    auto suffix_count = [&](std::int64_t r) -> std::uint64_t {
      if (r > m_rem) return 0;
      return binomial(m_rem - r + k, k);
    };
    // smallest r in [0, m_rem + 1] with S_r <= idx; S is strictly decreasing
    std::int64_t lo = 0, hi = m_rem + 1;
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (suffix_count(mid) <= idx)
        hi = mid;
      else
        lo = mid + 1;
    }
    const std::int64_t digit = lo - 1;
    out.parts[level] = digit;
    idx -= suffix_count(lo);
    m_rem -= digit;
  }
  out.parts[shape.n - 1] = m_rem;
  return out;
}

/// Closed-form rank of a composition in descending lexicographic order,
/// via the suffix sums S_k = m_{k+1} + ... + m_n.
inline std::uint64_t rank_desc(const std::vector<std::int64_t>& parts,
                               const IrrepShape& shape) {
  if (static_cast<int>(parts.size()) != shape.n)
    throw std::domain_error("rank_desc: expected " + std::to_string(shape.n) +
                            " parts, got " + std::to_string(parts.size()));
  std::int64_t sum = 0;
  for (std::int64_t p : parts) {
    if (p < 0) throw std::domain_error("rank_desc: negative part");
    sum += p;
  }
  if (sum != shape.M)
    throw std::domain_error("rank_desc: parts sum to " + std::to_string(sum) +
                            ", expected M = " + std::to_string(shape.M));
  std::uint64_t rank = 0;
  std::int64_t suffix = shape.M;
  for (int k = 1; k <= shape.n - 1; ++k) {
    suffix -= parts[k - 1];  // S_k = sum of parts after position k
    const std::int64_t d = shape.n - k;
    rank += binomial(suffix + d, d) - binomial(suffix + d - 1, d - 1);
  }
  return rank;
}

}  // namespace sunirrep

#endif
