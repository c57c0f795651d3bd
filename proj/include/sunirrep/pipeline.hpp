#ifndef SUNIRREP_PIPELINE_HPP
#define SUNIRREP_PIPELINE_HPP

// End-to-end emulation of the fast-forwarded SU(n) circuit as explicit
// linear algebra: embed the N basis states as tensor products of discrete
// Hermite states on an L^n grid, apply the split factor plan as diagonal
// and DFT-conjugated-diagonal operators, project back onto the embedded
// subspace, and compare against the exactly exponentiated unitary.
//
// Nothing of size L^n x L^n is ever formed; every factor acts on a flat
// L^n state vector through axis-wise centered DFTs and diagonal phases.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "sunirrep/algebra.hpp"
#include "sunirrep/combinatorics.hpp"
#include "sunirrep/common.hpp"
#include "sunirrep/decompose.hpp"
#include "sunirrep/fastforward.hpp"
#include "sunirrep/fit.hpp"
#include "sunirrep/linalg.hpp"
#include "sunirrep/oscillator.hpp"

namespace sunirrep {

struct PipelineOptions {
  std::size_t mem_cap = std::size_t(1) << 26;  // complex entries per state
  Eigen::Index dense_cap = kDefaultDenseCap;
  int threads = 1;
  double leakage_threshold = 1e-3;
  double fund_tol = 1e-10;  // fundamental decompose tolerance, tightened by 1/N
};

/// Isometry from the N-dimensional irrep basis onto tensor products of
/// discrete Hermite states.  Column ell is psi_{m_1(ell)} x ... x
/// psi_{m_n(ell)}; the Gram matrix of the columns (a product of single-mode
/// overlaps) corrects the projection when it differs from the identity.
class Embedding {
 public:
  Embedding(const IrrepShape& shape, const DiscreteOscillator& osc)
      : shape_(shape), L_(osc.L()) {
    if (shape.M > static_cast<std::int64_t>(0.375 * L_))
      throw std::domain_error("Embedding: requires M <= 0.375 L");
    psi_.reserve(shape.M + 1);
    for (std::int64_t m = 0; m <= shape.M; ++m) {
      const Vec amp = osc.hermite_state(static_cast<int>(m)).amplitudes;
      RVec re(L_);
      for (int J = 0; J < L_; ++J) re(J) = amp(J).real();
      psi_.push_back(std::move(re));
    }
    comps_.reserve(shape.N);
    for (std::uint64_t ell = 0; ell < shape.N; ++ell)
      comps_.push_back(unrank(shape, ell).parts);

    // single-mode overlap table -> Gram of the tensor columns
    Eigen::MatrixXd overlap(shape.M + 1, shape.M + 1);
    for (std::int64_t a = 0; a <= shape.M; ++a)
      for (std::int64_t b = 0; b <= shape.M; ++b)
        overlap(a, b) = psi_[a].dot(psi_[b]);
    const auto N = static_cast<Eigen::Index>(shape.N);
    gram_.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        double g = 1.0;
        for (int mode = 0; mode < shape.n; ++mode)
          g *= overlap(comps_[i][mode], comps_[j][mode]);
        gram_(i, j) = g;
      }
    gram_defect_ = spectral_norm(gram_ - Mat::Identity(N, N));
    gram_trivial_ = gram_defect_ <= 1e-10;
    if (!gram_trivial_) gram_ldlt_.compute(gram_);
  }

  const IrrepShape& shape() const { return shape_; }
  int L() const { return L_; }
  std::size_t grid_size() const {
    std::size_t s = 1;
    for (int i = 0; i < shape_.n; ++i) s *= static_cast<std::size_t>(L_);
    return s;
  }
  const Mat& gram() const { return gram_; }
  double gram_defect() const { return gram_defect_; }

  /// Write the embedded column ell into out (length L^n, axis 1 slowest).
  void column(std::uint64_t ell, cplx* out) const {
    const auto& parts = comps_[ell];
    const int n = shape_.n;
    // build from the fastest axis outwards
    std::vector<double> cur(psi_[parts[n - 1]].data(),
                            psi_[parts[n - 1]].data() + L_);
    for (int axis = n - 2; axis >= 0; --axis) {
      const RVec& s = psi_[parts[axis]];
      std::vector<double> next(cur.size() * L_);
      for (int j = 0; j < L_; ++j) {
        const double w = s(j);
        double* dst = next.data() + static_cast<std::size_t>(j) * cur.size();
        for (std::size_t t = 0; t < cur.size(); ++t) dst[t] = w * cur[t];
      }
      cur.swap(next);
    }
    for (std::size_t t = 0; t < cur.size(); ++t) out[t] = cur[t];
  }

  /// Accumulate a superposition sum_ell c_ell |column ell> into out.
  void embed(const Vec& coeffs, cplx* out) const {
    const std::size_t total = grid_size();
    std::fill(out, out + total, cplx(0.0, 0.0));
    std::vector<cplx> buf(total);
    for (std::uint64_t ell = 0; ell < shape_.N; ++ell) {
      if (coeffs(static_cast<Eigen::Index>(ell)) == cplx(0.0, 0.0)) continue;
      column(ell, buf.data());
      const cplx c = coeffs(static_cast<Eigen::Index>(ell));
      for (std::size_t t = 0; t < total; ++t) out[t] += c * buf[t];
    }
  }

  /// Raw overlaps (E^dagger v)_ell, by contracting one axis at a time.
  Vec raw_overlaps(const cplx* state) const {
    const auto N = static_cast<Eigen::Index>(shape_.N);
    Vec out(N);
    const int n = shape_.n;
    std::vector<cplx> buf;
    for (Eigen::Index ell = 0; ell < N; ++ell) {
      const auto& parts = comps_[static_cast<std::size_t>(ell)];
      std::size_t len = grid_size();
      buf.assign(state, state + len);
      for (int axis = n - 1; axis >= 1; --axis) {
        const RVec& s = psi_[parts[axis]];
        const std::size_t outer = len / L_;
        for (std::size_t b = 0; b < outer; ++b) {
          cplx acc = 0.0;
          const cplx* src = buf.data() + b * L_;
          for (int j = 0; j < L_; ++j) acc += s(j) * src[j];
          buf[b] = acc;
        }
        len = outer;
      }
      const RVec& s0 = psi_[parts[0]];
      cplx acc = 0.0;
      for (int j = 0; j < L_; ++j) acc += s0(j) * buf[j];
      out(ell) = acc;
    }
    return out;
  }

  /// Gram-corrected coefficients from the raw overlaps.
  Vec correct(const Vec& raw) const {
    if (gram_trivial_) return raw;
    return gram_ldlt_.solve(raw);
  }

  /// Gram-corrected coefficients of the projection onto the column span.
  Vec project(const cplx* state) const { return correct(raw_overlaps(state)); }

  /// |P v|^2 of a unit vector, via the Gram-corrected projector.
  double projected_weight(const Vec& corrected) const {
    return std::real(corrected.dot(gram_ * corrected));
  }

 private:
  IrrepShape shape_;
  int L_;
  std::vector<RVec> psi_;
  std::vector<std::vector<std::int64_t>> comps_;
  Mat gram_;
  Eigen::LDLT<Mat> gram_ldlt_;
  double gram_defect_ = 0.0;
  bool gram_trivial_ = true;
};

namespace detail {

// Cached diagonal phase tables, keyed by the exact term parameters so that
// split repetitions of the same factor share one table.
class PhaseTables {
 public:
  explicit PhaseTables(const DiscreteOscillator& osc) : osc_(osc) {}

  const Eigen::MatrixXcd& pair_table(double angle) {
    auto it = pair_.find(angle);
    if (it != pair_.end()) return it->second;
    const int L = osc_.L();
    Eigen::MatrixXcd tab(L, L);
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b)
        tab(a, b) = std::exp(cplx(0.0, angle * osc_.grid()(a) * osc_.grid()(b)));
    return pair_.emplace(angle, std::move(tab)).first->second;
  }

  const Vec& single_table(double angle) {
    auto it = single_.find(angle);
    if (it != single_.end()) return it->second;
    const int L = osc_.L();
    Vec tab(L);
    for (int a = 0; a < L; ++a)
      tab(a) = std::exp(cplx(0.0, angle * osc_.grid()(a) * osc_.grid()(a)));
    return single_.emplace(angle, std::move(tab)).first->second;
  }

 private:
  const DiscreteOscillator& osc_;
  std::map<double, Eigen::MatrixXcd> pair_;
  std::map<double, Vec> single_;
};

inline void check_axes(int n, const FactorTerm& t) {
  const bool two_mode = t.monomial == Monomial::XX || t.monomial == Monomial::PP ||
                        t.monomial == Monomial::XP;
  if (t.j < 1 || t.j > n || (two_mode && (t.k < 1 || t.k > n)))
    throw std::domain_error("apply_factor: mode index out of range");
  if (t.monomial == Monomial::XP && t.j == t.k)
    throw std::domain_error("apply_factor: XP requires two distinct modes");
}

}  // namespace detail

/// Multiply a flat L^n state by exp(i angle O) for one factor term.
/// XX and X2 are diagonal on the position grid; PP/P2 conjugate the same
/// diagonal with centered DFTs on the involved axes; XP transforms only
/// the momentum axis.  scratch must hold L entries.
inline void apply_factor(cplx* state, const IrrepShape& shape,
                         const DiscreteOscillator& osc, const FactorTerm& term,
                         detail::PhaseTables& tables, cplx* scratch) {
  detail::check_axes(shape.n, term);
  const int n = shape.n;
  const std::size_t L = static_cast<std::size_t>(osc.L());
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= L;
  auto stride_of = [&](int axis) {
    std::size_t s = 1;
    for (int i = axis + 1; i < n; ++i) s *= L;
    return s;
  };
  auto dft_axis = [&](int axis, bool inverse) {
    const std::size_t after = stride_of(axis);
    const std::size_t before = total / (L * after);
    osc.dft().transform_axis(state, before, after, inverse, scratch);
  };
  auto mul_single = [&](int axis, const Vec& tab) {
    const std::size_t s = stride_of(axis);
    for (std::size_t idx = 0; idx < total; ++idx) state[idx] *= tab((idx / s) % L);
  };
  auto mul_pair = [&](int axis_a, int axis_b, const Eigen::MatrixXcd& tab) {
    const std::size_t sa = stride_of(axis_a), sb = stride_of(axis_b);
    for (std::size_t idx = 0; idx < total; ++idx)
      state[idx] *= tab((idx / sa) % L, (idx / sb) % L);
  };

  switch (term.monomial) {
    case Monomial::X2:
      mul_single(term.j - 1, tables.single_table(term.angle));
      break;
    case Monomial::P2:
      dft_axis(term.j - 1, true);
      mul_single(term.j - 1, tables.single_table(term.angle));
      dft_axis(term.j - 1, false);
      break;
    case Monomial::XX:
      mul_pair(term.j - 1, term.k - 1, tables.pair_table(term.angle));
      break;
    case Monomial::PP:
      dft_axis(term.j - 1, true);
      dft_axis(term.k - 1, true);
      mul_pair(term.j - 1, term.k - 1, tables.pair_table(term.angle));
      dft_axis(term.k - 1, false);
      dft_axis(term.j - 1, false);
      break;
    case Monomial::XP:
      dft_axis(term.k - 1, true);
      mul_pair(term.j - 1, term.k - 1, tables.pair_table(term.angle));
      dft_axis(term.k - 1, false);
      break;
  }
}

/// Convenience wrapper owning its own table cache (single-term use).
inline void apply_factor(cplx* state, const IrrepShape& shape,
                         const DiscreteOscillator& osc, const FactorTerm& term) {
  detail::PhaseTables tables(osc);
  std::vector<cplx> scratch(osc.L());
  apply_factor(state, shape, osc, term, tables, scratch.data());
}

struct PlanStats {
  std::size_t factor_count = 0;      // Euler factors
  std::size_t term_count = 0;        // expanded terms before splitting
  std::size_t split_term_count = 0;  // terms actually applied
};

struct PipelineResult {
  Mat sim_unitary;
  double spectral_error = 0.0;
  int L_used = 0;
  PlanStats plan_stats;
  Eigen::VectorXd leakage;  // per input column
  double leakage_max = 0.0;
  bool leakage_flagged = false;
};

namespace detail {

inline void check_simulate_pre(const IrrepShape& shape, int L,
                               const PipelineOptions& opts) {
  if (L < 2 || L % 2 != 0) throw std::domain_error("simulate: L must be even");
  if (shape.M > static_cast<std::int64_t>(0.375 * L))
    throw std::domain_error("simulate: requires M <= 0.375 L");
  std::size_t total = 1;
  for (int i = 0; i < shape.n; ++i) {
    if (total > opts.mem_cap / static_cast<std::size_t>(L))
      throw resource_error("simulate: L^n exceeds the memory cap");
    total *= static_cast<std::size_t>(L);
  }
  if (total > opts.mem_cap)
    throw resource_error("simulate: L^n exceeds the memory cap");
}

// Split factor plan for one SU(n) element.
inline FactorizationPlan full_plan(const IrrepShape& shape, const AngleSet& angles,
                                   const PipelineOptions& opts, PlanStats* stats) {
  const Mat u = fundamental_matrix(shape.n, angles);
  const double tol =
      std::max(1e-13, opts.fund_tol / static_cast<double>(shape.N));
  const EulerSequence seq = euler_decompose(u, tol);
  const FactorizationPlan expanded = plan_from_sequence(seq);
  FactorizationPlan plan = split_phases(expanded);
  if (stats) {
    stats->factor_count = seq.factors.size();
    stats->term_count = expanded.terms.size();
    stats->split_term_count = plan.terms.size();
  }
  return plan;
}

}  // namespace detail

/// Run the full emulation: per basis column, embed -> apply all split
/// terms (product order means the last listed term acts first) -> project.
/// Columns are distributed over `opts.threads` workers, each with its own
/// scratch state; the output does not depend on the worker count.
inline PipelineResult simulate(const IrrepShape& shape, const AngleSet& angles, int L,
                               const PipelineOptions& opts = {}) {
  detail::check_simulate_pre(shape, L, opts);
  const Mat exact = exact_unitary(shape, angles, opts.dense_cap);

  PipelineResult result;
  result.L_used = L;
  const FactorizationPlan plan =
      detail::full_plan(shape, angles, opts, &result.plan_stats);

  const DiscreteOscillator osc(L);
  const Embedding emb(shape, osc);
  const auto N = static_cast<Eigen::Index>(shape.N);
  result.sim_unitary.resize(N, N);
  result.leakage.resize(N);

  const int threads = std::max(1, opts.threads);
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    std::vector<cplx> state(emb.grid_size());
    std::vector<cplx> scratch(static_cast<std::size_t>(L));
    detail::PhaseTables tables(osc);
    for (;;) {
      const std::uint64_t ell = next.fetch_add(1);
      if (ell >= shape.N) break;
      emb.column(ell, state.data());
      for (auto it = plan.terms.rbegin(); it != plan.terms.rend(); ++it)
        apply_factor(state.data(), shape, osc, *it, tables, scratch.data());
      const Vec corrected = emb.correct(emb.raw_overlaps(state.data()));
      result.sim_unitary.col(static_cast<Eigen::Index>(ell)) = corrected;
      result.leakage(static_cast<Eigen::Index>(ell)) =
          1.0 - emb.projected_weight(corrected);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.spectral_error = spectral_norm(result.sim_unitary - exact);
  result.leakage_max = result.leakage.maxCoeff();
  result.leakage_flagged = result.leakage_max > opts.leakage_threshold;
  return result;
}

/// Spectral error against the exact unitary over a list of grid sizes,
/// with the fitted log-linear decay.
inline ErrorFitResult error_sweep(const IrrepShape& shape, const AngleSet& angles,
                                  const std::vector<int>& L_list,
                                  const PipelineOptions& opts = {}) {
  std::vector<int> admissible;
  for (int L : L_list) {
    try {
      detail::check_simulate_pre(shape, L, opts);
      admissible.push_back(L);
    } catch (const std::exception&) {
    }
  }
  if (admissible.size() < 3)
    throw std::domain_error("error_sweep: need at least 3 admissible L values");
  std::vector<std::pair<double, double>> points;
  for (int L : admissible)
    points.emplace_back(L, simulate(shape, angles, L, opts).spectral_error);
  return fit_log_linear(std::move(points));
}

/// Kicked-top Floquet demo for n = 2: each step applies the J_y rotation
/// through the factor machinery and the (J_z)^2 kick as exact diagonal
/// phases on the projected register.  Returns the state after every step.
inline std::vector<Vec> kicked_top_demo(const IrrepShape& shape, double gamma,
                                        double beta, int steps, int L,
                                        const PipelineOptions& opts = {}) {
  if (shape.n != 2) throw std::domain_error("kicked_top_demo: requires n = 2");
  detail::check_simulate_pre(shape, L, opts);
  const auto N = static_cast<Eigen::Index>(shape.N);

  EulerSequence seq;
  seq.n = 2;
  seq.factors.push_back({Generator::antisymmetric(1, 2), reduce_angle_4pi(-gamma)});
  const FactorizationPlan plan = split_phases(plan_from_sequence(seq));

  const DiscreteOscillator osc(L);
  const Embedding emb(shape, osc);
  detail::PhaseTables tables(osc);
  std::vector<cplx> state(emb.grid_size());
  std::vector<cplx> scratch(static_cast<std::size_t>(L));

  Vec kick(N);
  for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
    const auto c = unrank(shape, ell);
    const double jz = 0.5 * static_cast<double>(c.parts[0] - c.parts[1]);
    kick(static_cast<Eigen::Index>(ell)) = std::exp(cplx(0.0, -beta * jz * jz));
  }

  Vec coeffs = Vec::Zero(N);
  coeffs(0) = 1.0;  // spin-coherent basis state along +z
  std::vector<Vec> snapshots;
  snapshots.reserve(steps);
  for (int s = 0; s < steps; ++s) {
    emb.embed(coeffs, state.data());
    for (auto it = plan.terms.rbegin(); it != plan.terms.rend(); ++it)
      apply_factor(state.data(), shape, osc, *it, tables, scratch.data());
    coeffs = emb.project(state.data());
    coeffs = kick.asDiagonal() * coeffs;
    snapshots.push_back(coeffs);
  }
  return snapshots;
}

}  // namespace sunirrep

#endif
