#ifndef SUNIRREP_FASTFORWARD_HPP
#define SUNIRREP_FASTFORWARD_HPP

// Expansion of Cartan-Weyl exponentials into exponentials of quadratic
// monomials in position and momentum.  The three-factor identities come
// from the sp(2,R) relation
//
//   e^{(K1+K2) t} = e^{alpha K2} e^{beta K1} e^{alpha K2},
//   alpha = tan(t/sqrt(2))/sqrt(2),  beta = sin(sqrt(2) t)/sqrt(2),
//
// applied per mode pair.  For the S and A factors this gives
//
//   e^{i th S_{j,k}} = e^{i th1 p_j p_k} e^{i th2 x_j x_k} e^{i th1 p_j p_k}
//   e^{i ph A_{j,k}} = e^{-i ph1 x_j p_k} e^{i ph2 p_j x_k} e^{-i ph1 x_j p_k}
//
// with th1 = tan(th/4), th2 = sin(th/2), ph1 = tan(ph/4), ph2 = sin(ph/2).
// The Cartan factor e^{i s H_i} with H_i = (n_i - n_{i+1})/2 splits into the
// single-mode rotations e^{+i (s/2) (x_i^2+p_i^2)/2} and
// e^{-i (s/2) (x_{i+1}^2+p_{i+1}^2)/2}, so mode i carries the angles
// s1 = tan(s/4)/2, s2 = sin(s/2)/2 and mode i+1 carries their negatives.
//
// Oversized PP / XP phases are split into ceil(2e |angle|) equal pieces so
// that every such factor obeys the |angle| <= 1/(2e) bound the
// discretization error analysis requires.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sunirrep/common.hpp"
#include "sunirrep/decompose.hpp"

namespace sunirrep {

enum class Monomial { XX, PP, XP, X2, P2 };

/// One exponential exp(i angle O) with O a quadratic monomial.  For XX/PP
/// the mode pair is (j, k); for XP the x sits on mode j and the p on mode
/// k (j != k); X2/P2 use mode j only.
struct FactorTerm {
  Monomial monomial;
  int j = 0;
  int k = 0;
  double angle = 0.0;
  int repetition = 0;  // index within a phase-splitting group
};

inline const char* monomial_name(Monomial m) {
  switch (m) {
    case Monomial::XX: return "XX";
    case Monomial::PP: return "PP";
    case Monomial::XP: return "XP";
    case Monomial::X2: return "X2";
    case Monomial::P2: return "P2";
  }
  return "?";
}

/// Claim-1 coefficients (alpha, beta) for e^{(K1+K2)t}.
inline std::pair<double, double> claim1_angles(double t) {
  const double root2 = std::sqrt(2.0);
  if (std::abs(t) >= 0.5 * kPi * root2)
    throw std::domain_error(
        "claim1_angles: |t| reaches the tangent pole; split the phase first");
  return {std::tan(t / root2) / root2, std::sin(root2 * t) / root2};
}

inline constexpr double kSplitBound = 1.0 / (2.0 * 2.718281828459045235);  // 1/(2e)

/// Expand a single Euler factor whose angle is already in [-pi/2, pi/2].
inline std::vector<FactorTerm> expand_factor(const EulerFactor& f) {
  if (std::abs(f.angle) > 0.5 * kPi + 1e-12)
    throw std::domain_error(
        "expand_factor: angle outside [-pi/2, pi/2]; split the factor first");
  const double a = f.angle;
  std::vector<FactorTerm> out;
  switch (f.gen.kind) {
    case GeneratorKind::Symmetric: {
      const double t1 = std::tan(a / 4.0), t2 = std::sin(a / 2.0);
      out = {{Monomial::PP, f.gen.j, f.gen.k, t1},
             {Monomial::XX, f.gen.j, f.gen.k, t2},
             {Monomial::PP, f.gen.j, f.gen.k, t1}};
      break;
    }
    case GeneratorKind::Antisymmetric: {
      const double p1 = std::tan(a / 4.0), p2 = std::sin(a / 2.0);
      out = {{Monomial::XP, f.gen.j, f.gen.k, -p1},
             {Monomial::XP, f.gen.k, f.gen.j, p2},
             {Monomial::XP, f.gen.j, f.gen.k, -p1}};
      break;
    }
    case GeneratorKind::Diagonal: {
      const double s1 = std::tan(a / 4.0) / 2.0, s2 = std::sin(a / 2.0) / 2.0;
      const int i = f.gen.j;
      out = {{Monomial::P2, i, 0, s1},      {Monomial::X2, i, 0, s2},
             {Monomial::P2, i, 0, s1},      {Monomial::P2, i + 1, 0, -s1},
             {Monomial::X2, i + 1, 0, -s2}, {Monomial::P2, i + 1, 0, -s1}};
      break;
    }
    default:
      throw std::domain_error("expand_factor: factor must be H, S or A");
  }
  return out;
}

struct FactorizationPlan {
  std::vector<FactorTerm> terms;  // product order, leftmost first
  EulerSequence source;
  std::size_t r = 0;  // term count
};

/// Expand a whole Euler sequence.  Factors stored in [0, 4pi) are first
/// mapped to (-2pi, 2pi] and divided into ceil(|angle|/(pi/2)) equal pieces
/// to meet the expansion hypothesis.
inline FactorizationPlan plan_from_sequence(const EulerSequence& seq) {
  FactorizationPlan plan;
  plan.source = seq;
  for (const EulerFactor& f : seq.factors) {
    double a = reduce_angle_4pi(f.angle);
    if (a > 2.0 * kPi) a -= 4.0 * kPi;
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(a) / (0.5 * kPi) -
                                                              1e-12)));
    const EulerFactor piece{f.gen, a / pieces};
    for (int s = 0; s < pieces; ++s) {
      auto terms = expand_factor(piece);
      plan.terms.insert(plan.terms.end(), terms.begin(), terms.end());
    }
  }
  plan.r = plan.terms.size();
  return plan;
}

/// Enforce |angle| <= 1/(2e) on every PP and XP term by replacing an
/// oversized term with t = ceil(2e |angle|) copies of angle/t.  XX, X2 and
/// P2 terms are diagonal in a single basis and pass through unchanged.
inline FactorizationPlan split_phases(const FactorizationPlan& plan) {
  FactorizationPlan out;
  out.source = plan.source;
  for (const FactorTerm& term : plan.terms) {
    const bool bounded =
        term.monomial == Monomial::PP || term.monomial == Monomial::XP;
    if (!bounded || std::abs(term.angle) <= kSplitBound) {
      out.terms.push_back(term);
      continue;
    }
    const int t = static_cast<int>(std::ceil(2.0 * 2.718281828459045235 *
                                             std::abs(term.angle)));
    for (int rep = 0; rep < t; ++rep)
      out.terms.push_back({term.monomial, term.j, term.k, term.angle / t, rep});
  }
  out.r = out.terms.size();
  return out;
}

}  // namespace sunirrep

#endif
