#include <catch2/catch_amalgamated.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include "sunirrep/pipeline.hpp"

using namespace sunirrep;

namespace {

Mat dense_fock_operator(const FactorTerm& t, int dim) {
  const Mat x = fock_position(dim).cast<cplx>();
  const Mat p = fock_momentum(dim);
  const Mat I = Mat::Identity(dim, dim);
  auto on = [&](const Mat& op, int mode) {
    return mode == 1 ? Mat(Eigen::kroneckerProduct(op, I))
                     : Mat(Eigen::kroneckerProduct(I, op));
  };
  switch (t.monomial) {
    case Monomial::XX: return Mat(on(x, t.j) * on(x, t.k));
    case Monomial::PP: return Mat(on(p, t.j) * on(p, t.k));
    case Monomial::XP: return Mat(on(x, t.j) * on(p, t.k));
    case Monomial::X2: return Mat(on(x, t.j) * on(x, t.j));
    case Monomial::P2: return Mat(on(p, t.j) * on(p, t.j));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("apply_factor preserves the norm") {
  const IrrepShape shape = make_shape(2, 2);
  const DiscreteOscillator osc(32);
  std::vector<cplx> state(32 * 32);
  // arbitrary deterministic state
  for (std::size_t i = 0; i < state.size(); ++i)
    state[i] = cplx(std::sin(0.1 * i + 0.3), std::cos(0.2 * i));
  double norm = 0;
  for (auto& c : state) norm += std::norm(c);
  for (const FactorTerm t : {FactorTerm{Monomial::XX, 1, 2, 0.37},
                             FactorTerm{Monomial::PP, 1, 2, 0.15},
                             FactorTerm{Monomial::XP, 2, 1, -0.11},
                             FactorTerm{Monomial::X2, 1, 0, 0.5},
                             FactorTerm{Monomial::P2, 2, 0, -0.4}}) {
    apply_factor(state.data(), shape, osc, t);
    double after = 0;
    for (auto& c : state) after += std::norm(c);
    CHECK(std::abs(after - norm) <= 1e-12 * norm);
  }
}

TEST_CASE("zero angle leaves the state unchanged") {
  const IrrepShape shape = make_shape(2, 1);
  const DiscreteOscillator osc(16);
  std::vector<cplx> state(16 * 16, cplx(0.5, -0.25));
  const std::vector<cplx> before = state;
  apply_factor(state.data(), shape, osc, {Monomial::PP, 1, 2, 0.0});
  for (std::size_t i = 0; i < state.size(); ++i)
    CHECK(std::abs(state[i] - before[i]) <= 1e-14);
}

TEST_CASE("XX on a position point mass is a pure phase") {
  const IrrepShape shape = make_shape(2, 1);
  const DiscreteOscillator osc(16);
  std::vector<cplx> state(16 * 16, 0.0);
  const int ja = 3, jb = 11;
  state[ja * 16 + jb] = 1.0;
  const double angle = 0.8;
  apply_factor(state.data(), shape, osc, {Monomial::XX, 1, 2, angle});
  const cplx expect = std::exp(cplx(0.0, angle * osc.grid()(ja) * osc.grid()(jb)));
  CHECK(std::abs(state[ja * 16 + jb] - expect) <= 1e-14);
  state[ja * 16 + jb] = 0.0;
  for (const auto& c : state) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("factor terms match dense Fock exponentials on embedded states") {
  // PP on |psi_0 x psi_0> at L = 64 against the dense two-mode exponential
  const IrrepShape shape = make_shape(2, 0);
  const int L = 64;
  const DiscreteOscillator osc(L);
  const Embedding emb(shape, osc);
  std::vector<cplx> state(emb.grid_size());
  emb.column(0, state.data());

  const int fdim = 24;
  for (const FactorTerm t : {FactorTerm{Monomial::PP, 1, 2, 0.1},
                             FactorTerm{Monomial::XP, 1, 2, 0.1},
                             FactorTerm{Monomial::XX, 1, 2, 0.1}}) {
    std::vector<cplx> work = state;
    apply_factor(work.data(), shape, osc, t);
    // oracle: exp(i theta O) |0,0> in Fock space, re-embedded on the grid
    Eigen::SelfAdjointEigenSolver<Mat> es(dense_fock_operator(t, fdim));
    Vec f0 = Vec::Zero(fdim * fdim);
    f0(0) = 1.0;
    Vec coeff = es.eigenvectors().adjoint() * f0;
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
      coeff(i) *= std::exp(cplx(0.0, t.angle * es.eigenvalues()(i)));
    coeff = es.eigenvectors() * coeff;
    // rebuild on the grid: sum_{m1,m2} coeff * psi_m1 x psi_m2
    std::vector<Vec> psi;
    for (int m = 0; m < fdim; ++m) psi.push_back(osc.hermite_state(m).amplitudes);
    double err2 = 0.0;
    std::size_t idx = 0;
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b, ++idx) {
        cplx expect = 0.0;
        for (int m1 = 0; m1 < fdim; ++m1)
          for (int m2 = 0; m2 < fdim; ++m2)
            expect += coeff(m1 * fdim + m2) * psi[m1](a) * psi[m2](b);
        err2 += std::norm(work[idx] - expect);
      }
    INFO(monomial_name(t.monomial));
    CHECK(std::sqrt(err2) <= 1e-9);
  }
}

TEST_CASE("embedding gram is near identity in the admissible regime") {
  const IrrepShape shape = make_shape(2, 6);
  const DiscreteOscillator osc(64);
  const Embedding emb(shape, osc);
  CHECK(emb.gram_defect() <= 1e-8);
  CHECK_THROWS_AS(Embedding(make_shape(2, 30), osc), std::domain_error);
}

TEST_CASE("simulate with zero angles is the identity") {
  const IrrepShape shape = make_shape(2, 3);
  const PipelineResult r = simulate(shape, zero_angles(2), 64);
  CHECK(r.spectral_error <= 1e-9);
  CHECK(spectral_norm(r.sim_unitary - Mat::Identity(4, 4)) <= 1e-9);
  CHECK(r.leakage_max <= 1e-9);
  CHECK_FALSE(r.leakage_flagged);
}

TEST_CASE("simulate reproduces a pure Cartan rotation") {
  const IrrepShape shape = make_shape(2, 1);
  AngleSet a = zero_angles(2);
  a.sigma[0] = 0.7;
  const PipelineResult r = simulate(shape, a, 64);
  Mat expect = Mat::Zero(2, 2);
  expect(0, 0) = std::exp(cplx(0.0, 0.35));
  expect(1, 1) = std::exp(cplx(0.0, -0.35));
  CHECK(spectral_norm(r.sim_unitary - expect) <= 1e-9);
}

TEST_CASE("simulate matches the exact unitary at random angles") {
  const IrrepShape shape = make_shape(2, 8);
  const PipelineResult r = simulate(shape, random_angles(2, 13), 256);
  CHECK(r.spectral_error <= 1e-4);
  // block near-unitarity is leakage-controlled
  CHECK(unitarity_defect(r.sim_unitary) <= 10.0 * std::max(r.spectral_error, 1e-12));
}

TEST_CASE("simulate for n=3") {
  const IrrepShape shape = make_shape(3, 2);
  const PipelineResult r = simulate(shape, random_angles(3, 1), 32);
  CHECK(r.spectral_error <= 1e-4);
}

TEST_CASE("simulate preconditions") {
  const IrrepShape shape = make_shape(2, 8);
  CHECK_THROWS_AS(simulate(shape, zero_angles(2), 63), std::domain_error);
  CHECK_THROWS_AS(simulate(shape, zero_angles(2), 16), std::domain_error);  // M > 0.375 L
  PipelineOptions small;
  small.mem_cap = 1000;
  CHECK_THROWS_AS(simulate(shape, zero_angles(2), 64, small), resource_error);
}

TEST_CASE("apply_factor rejects bad mode indices") {
  const IrrepShape shape = make_shape(2, 1);
  const DiscreteOscillator osc(16);
  std::vector<cplx> state(16 * 16, 1.0);
  CHECK_THROWS_AS(apply_factor(state.data(), shape, osc, {Monomial::XX, 1, 3, 0.1}),
                  std::domain_error);
  CHECK_THROWS_AS(apply_factor(state.data(), shape, osc, {Monomial::P2, 0, 0, 0.1}),
                  std::domain_error);
  CHECK_THROWS_AS(apply_factor(state.data(), shape, osc, {Monomial::XP, 2, 2, 0.1}),
                  std::domain_error);
}

TEST_CASE("leakage flag fires above the configured threshold") {
  const IrrepShape shape = make_shape(2, 4);
  PipelineOptions opts;
  opts.leakage_threshold = 1e-18;  // below the rounding floor
  const PipelineResult r = simulate(shape, random_angles(2, 1), 64, opts);
  CHECK(r.leakage_flagged);
  CHECK(r.leakage_max > 1e-18);
  CHECK(r.spectral_error <= 1e-6);  // flagged, not fatal
}

TEST_CASE("threaded simulate agrees with serial") {
  const IrrepShape shape = make_shape(2, 4);
  const AngleSet a = random_angles(2, 2);
  const PipelineResult serial = simulate(shape, a, 64);
  PipelineOptions opts;
  opts.threads = 3;
  const PipelineResult par = simulate(shape, a, 64, opts);
  CHECK(spectral_norm(serial.sim_unitary - par.sim_unitary) == 0.0);
}

TEST_CASE("lemma-3 style property: XX factor reproduces Fock coefficients") {
  // || P W E - E C || with W = exp(i th XX) on the grid and C the dense
  // truncated-Fock block between the embedded sectors
  const IrrepShape shape = make_shape(2, 4);
  const int L = 128;
  const DiscreteOscillator osc(L);
  const Embedding emb(shape, osc);
  const double angle = 0.3;
  const int fdim = 4 * 4 + 8;  // safety factor over the particle sector

  const Mat W = dense_fock_operator({Monomial::XX, 1, 2, angle}, fdim);
  Eigen::SelfAdjointEigenSolver<Mat> es(W);
  Mat Ufock = es.eigenvectors() *
              (es.eigenvalues().unaryExpr([&](double v) {
                 return std::exp(cplx(0.0, angle * v));
               })).asDiagonal() *
              es.eigenvectors().adjoint();

  const auto N = static_cast<Eigen::Index>(shape.N);
  Mat got(N, N), expect(N, N);
  std::vector<cplx> state(emb.grid_size());
  for (Eigen::Index ell = 0; ell < N; ++ell) {
    emb.column(static_cast<std::uint64_t>(ell), state.data());
    apply_factor(state.data(), shape, osc, {Monomial::XX, 1, 2, angle});
    got.col(ell) = emb.project(state.data());
    const auto parts = unrank(shape, static_cast<std::uint64_t>(ell)).parts;
    const Eigen::Index src = parts[0] * fdim + parts[1];
    for (Eigen::Index ellp = 0; ellp < N; ++ellp) {
      const auto tgt = unrank(shape, static_cast<std::uint64_t>(ellp)).parts;
      expect(ellp, ell) = Ufock(tgt[0] * fdim + tgt[1], src);
    }
  }
  CHECK(spectral_norm(got - expect) <= 1e-8);
}

TEST_CASE("lemma-4/5 style property: split PP and XP factors") {
  const IrrepShape shape = make_shape(2, 8);
  const int L = 256;
  const DiscreteOscillator osc(L);
  const Embedding emb(shape, osc);
  const int fdim = 4 * 8 + 8;

  for (const Monomial mono : {Monomial::PP, Monomial::XP}) {
    const double angle = 0.3;
    FactorizationPlan plan;
    plan.terms = {{mono, 1, 2, angle}};
    const FactorizationPlan split = split_phases(plan);
    REQUIRE(split.terms.size() >= 2);  // 0.3 > 1/(2e) forces a split

    Mat op = dense_fock_operator({mono, 1, 2, angle}, fdim);
    Eigen::SelfAdjointEigenSolver<Mat> es(op);
    Mat Ufock = es.eigenvectors() *
                (es.eigenvalues().unaryExpr([&](double v) {
                   return std::exp(cplx(0.0, angle * v));
                 })).asDiagonal() *
                es.eigenvectors().adjoint();

    const auto N = static_cast<Eigen::Index>(shape.N);
    Mat got(N, N), expect(N, N);
    std::vector<cplx> state(emb.grid_size());
    for (Eigen::Index ell = 0; ell < N; ++ell) {
      emb.column(static_cast<std::uint64_t>(ell), state.data());
      for (auto it = split.terms.rbegin(); it != split.terms.rend(); ++it)
        apply_factor(state.data(), shape, osc, *it);
      got.col(ell) = emb.project(state.data());
      const auto parts = unrank(shape, static_cast<std::uint64_t>(ell)).parts;
      for (Eigen::Index ellp = 0; ellp < N; ++ellp) {
        const auto tgt = unrank(shape, static_cast<std::uint64_t>(ellp)).parts;
        expect(ellp, ell) = Ufock(tgt[0] * fdim + tgt[1], parts[0] * fdim + parts[1]);
      }
    }
    INFO(monomial_name(mono));
    CHECK(spectral_norm(got - expect) <= 1e-6);
  }
}

TEST_CASE("error sweep decreases and fits a negative slope") {
  const IrrepShape shape = make_shape(2, 4);
  const AngleSet a = random_angles(2, 4);
  const ErrorFitResult fit = error_sweep(shape, a, {16, 24, 32});
  REQUIRE(fit.points.size() == 3);
  CHECK(fit.points[0].second > fit.points[1].second);
  CHECK(fit.points[1].second > fit.points[2].second);
  CHECK(fit.slope < -0.01);
  CHECK_FALSE(fit.floor_limited);
  CHECK_THROWS_AS(error_sweep(shape, a, {16, 24}), std::domain_error);
}

TEST_CASE("error sweep flags the numerical floor") {
  const IrrepShape shape = make_shape(2, 2);
  const ErrorFitResult fit = error_sweep(shape, zero_angles(2), {16, 32, 64});
  CHECK(fit.floor_limited);
}

TEST_CASE("kicked top: pure rotation preserves norm") {
  const IrrepShape shape = make_shape(2, 8);
  const auto snaps = kicked_top_demo(shape, 1.1, 0.0, 4, 64);
  REQUIRE(snaps.size() == 4);
  for (const Vec& s : snaps) CHECK(std::abs(s.norm() - 1.0) <= 1e-9);
}

TEST_CASE("kicked top: pure kick leaves populations invariant") {
  const IrrepShape shape = make_shape(2, 8);
  const auto snaps = kicked_top_demo(shape, 0.0, 0.7, 3, 64);
  for (const Vec& s : snaps) {
    CHECK(std::abs(std::abs(s(0)) - 1.0) <= 1e-10);
    for (Eigen::Index i = 1; i < s.size(); ++i) CHECK(std::abs(s(i)) <= 1e-10);
  }
}

TEST_CASE("kicked top matches the dense Floquet iteration") {
  const IrrepShape shape = make_shape(2, 8);
  const double gamma = 1.7, beta = 0.5;
  const int steps = 5;
  const auto snaps = kicked_top_demo(shape, gamma, beta, steps, 128);

  const auto N = static_cast<Eigen::Index>(shape.N);
  const Mat Jy = Mat(build_generator(shape, Generator::antisymmetric(1, 2)).entries);
  Vec kick(N);
  for (std::uint64_t ell = 0; ell < shape.N; ++ell) {
    const auto c = unrank(shape, ell);
    const double jz = 0.5 * (c.parts[0] - c.parts[1]);
    kick(static_cast<Eigen::Index>(ell)) = std::exp(cplx(0.0, -beta * jz * jz));
  }
  const Mat V = Mat(kick.asDiagonal()) * expm_i_hermitian(Jy, -gamma);
  Vec ref = Vec::Zero(N);
  ref(0) = 1.0;
  for (int s = 0; s < steps; ++s) {
    ref = V * ref;
    const double fidelity_err = 1.0 - std::abs(ref.dot(snaps[s]));
    CHECK(fidelity_err <= 1e-6);
  }
}
