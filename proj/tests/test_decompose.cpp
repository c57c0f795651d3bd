#include <catch2/catch_amalgamated.hpp>

#include "sunirrep/decompose.hpp"

using namespace sunirrep;

TEST_CASE("fundamental matrix trivial cases") {
  CHECK((fundamental_matrix(3, zero_angles(3)) - Mat::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);

  AngleSet a = zero_angles(2);
  a.theta[0] = kPi;
  const Mat U = fundamental_matrix(2, a);  // exp(i pi sigma_x / 2) = i sigma_x
  Mat expect = Mat::Zero(2, 2);
  expect(0, 1) = expect(1, 0) = cplx(0.0, 1.0);
  CHECK(spectral_norm(U - expect) <= 1e-13);
}

TEST_CASE("fundamental matrix against independent exponentiation") {
  const AngleSet a = random_angles(3, 11);
  const Mat U = fundamental_matrix(3, a);
  // crude independent route: scaled Taylor series of the exponent
  const Mat X = cplx(0.0, 1.0) * exponent_matrix(make_shape(3, 1), a);
  const int s = 40;
  Mat step = Mat::Identity(3, 3);
  Mat pow = Mat::Identity(3, 3);
  double fact = 1.0;
  for (int k = 1; k <= 24; ++k) {
    pow = Mat(pow * (X / double(s)));
    fact *= k;
    step += pow / fact;
  }
  Mat oracle = Mat::Identity(3, 3);
  for (int k = 0; k < s; ++k) oracle = Mat(oracle * step);
  CHECK(spectral_norm(U - oracle) <= 1e-12);
}

TEST_CASE("identity decomposes to all-zero angles") {
  const EulerSequence seq = euler_decompose(Mat::Identity(3, 3));
  CHECK(seq.reconstruction_error <= 1e-14);
  for (const auto& f : seq.factors) {
    const double a = f.angle > 2 * kPi ? f.angle - 4 * kPi : f.angle;
    CHECK(std::abs(a) <= 1e-14);
  }
  CHECK(seq.factors.size() == 8);  // deterministic length n^2 - 1
}

TEST_CASE("single embedded Givens rotation is recovered") {
  AngleSet a = zero_angles(3);
  a.phi[AngleSet::pair_index(3, 1, 2)] = 0.9;
  const Mat u = fundamental_matrix(3, a);
  const EulerSequence seq = euler_decompose(u, 1e-12);
  CHECK(seq.reconstruction_error <= 1e-12);
  double largest = 0.0;
  Generator which{};
  for (const auto& f : seq.factors) {
    double ang = f.angle > 2 * kPi ? f.angle - 4 * kPi : f.angle;
    if (std::abs(ang) > largest) {
      largest = std::abs(ang);
      which = f.gen;
    }
  }
  CHECK(largest == Catch::Approx(0.9).margin(1e-10));
  CHECK(which.kind == GeneratorKind::Antisymmetric);
  CHECK(which.j == 1);
  CHECK(which.k == 2);
}

TEST_CASE("random SU(3) decomposition") {
  const Mat u = fundamental_matrix(3, random_angles(3, 3));
  const EulerSequence seq = euler_decompose(u, 1e-10);
  CHECK(seq.reconstruction_error <= 1e-10);
  CHECK(seq.factors.size() <= 8);
}

TEST_CASE("non-unitary input is rejected") {
  Mat bad = Mat::Identity(3, 3);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(euler_decompose(bad), std::domain_error);
  // unitary but det != 1
  Mat detbad = Mat::Identity(2, 2);
  detbad(0, 0) = cplx(0.0, 1.0);
  CHECK_THROWS_AS(euler_decompose(detbad), std::domain_error);
}

TEST_CASE("lift of the empty sequence is the identity") {
  EulerSequence seq;
  seq.n = 2;
  const IrrepShape shape = make_shape(2, 3);
  CHECK(spectral_norm(lift_sequence(seq, shape) - Mat::Identity(4, 4)) == 0.0);
}

TEST_CASE("lift of a single H factor gives diagonal phases") {
  EulerSequence seq;
  seq.n = 2;
  seq.factors.push_back({Generator::diagonal(1), kPi});
  const Mat U = lift_sequence(seq, make_shape(2, 2));
  Mat expect = Mat::Zero(3, 3);
  expect(0, 0) = std::exp(cplx(0.0, kPi));
  expect(1, 1) = 1.0;
  expect(2, 2) = std::exp(cplx(0.0, -kPi));
  CHECK(spectral_norm(U - expect) <= 1e-13);
}

TEST_CASE("homomorphism: lifted decomposition equals the exact unitary") {
  // decompose in the fundamental, lift to the irrep, compare with the exact
  // N-dimensional exponential of the same element
  for (int n : {2, 3}) {
    for (std::int64_t M = 1; M <= 4; ++M) {
      const IrrepShape shape = make_shape(n, M);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AngleSet a = random_angles(n, seed);
        const Mat u = fundamental_matrix(n, a);
        const EulerSequence seq =
            euler_decompose(u, 1e-10 / static_cast<double>(shape.N));
        const Mat lifted = lift_sequence(seq, shape);
        const Mat exact = exact_unitary(shape, a);
        CHECK(spectral_norm(lifted - exact) <= 1e-8);
      }
    }
  }
}

TEST_CASE("random n=3 M=2 lift matches exact_unitary") {
  const IrrepShape shape = make_shape(3, 2);
  const AngleSet a = random_angles(3, 3);
  const EulerSequence seq = euler_decompose(fundamental_matrix(3, a), 1e-11);
  CHECK(spectral_norm(lift_sequence(seq, shape) - exact_unitary(shape, a)) <= 1e-8);
}

TEST_CASE("single-generator elements across the full angle range") {
  // sweeps every branch of the pivot solver: purely imaginary ratios of
  // magnitude above and below 1, vanishing pivots, and the pure swap
  for (int n : {2, 3}) {
    for (double ang = 0.1; ang < 4.0 * kPi; ang += 0.7) {
      for (int which = 0; which < 3; ++which) {
        AngleSet a = zero_angles(n);
        if (which == 0)
          a.sigma[0] = ang;
        else if (which == 1)
          a.theta[AngleSet::pair_index(n, 1, 2)] = ang;
        else
          a.phi[AngleSet::pair_index(n, 1, 2)] = ang;
        const Mat u = fundamental_matrix(n, a);
        const EulerSequence seq = euler_decompose(u, 1e-11);
        CHECK(seq.reconstruction_error <= 1e-11);
        for (const auto& f : seq.factors) CHECK(std::isfinite(f.angle));
      }
    }
  }
}

TEST_CASE("pure swap pivot (vanishing diagonal)") {
  AngleSet a = zero_angles(2);
  a.phi[0] = kPi;  // exp(i pi A) = [[0,-1],[1,0]]
  const Mat u = fundamental_matrix(2, a);
  CHECK(std::abs(u(0, 0)) <= 1e-15);
  const EulerSequence seq = euler_decompose(u, 1e-12);
  CHECK(seq.reconstruction_error <= 1e-12);
}

TEST_CASE("homomorphism holds for n = 4") {
  const IrrepShape shape = make_shape(4, 2);
  const AngleSet a = random_angles(4, 9);
  const EulerSequence seq =
      euler_decompose(fundamental_matrix(4, a), 1e-10 / static_cast<double>(shape.N));
  CHECK(spectral_norm(lift_sequence(seq, shape) - exact_unitary(shape, a)) <= 1e-8);
}

TEST_CASE("factor angles land in [0, 4pi)") {
  const EulerSequence seq = euler_decompose(fundamental_matrix(4, random_angles(4, 5)));
  CHECK(seq.factors.size() == 15);
  for (const auto& f : seq.factors) {
    CHECK(f.angle >= 0.0);
    CHECK(f.angle < 4 * kPi);
  }
}
