#include "trigbound/toeplitz.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trigbound/errors.hpp"

namespace {

using trigbound::Complex;
using trigbound::TrigPoly;
using trigbound::toeplitz::ToeplitzSpec;

TrigPoly tridiagonal() {
  TrigPoly g(1, 1);
  g.coeffs()[0] = 1.0;
  g.coeffs()[1] = 2.0;
  g.coeffs()[2] = 1.0;
  return g;
}

TrigPoly five_point() {
  TrigPoly g(2, 1);
  auto c = g.coeffs();
  c[4] = 4.0;
  c[1] = c[7] = 1.0;
  c[3] = c[5] = 1.0;
  return g;
}

TEST(Symbol, IdentityIsConstant) {
  const auto s = trigbound::toeplitz::symbol(ToeplitzSpec(TrigPoly::constant(1, 1.0)));
  for (double t : {0.0, 1.0, 3.0}) EXPECT_NEAR(std::abs(s.eval(std::vector{t}) - 1.0), 0.0, 1e-15);
}

TEST(Symbol, TridiagonalIsTwoPlusTwoCos) {
  const auto s = trigbound::toeplitz::symbol(ToeplitzSpec(tridiagonal()));
  EXPECT_TRUE(s.is_real());
  for (double t = -3.0; t <= 3.0; t += 0.25) {
    EXPECT_NEAR(s.eval(std::vector{t}).real(), 2.0 + 2.0 * std::cos(t), 1e-14);
  }
}

TEST(Symbol, QuadratureRecoversGenerators) {
  std::mt19937_64 rng(11);
  const TrigPoly gen = oracle::random_complex_poly(rng, 2, 1);
  const auto s = trigbound::toeplitz::symbol(ToeplitzSpec(gen, 3));
  const int Q = 32;
  for (int k1 = -1; k1 <= 1; ++k1) {
    for (int k2 = -1; k2 <= 1; ++k2) {
      Complex acc = 0.0;
      for (int a = 0; a < Q; ++a) {
        for (int b = 0; b < Q; ++b) {
          const double t1 = 2.0 * oracle::kPi * a / Q;
          const double t2 = 2.0 * oracle::kPi * b / Q;
          acc += s.eval(std::vector{t1, t2}) * std::exp(Complex(0, -(k1 * t1 + k2 * t2)));
        }
      }
      acc /= Q * Q;
      const Complex want = gen.coeffs()[(k1 + 1) * 3 + (k2 + 1)];
      EXPECT_NEAR(std::abs(acc - want), 0.0, 1e-12) << k1 << "," << k2;
    }
  }
}

TEST(EigenRange, IdentityIsExact) {
  for (int N : {1, 5, 16}) {
    const auto r = trigbound::toeplitz::eigen_range(ToeplitzSpec(TrigPoly::constant(1, 1.0)), N);
    EXPECT_DOUBLE_EQ(r.lower, 1.0);
    EXPECT_DOUBLE_EQ(r.upper, 1.0);
  }
}

TEST(EigenRange, TridiagonalEnclosesSpectrum) {
  const ToeplitzSpec spec(tridiagonal(), 5);
  const auto r = trigbound::toeplitz::eigen_range(spec, 16);
  EXPECT_LE(r.lower, 0.0);
  EXPECT_GE(r.upper, 4.0);
  const auto ev = oracle::hermitian_eigenvalues(oracle::toeplitz_matrix(spec.generators, 5));
  EXPECT_GE(ev.minCoeff(), r.lower);
  EXPECT_LE(ev.maxCoeff(), r.upper);
}

TEST(EigenRange, BttbEnclosesSpectrum) {
  const ToeplitzSpec spec(five_point(), 9);
  const auto r = trigbound::toeplitz::eigen_range(spec, 16);
  EXPECT_LE(r.lower, 0.0);
  EXPECT_GE(r.upper, 8.0);
  const auto ev = oracle::hermitian_eigenvalues(oracle::toeplitz_matrix(spec.generators, 9));
  EXPECT_GE(ev.minCoeff(), r.lower);
  EXPECT_LE(ev.maxCoeff(), r.upper);
}

TEST(EigenRange, RejectsNonHermitian) {
  TrigPoly g(1, 1);
  g.coeffs()[0] = 1.0;
  g.coeffs()[2] = 2.0;
  EXPECT_FALSE(ToeplitzSpec(g).is_hermitian());
  EXPECT_THROW(trigbound::toeplitz::eigen_range(ToeplitzSpec(g), 8), trigbound::ArgumentError);
}

TEST(EigenRange, RejectsUndersampling) {
  EXPECT_THROW(trigbound::toeplitz::eigen_range(ToeplitzSpec(tridiagonal()), 2),
               trigbound::PreconditionError);
}

TEST(EigenRange, FineGridIsNearlyTight) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const TrigPoly gen = oracle::random_real_poly(rng, 1, n);
    const auto r = trigbound::toeplitz::eigen_range(ToeplitzSpec(gen), 1024);
    const auto dense = oracle::dense_extrema(gen, 1 << 16);
    const double range = dense.max_real - dense.min_real;
    EXPECT_LE((r.upper - r.lower) - range, 0.05 * (range + 1.0));
  }
}

}  // namespace
