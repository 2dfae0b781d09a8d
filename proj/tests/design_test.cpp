#include "trigbound/design.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trigbound/errors.hpp"
#include "trigbound/synthesis.hpp"
#include "trigbound/tiling.hpp"

namespace {

using namespace trigbound::fb;
using trigbound::Complex;

DesignSpec make_spec(int channels, int size, int s, int N) {
  DesignSpec spec;
  spec.channels = channels;
  spec.size = size;
  spec.s = s;
  spec.grid_size = N;
  spec.desired.assign(static_cast<std::size_t>(channels) * N * N, 0.0);
  spec.weights.assign(spec.desired.size(), 0.0);
  return spec;
}

FilterBank random_bank(std::mt19937_64& rng, int channels, int size, int s, double scale = 1.0,
                       int origin = 0) {
  std::normal_distribution<double> normal;
  FilterBank fb(channels, size, s, origin);
  for (auto& t : fb.taps()) t = scale * normal(rng);
  return fb;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6}); }

// Central difference with step 1e-5 relative to the tap.
template <typename F>
double central_difference(FilterBank& fb, std::size_t k, F&& value) {
  const double x = fb.taps()[k];
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  fb.taps()[k] = x + h;
  const double up = value();
  fb.taps()[k] = x - h;
  const double down = value();
  fb.taps()[k] = x;
  return (up - down) / (2 * h);
}

TEST(Objective, AllZeroWeightsIsZero) {
  std::mt19937_64 rng(1);
  const auto spec = make_spec(5, 4, 2, 16);
  const auto v = objective(random_bank(rng, 5, 4, 2), spec);
  EXPECT_EQ(v.value, 0.0);
  for (double g : v.gradient) EXPECT_EQ(g, 0.0);
}

TEST(Objective, FitVanishesOnOwnResponse) {
  std::mt19937_64 rng(2);
  const int N = 16;
  auto spec = make_spec(1, 3, 1, N);
  const auto fb = random_bank(rng, 1, 3, 1);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      Complex h = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) h += fb.at(0, i, j) * std::exp(Complex(0, 2 * oracle::kPi * (a * i + b * j) / N));
      }
      spec.desired[a * N + b] = std::norm(h);
      spec.weights[a * N + b] = 1.0;
    }
  }
  const auto v = objective(fb, spec);
  EXPECT_LT(v.fit, 1e-20);
  for (double g : v.gradient) EXPECT_LT(std::abs(g), 1e-9);
}

TEST(Objective, ParametersPickTerms) {
  std::mt19937_64 rng(3);
  auto spec = make_spec(4, 3, 2, 12);
  const auto fb = random_bank(rng, 4, 3, 2);
  spec.alpha = 2.0;
  double norm = 0.0;
  for (double t : fb.taps()) norm += t * t;
  const auto v = objective(fb, spec);
  EXPECT_NEAR(v.value, 2.0 * norm, 1e-12 * norm);
  EXPECT_NEAR(v.norm, 2.0 * norm, 1e-12 * norm);
}

TEST(Objective, BarrierViolationIsSignalled) {
  auto spec = make_spec(4, 4, 2, 16);
  spec.gamma = 1.0;
  const auto v = objective(FilterBank(4, 4, 2), spec);
  EXPECT_TRUE(v.barrier_violated);
  EXPECT_TRUE(std::isinf(v.value));
}

TEST(Objective, RejectsNonFiniteTaps) {
  auto spec = make_spec(4, 2, 2, 8);
  FilterBank fb(4, 2, 2);
  fb.taps()[3] = NAN;
  EXPECT_THROW(objective(fb, spec), trigbound::ArgumentError);
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int config = 0; config < 50; ++config) {
    const int s = 1 + config % 2;
    const int channels = s * s + config % 3;
    const int size = 2 + config % 3;
    const int N = 2 * degree_bound(size, s, 2) + 1 + 2 * (config % 4);
    auto spec = make_spec(channels, size, s, N);
    for (auto& d : spec.desired) d = unit(rng);
    for (auto& w : spec.weights) w = config % 5 == 0 ? 0.0 : unit(rng);
    spec.alpha = 1.0;
    spec.beta = 10.0;
    spec.gamma = 1.0;
    auto fb = random_bank(rng, channels, size, s, 0.5);
    const auto v = objective(fb, spec);
    ASSERT_FALSE(v.barrier_violated);
    for (std::size_t k = 0; k < fb.taps().size(); k += 1 + config % 3) {
      const double fd = central_difference(fb, k, [&] { return objective(fb, spec).value; });
      const double err = rel_err(v.gradient[k], fd);
      worst = std::max(worst, err);
      EXPECT_LT(err, 1e-4) << "config " << config << " tap " << k;
    }
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(Codesign, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int config = 0; config < 10; ++config) {
    const int channels = 4 + config % 2;
    const int size = 3 + config % 2;
    const int N = 2 * degree_bound(size, 2, 2) + 3;
    auto spec = make_spec(channels, size, 2, N);
    spec.alpha = 1.0;
    spec.beta = 10.0;
    spec.gamma = 1.0;
    auto H = random_bank(rng, channels, size, 2, 0.5);
    const int L = 3 + config % 3;
    auto G = random_bank(rng, channels, L, 2, 0.5, synthesis_origin(size, L));
    const double lambda = 1.0 + config;
    const auto v = codesign_objective(H, G, spec, lambda);
    ASSERT_FALSE(v.barrier_violated);
    for (std::size_t k = 0; k < H.taps().size(); k += 3) {
      const double fd = central_difference(H, k, [&] { return codesign_objective(H, G, spec, lambda).value; });
      EXPECT_LT(rel_err(v.gradient[k], fd), 1e-4) << "analysis tap " << k;
    }
    for (std::size_t k = 0; k < G.taps().size(); k += 2) {
      const double fd = central_difference(G, k, [&] { return codesign_objective(H, G, spec, lambda).value; });
      EXPECT_LT(rel_err(v.synthesis_gradient[k], fd), 1e-4) << "synthesis tap " << k;
    }
  }
}

TEST(Codesign, PenaltyIsResidualSum) {
  FilterBank H(4, 2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) H.ref(2 * a + b, a, b) = 1.0;
  }
  const auto G = least_squares_synthesis(H, 2, 8);
  const auto v = codesign_objective(H, G, make_spec(4, 2, 2, 8), 3.0);
  EXPECT_LT(v.synthesis_penalty, 1e-20);
  const auto zero = codesign_objective(H, FilterBank(4, 2, 2), make_spec(4, 2, 2, 8), 3.0);
  EXPECT_NEAR(zero.synthesis_penalty, 64 * 4, 1e-9);
  EXPECT_NEAR(zero.value, 3.0 * 64 * 4, 1e-9);
}

TEST(PenaltySchedule, LogTwo) {
  EXPECT_DOUBLE_EQ(penalty_schedule(1), 1.0);
  EXPECT_DOUBLE_EQ(penalty_schedule(2), 1.0);
  EXPECT_DOUBLE_EQ(penalty_schedule(1024), 10.0);
}

TEST(InitialBank, RandomIsSeeded) {
  const auto spec = make_spec(4, 3, 2, 8);
  const auto a = initial_bank(spec, InitStrategy::kRandom, 0.3, 9);
  const auto b = initial_bank(spec, InitStrategy::kRandom, 0.3, 9);
  const auto c = initial_bank(spec, InitStrategy::kRandom, 0.3, 10);
  EXPECT_TRUE(std::equal(a.taps().begin(), a.taps().end(), b.taps().begin()));
  EXPECT_FALSE(std::equal(a.taps().begin(), a.taps().end(), c.taps().begin()));
}

TEST(InitialBank, IdftOfFlatResponseIsDelta) {
  auto spec = make_spec(1, 3, 1, 8);
  std::fill(spec.desired.begin(), spec.desired.end(), 4.0);
  std::fill(spec.weights.begin(), spec.weights.end(), 1.0);
  const auto fb = initial_bank(spec, InitStrategy::kIdft, 0.1, 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(fb.at(0, i, j), i == 1 && j == 1 ? 2.0 : 0.0, 1e-12);
  }
}

TEST(Design, AllpassConverges) {
  auto spec = make_spec(1, 3, 1, 16);
  std::fill(spec.desired.begin(), spec.desired.end(), 1.0);
  std::fill(spec.weights.begin(), spec.weights.end(), 1.0);
  spec.iters = 5000;
  spec.seed = 3;
  const auto r = design(spec);
  EXPECT_EQ(r.history.size(), 5000u);
  EXPECT_LT(r.history.back(), 1e-4);
  // Dense check between grid points.
  const int M = 64;
  double worst = 0.0;
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      Complex h = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) h += r.bank.at(0, i, j) * std::exp(Complex(0, 2 * oracle::kPi * (a * i + b * j) / M));
      }
      worst = std::max(worst, std::abs(std::norm(h) - 1.0));
    }
  }
  EXPECT_LT(worst, 1e-2);
}

TEST(Design, Deterministic) {
  auto spec = make_spec(5, 4, 2, 16);
  spec.desired = wedge_tiling(5, 16, 4.0);
  std::fill(spec.weights.begin(), spec.weights.end(), 1.0);
  spec.alpha = 1.0;
  spec.beta = 10.0;
  spec.gamma = 1.0;
  spec.iters = 200;
  spec.seed = 17;
  const auto a = design(spec);
  const auto b = design(spec);
  EXPECT_TRUE(std::equal(a.bank.taps().begin(), a.bank.taps().end(), b.bank.taps().begin()));
  EXPECT_EQ(a.history, b.history);
}

TEST(Design, IdftInitStaysFeasible) {
  auto spec = make_spec(5, 5, 2, 32);
  spec.desired = wedge_tiling(5, 32, 4.0);
  std::fill(spec.weights.begin(), spec.weights.end(), 1.0);
  spec.alpha = 1.0;
  spec.beta = 10.0;
  spec.gamma = 1.0;
  spec.iters = 50;
  spec.init = InitStrategy::kIdft;
  const auto r = design(spec);
  for (double h : r.history) EXPECT_TRUE(std::isfinite(h));
  EXPECT_TRUE(r.bank.all_finite());
}

TEST(Design, ProjectionIsApplied) {
  auto spec = make_spec(4, 3, 2, 12);
  std::fill(spec.desired.begin(), spec.desired.end(), 1.0);
  std::fill(spec.weights.begin(), spec.weights.end(), 1.0);
  spec.gamma = 1.0;
  spec.iters = 20;
  spec.projection = [](FilterBank& fb) {
    for (int c = 0; c < fb.channels(); ++c) fb.ref(c, 2, 2) = 0.0;
  };
  const auto r = design(spec);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(r.bank.at(c, 2, 2), 0.0);
}

TEST(Design, RejectsBadSpec) {
  auto spec = make_spec(3, 3, 2, 12);
  EXPECT_THROW(design(spec), trigbound::ArgumentError);
  auto spec2 = make_spec(4, 3, 2, 12);
  spec2.weights.pop_back();
  EXPECT_THROW(design(spec2), trigbound::ArgumentError);
}

}  // namespace
