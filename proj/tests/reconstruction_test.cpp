#include "trigbound/reconstruction.hpp"

#include <gtest/gtest.h>

#include <random>

#include "trigbound/filter_bank.hpp"
#include "trigbound/synthesis.hpp"

namespace {

using namespace trigbound::fb;

FilterBank identity_bank() {
  FilterBank fb(4, 2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) fb.ref(2 * a + b, a, b) = 1.0;
  }
  return fb;
}

Image random_image(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> pixel(0, 255);
  Image im(rows, cols);
  for (auto& p : im.pixels) p = pixel(rng);
  return im;
}

TEST(Psnr, Values) {
  Image a(2, 2);
  a.pixels = {0, 100, 200, 50};
  EXPECT_EQ(psnr(a, a), kPsnrCap);
  Image b = a;
  b.pixels[0] = 2;  // mse = 1
  EXPECT_NEAR(psnr(a, b), 20 * std::log10(200.0), 1e-12);
}

TEST(Apply, IdentityBankIsExact) {
  const auto h = identity_bank();
  const auto g = least_squares_synthesis(h, 2, 8);
  const auto r = apply(h, g, test_image(64, 48));
  EXPECT_EQ(r.psnr_db, kPsnrCap);
  ASSERT_EQ(r.subbands.size(), 4u);
  EXPECT_EQ(r.subbands[0].rows, 32);
  EXPECT_EQ(r.subbands[0].cols, 24);
}

TEST(Apply, IdentitySubbandsArePolyphaseSamples) {
  std::mt19937_64 rng(1);
  const auto im = random_image(rng, 8, 8);
  const auto r = apply(identity_bank(), least_squares_synthesis(identity_bank(), 2, 8), im);
  // y_c[m] = x[s m - k_c].
  for (int c = 0; c < 4; ++c) {
    const int k1 = c / 2;
    const int k2 = c % 2;
    for (int m1 = 0; m1 < 4; ++m1) {
      for (int m2 = 0; m2 < 4; ++m2) {
        EXPECT_EQ(r.subbands[c].at(m1, m2), im.at((2 * m1 - k1 + 8) % 8, (2 * m2 - k2 + 8) % 8));
      }
    }
  }
}

TEST(Apply, MinNormReconstructsRandomImages) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    FilterBank h(5, 4, 2);
    for (auto& t : h.taps()) t = normal(rng);
    for (int c = 0; c < 4; ++c) h.ref(c, c / 2, c % 2) += 3.0;
    const auto im = random_image(rng, 64, 64);
    const auto g = min_norm_synthesis(h, 32);
    EXPECT_GT(apply(h, g, im).psnr_db, 60.0);
  }
}

TEST(Apply, DirectAndFftSynthesisAgree) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  FilterBank h(5, 3, 2);
  for (auto& t : h.taps()) t = normal(rng);
  const auto im = random_image(rng, 80, 80);
  // Size 8 goes through the direct path, the periodised min-norm bank
  // through the FFT path; both must reproduce the image.
  const auto g_small = least_squares_synthesis(h, 8, 40);
  const auto g_big = min_norm_synthesis(h, 40);
  const auto a = apply(h, g_small, im);
  const auto b = apply(h, g_big, im);
  EXPECT_GT(b.psnr_db, 200.0);
  EXPECT_NEAR(psnr(b.reconstruction, a.reconstruction), a.psnr_db, 1.0);
}

TEST(Apply, RandomBankIsNotPerfect) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  FilterBank h(4, 3, 2);
  FilterBank g(4, 3, 2, -1);
  for (auto& t : h.taps()) t = normal(rng);
  for (auto& t : g.taps()) t = normal(rng);
  const auto r = apply(h, g, test_image(32, 32));
  EXPECT_TRUE(std::isfinite(r.psnr_db));
  EXPECT_LT(r.psnr_db, 20.0);
}

TEST(Apply, OddSizesArePadded) {
  const auto h = identity_bank();
  const auto g = least_squares_synthesis(h, 2, 8);
  const auto im = test_image(33, 17);
  const auto r = apply(h, g, im);
  EXPECT_EQ(r.reconstruction.rows, 33);
  EXPECT_EQ(r.reconstruction.cols, 17);
  EXPECT_EQ(r.psnr_db, kPsnrCap);
}

TEST(TestImage, EightBitRange) {
  const auto im = test_image(128, 96);
  double lo = 1e9;
  double hi = -1e9;
  for (double p : im.pixels) {
    EXPECT_EQ(p, std::round(p));
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LE(hi, 255.0);
  EXPECT_GT(hi - lo, 128.0);
}

}  // namespace
