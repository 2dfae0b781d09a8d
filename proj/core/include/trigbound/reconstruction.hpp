#pragma once

#include <vector>

#include "trigbound/filter_bank.hpp"

namespace trigbound::fb {

// Real single-channel image, row-major.
struct Image {
  int rows = 0;
  int cols = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int r, int c) : rows(r), cols(c), pixels(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

struct ReconstructionResult {
  std::vector<Image> subbands;  // one per channel, size rows/s x cols/s
  Image reconstruction;
  double psnr_db = 0.0;
};

constexpr double kPsnrCap = 300.0;

// Peak signal to noise ratio with peak = max of the reference; capped at
// kPsnrCap for exact reconstructions.
double psnr(const Image& reference, const Image& test);

// Periodic analysis (convolve, downsample by s) followed by synthesis
// (upsample, convolve, sum). Images whose sides are not multiples of s are
// extended periodically and the reconstruction is cropped back.
ReconstructionResult apply(const FilterBank& analysis, const FilterBank& synthesis,
                           const Image& image);

// Deterministic 8-bit test pattern (gratings, disc, ramp) for end-to-end
// checks.
Image test_image(int rows, int cols);

}  // namespace trigbound::fb
