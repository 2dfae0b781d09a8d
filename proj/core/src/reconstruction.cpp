#include "trigbound/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "trigbound/errors.hpp"

namespace trigbound::fb {
namespace {

using trigbound::detail::DftSign;

int positive_mod(long long k, int n) {
  const long long r = k % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Synthesis supports above this many taps go through the FFT path.
constexpr int kDirectTapLimit = 32 * 32;

Image periodic_extend(const Image& img, int rows, int cols) {
  Image out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.at(r, c) = img.at(r % img.rows, c % img.cols);
  }
  return out;
}

Image analyze(const FilterBank& h, int ch, const Image& x) {
  const int s = h.downsample();
  const int L = h.size();
  const int o = h.origin();
  Image y(x.rows / s, x.cols / s);
  const auto taps = h.filter(ch);
  for (int m1 = 0; m1 < y.rows; ++m1) {
    for (int m2 = 0; m2 < y.cols; ++m2) {
      double acc = 0.0;
      for (int i = 0; i < L; ++i) {
        const int r = positive_mod(static_cast<long long>(s) * m1 - (o + i), x.rows);
        for (int j = 0; j < L; ++j) {
          const double t = taps[static_cast<std::size_t>(i) * L + j];
          if (t == 0.0) continue;
          acc += t * x.at(r, positive_mod(static_cast<long long>(s) * m2 - (o + j), x.cols));
        }
      }
      y.at(m1, m2) = acc;
    }
  }
  return y;
}

void synthesize_direct(const FilterBank& g, int ch, const Image& y, Image& out) {
  const int s = g.downsample();
  const int L = g.size();
  const int o = g.origin();
  const auto taps = g.filter(ch);
  for (int m1 = 0; m1 < y.rows; ++m1) {
    for (int m2 = 0; m2 < y.cols; ++m2) {
      const double v = y.at(m1, m2);
      if (v == 0.0) continue;
      for (int i = 0; i < L; ++i) {
        const int r = positive_mod(static_cast<long long>(s) * m1 + o + i, out.rows);
        for (int j = 0; j < L; ++j) {
          const int c = positive_mod(static_cast<long long>(s) * m2 + o + j, out.cols);
          out.at(r, c) += v * taps[static_cast<std::size_t>(i) * L + j];
        }
      }
    }
  }
}

void synthesize_fft(const FilterBank& g, int ch, const Image& y, Image& out) {
  const int s = g.downsample();
  const int L = g.size();
  const int o = g.origin();
  const int R = out.rows;
  const int C = out.cols;
  const int shape[2] = {R, C};
  std::vector<Complex> up(static_cast<std::size_t>(R) * C);
  std::vector<Complex> kernel(static_cast<std::size_t>(R) * C);
  for (int m1 = 0; m1 < y.rows; ++m1) {
    for (int m2 = 0; m2 < y.cols; ++m2) up[static_cast<std::size_t>(s * m1) * C + s * m2] = y.at(m1, m2);
  }
  const auto taps = g.filter(ch);
  for (int i = 0; i < L; ++i) {
    const int r = positive_mod(o + i, R);
    for (int j = 0; j < L; ++j) {
      kernel[static_cast<std::size_t>(r) * C + positive_mod(o + j, C)] += taps[static_cast<std::size_t>(i) * L + j];
    }
  }
  trigbound::detail::dft_inplace(up, shape, DftSign::kMinus);
  trigbound::detail::dft_inplace(kernel, shape, DftSign::kMinus);
  for (std::size_t k = 0; k < up.size(); ++k) up[k] *= kernel[k];
  trigbound::detail::dft_inplace(up, shape, DftSign::kPlus);
  const double scale = 1.0 / (static_cast<double>(R) * C);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) out.at(r, c) += up[static_cast<std::size_t>(r) * C + c].real() * scale;
  }
}

}  // namespace

double psnr(const Image& reference, const Image& test) {
  if (reference.rows != test.rows || reference.cols != test.cols) {
    throw ArgumentError("psnr: image shapes differ");
  }
  double peak = 0.0;
  double sse = 0.0;
  for (std::size_t k = 0; k < reference.pixels.size(); ++k) {
    peak = std::max(peak, reference.pixels[k]);
    const double d = reference.pixels[k] - test.pixels[k];
    sse += d * d;
  }
  const double mse = sse / static_cast<double>(reference.pixels.size());
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / mse));
}

ReconstructionResult apply(const FilterBank& analysis, const FilterBank& synthesis,
                           const Image& image) {
  if (analysis.channels() != synthesis.channels() ||
      analysis.downsample() != synthesis.downsample()) {
    throw ArgumentError("apply: analysis and synthesis banks differ in channels or s");
  }
  if (image.rows < 1 || image.cols < 1 ||
      image.pixels.size() != static_cast<std::size_t>(image.rows) * image.cols) {
    throw ArgumentError("apply: malformed image");
  }
  const int s = analysis.downsample();
  const int R = (image.rows + s - 1) / s * s;
  const int C = (image.cols + s - 1) / s * s;
  const Image x = (R == image.rows && C == image.cols) ? image : periodic_extend(image, R, C);

  ReconstructionResult result;
  Image recon(R, C);
  const bool use_fft = synthesis.size() * synthesis.size() > kDirectTapLimit;
  for (int ch = 0; ch < analysis.channels(); ++ch) {
    Image y = analyze(analysis, ch, x);
    if (use_fft) {
      synthesize_fft(synthesis, ch, y, recon);
    } else {
      synthesize_direct(synthesis, ch, y, recon);
    }
    result.subbands.push_back(std::move(y));
  }
  if (R != image.rows || C != image.cols) {
    Image cropped(image.rows, image.cols);
    for (int r = 0; r < image.rows; ++r) {
      for (int c = 0; c < image.cols; ++c) cropped.at(r, c) = recon.at(r, c);
    }
    recon = std::move(cropped);
  }
  result.psnr_db = psnr(image, recon);
  result.reconstruction = std::move(recon);
  return result;
}

Image test_image(int rows, int cols) {
  Image img(rows, cols);
  const double pi = std::numbers::pi;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double y = static_cast<double>(r) / rows;
      const double x = static_cast<double>(c) / cols;
      double v = 90.0 + 60.0 * x + 30.0 * y;
      // Oriented gratings in the four quadrants.
      const double angle = (x < 0.5 ? 0.3 : 1.2) + (y < 0.5 ? 0.0 : 0.9);
      const double freq = (x < 0.5) == (y < 0.5) ? 0.18 : 0.42;
      v += 45.0 * std::sin(freq * pi * (c * std::cos(angle) + r * std::sin(angle)));
      const double dx = x - 0.55;
      const double dy = y - 0.45;
      if (dx * dx + dy * dy < 0.04) v = 0.6 * v + 80.0;
      img.at(r, c) = std::clamp(std::round(v), 0.0, 255.0);
    }
  }
  return img;
}

}  // namespace trigbound::fb
