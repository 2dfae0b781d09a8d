#include "trigbound/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trigbound/errors.hpp"

namespace trigbound::fb {
namespace {

// Smooth step: 0 for x <= -1, 1 for x >= 1, sin^2 ramp in between.
double smooth_step(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double s = std::sin(0.25 * std::numbers::pi * (1.0 + x));
  return s * s;
}

}  // namespace

std::vector<double> wedge_tiling(int channels, int grid_size, double total) {
  if (channels < 1 || grid_size < 1) throw ArgumentError("wedge_tiling: bad channels or N");
  const int N = grid_size;
  const double pi = std::numbers::pi;
  std::vector<double> out(static_cast<std::size_t>(channels) * N * N, 0.0);
  if (channels == 1) {
    std::fill(out.begin(), out.end(), total);
    return out;
  }
  const int directional = channels - 1;
  const int rings = directional % 8 == 0 ? directional / 8 : 1;
  const int wedges = directional / rings;

  // Ring boundaries in pseudo-polar radius r = max(|w1|, |w2|) / pi:
  // low-pass below 2^-rings, ring j in [2^(j-rings-1), 2^(j-rings)).
  std::vector<double> edges(rings + 1);
  for (int j = 0; j <= rings; ++j) edges[j] = std::pow(2.0, j - rings);

  std::vector<double> w(channels);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      const int fa = a < (N + 1) / 2 ? a : a - N;
      const int fb = b < (N + 1) / 2 ? b : b - N;
      const double w1 = 2.0 * pi * fa / N;
      const double w2 = 2.0 * pi * fb / N;
      const double r = std::max(std::abs(w1), std::abs(w2)) / pi;
      double theta = std::atan2(w2, w1);
      if (theta < 0.0) theta += pi;
      if (theta >= pi) theta -= pi;

      const double t0 = 0.5 * edges[0];
      w[0] = smooth_step((edges[0] - r) / t0);
      for (int j = 0; j < rings; ++j) {
        const double lo = edges[j];
        const double inner = smooth_step((r - lo) / (0.5 * lo));
        const double outer = j + 1 == rings ? 1.0 : smooth_step((edges[j + 1] - r) / (0.5 * edges[j + 1]));
        const double radial = inner * outer;
        for (int k = 0; k < wedges; ++k) {
          const double center = (k + 0.5) * pi / wedges;
          double dist = std::abs(theta - center);
          dist = std::min(dist, pi - dist);
          const double spacing = pi / wedges;
          const double angular =
              dist >= spacing ? 0.0 : std::pow(std::cos(0.5 * pi * dist / spacing), 2.0);
          w[1 + j * wedges + k] = radial * angular;
        }
      }
      double sum = 0.0;
      for (double v : w) sum += v;
      if (sum <= 0.0) {
        w.assign(channels, 0.0);
        w[0] = 1.0;
        sum = 1.0;
      }
      for (int c = 0; c < channels; ++c) {
        out[(static_cast<std::size_t>(c) * N + a) * N + b] = total * w[c] / sum;
      }
    }
  }
  return out;
}

double barrier_matched_total(int s, double beta, double gamma) {
  if (s < 1) throw ArgumentError("barrier_matched_total: s must be >= 1");
  const double cosets = static_cast<double>(s) * s;
  if (!(beta > 0.0) || !(gamma > 0.0)) return cosets;
  return cosets * std::pow(gamma / (2.0 * beta), 1.0 / (2.0 * cosets));
}

}  // namespace trigbound::fb
