#pragma once

#include <vector>

namespace trigbound::fb {

// Desired squared-magnitude responses for a curvelet-like frequency
// tiling: one low-pass cell plus angular wedges on one or more
// pseudo-polar rings. Returns channels planes of N x N values over
// Theta_N^2 (w = 2 pi k / N, k row-major). Channels (beyond the low-pass)
// are split into rings of 8 wedges when divisible, otherwise a single
// ring. The planes sum to `total` at every grid point and are symmetric
// under w -> -w.
std::vector<double> wedge_tiling(int channels, int grid_size, double total = 1.0);

// Tiling total for which an ideal tight frame puts p_H at the minimiser
// sqrt(gamma / (2 beta)) of beta p^2 - gamma log p: s^2 (gamma / 2 beta)^(1 / 2 s^2).
// Falls back to s^2 (Gram = I) when beta or gamma is zero.
double barrier_matched_total(int s, double beta, double gamma);

}  // namespace trigbound::fb
