#pragma once

#include <complex>
#include <span>

namespace trigbound::detail {

// Exponent sign of the unnormalised DFT.
//   kMinus: X[k] = sum_m x[m] exp(-2 pi j k m / N)
//   kPlus:  X[k] = sum_m x[m] exp(+2 pi j k m / N)
enum class DftSign { kMinus, kPlus };

// In-place multidimensional DFT over a dense row-major array.
void dft_inplace(std::span<std::complex<double>> data, std::span<const int> shape, DftSign sign);

// In-place batch of `howmany` 1D transforms of length n; element e of
// transform b sits at data[b * dist + e * stride].
void dft_many_inplace(std::span<std::complex<double>> data, int n, int howmany, int stride,
                      int dist, DftSign sign);

// Convenience for square 2D grids.
inline void dft2_inplace(std::span<std::complex<double>> data, int n, DftSign sign) {
  const int shape[2] = {n, n};
  dft_inplace(data, shape, sign);
}

}  // namespace trigbound::detail
