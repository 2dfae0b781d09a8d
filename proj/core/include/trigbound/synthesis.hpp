#pragma once

#include "trigbound/filter_bank.hpp"

namespace trigbound::fb {

// Minimum-norm synthesis bank H^dagger = (H^* H)^{-1} H^* computed on
// Theta_N^2 and inverse transformed. The result is the N-periodised IIR
// bank: taps on [-s floor(N/2), -s floor(N/2) + s N)^2.
// Throws NumericalError naming the grid point when p_H falls below
// 1e-12 times its maximum.
FilterBank min_norm_synthesis(const FilterBank& analysis, int grid_size);

// Origin that centres an L-tap synthesis support on the min-norm
// synthesis of an n-tap analysis bank, whose energy sits around -(n-1)/2.
int synthesis_origin(int analysis_size, int synth_size);

// FIR synthesis taps of size synth_size minimising
// sum_w ||G(w) H(w) - I||_F^2 over Theta_N^2; a linear least-squares
// problem that decouples over synthesis cosets. The support starts at
// `origin` (default: synthesis_origin).
FilterBank least_squares_synthesis(const FilterBank& analysis, int synth_size, int grid_size);
FilterBank least_squares_synthesis(const FilterBank& analysis, int synth_size, int grid_size,
                                   int origin);

// max over Theta_N^2 of ||G(w) H(w) - I||_F^2.
double synthesis_residual(const FilterBank& analysis, const FilterBank& synthesis, int grid_size);

}  // namespace trigbound::fb
