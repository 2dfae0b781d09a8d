#pragma once

#include <array>
#include <span>

#include "trigbound/filter_bank.hpp"

namespace trigbound::fb::detail {

// Analysis components are hhat^v[m] = h[s m - v]; synthesis components are
// ghat^u[m] = g[s m + u].
enum class Role { kAnalysis, kSynthesis };

// out(w) = sum_m component[m] exp(-j w . m) on Theta_N^2 for filter c and
// coset v of the bank.
void coset_spectrum(const FilterBank& bank, int c, std::array<int, 2> v, Role role, int N,
                    std::span<Complex> out);

// Adjoint of coset_spectrum: grad[tap] += Re sum_w z(w) exp(+j w . m(tap))
// for every tap of filter c feeding this coset. Overwrites z.
void coset_adjoint(std::span<Complex> z, const FilterBank& bank, int c, std::array<int, 2> v,
                   Role role, int N, std::span<double> grad);

// Analysis polyphase matrix (N_c x s^2) without the sampling precondition.
PolyphaseGrid polyphase_grid_unchecked(const FilterBank& bank, int N);

// Synthesis polyphase matrix G(omega) (s^2 x N_c).
PolyphaseGrid synthesis_polyphase_grid(const FilterBank& bank, int N);

}  // namespace trigbound::fb::detail
