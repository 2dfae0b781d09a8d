#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trigbound/filter_bank.hpp"

namespace trigbound::fb {

enum class InitStrategy { kIdft, kRandom };

const char* to_string(InitStrategy s);
InitStrategy init_from_string(const std::string& name);

// Design problem on the grid Theta_N^2:
//
//   f(H) = sum_c sum_w W_c(w) (|h_c(w)|^2 - D_c(w))^2,   h_c(w) = sum_m h_c[m] exp(j w.m)
//   R(H) = alpha sum_c ||h_c||^2 + sum_w beta p_H(w)^2 - gamma log p_H(w)
//
// desired and weights hold N_c planes of N x N values, plane c row-major
// over (w1, w2) with w = 2 pi (w1, w2) / N. A channel with no target has
// an all-zero weight plane.
struct DesignSpec {
  int channels = 1;
  int size = 1;
  int s = 1;
  int grid_size = 64;
  std::vector<double> desired;
  std::vector<double> weights;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int iters = 5000;
  double learning_rate = 1e-2;
  std::uint64_t seed = 0;
  InitStrategy init = InitStrategy::kRandom;
  double init_scale = 0.0;  // std of random taps; 0 selects 1/size
  // Co-design penalty weight at iteration i is penalty_scale * penalty_schedule(i).
  double penalty_scale = 1.0;
  // Optional projection onto the constraint set, applied after every step.
  std::function<void(FilterBank&)> projection;

  void validate() const;
  bool has_target(int c) const;
};

struct ObjectiveValue {
  double value = 0.0;
  double fit = 0.0;
  double norm = 0.0;
  double barrier = 0.0;
  double synthesis_penalty = 0.0;
  // Set when p_H <= 0 somewhere while gamma > 0; value is +inf and the
  // gradients are not meaningful.
  bool barrier_violated = false;
  std::vector<double> gradient;            // like analysis taps
  std::vector<double> synthesis_gradient;  // like synthesis taps, co-design only
};

// f + R and its analytic gradient with respect to the analysis taps.
ObjectiveValue objective(const FilterBank& bank, const DesignSpec& spec);

// f + R + lambda sum_w ||G(w) H(w) - I||_F^2 with gradients for both banks.
// The synthesis bank must have the same channels and s; any origin.
ObjectiveValue codesign_objective(const FilterBank& analysis, const FilterBank& synthesis,
                                  const DesignSpec& spec, double lambda);

// Adam moment constants.
struct AdamSettings {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct DesignResult {
  FilterBank bank;
  std::vector<double> history;  // objective after every iteration
  int restarts = 0;             // barrier-infeasible initialisations discarded
  int backtracks = 0;           // Adam steps shortened to stay feasible
};

// Initial bank for a spec: inverse DFT of sqrt(D_c) cropped to the central
// n x n taps (channels without a target fall back to random), or seeded
// normal taps.
FilterBank initial_bank(const DesignSpec& spec, InitStrategy strategy, double random_scale,
                        std::uint64_t seed);

DesignResult design(const DesignSpec& spec, std::optional<FilterBank> init = std::nullopt,
                    const AdamSettings& adam = {});

struct CodesignResult {
  FilterBank analysis;
  FilterBank synthesis;
  std::vector<double> history;
  double adam_residual = 0.0;  // max_w ||G H - I||_F^2 after the Adam run
  double residual = 0.0;       // same, after the least-squares refit of G
  int check_grid = 0;          // grid the residuals are measured on
  int restarts = 0;
  int backtracks = 0;
  std::optional<std::string> warning;
};

// Penalty weight at 1-based iteration i: log2(max(i, 2)).
double penalty_schedule(int iteration);

// Joint design of analysis taps and FIR synthesis taps of size synth_size,
// supported from synthesis_origin(n, synth_size).
// After the Adam run the synthesis taps are refit by linear least squares
// for the final analysis bank, and the better of the two is kept.
CodesignResult design_with_synthesis(const DesignSpec& spec, int synth_size, int check_grid = 128,
                                     std::optional<FilterBank> init = std::nullopt,
                                     const AdamSettings& adam = {});

}  // namespace trigbound::fb
