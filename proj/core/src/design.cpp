#include "trigbound/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fft.hpp"
#include "polyphase_internal.hpp"
#include "trigbound/errors.hpp"
#include "trigbound/synthesis.hpp"

namespace trigbound::fb {
namespace {

using trigbound::detail::DftSign;
using trigbound::detail::dft2_inplace;

int positive_mod(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

// adj(G) = det(G) G^{-1}; falls back to cofactors when G is (nearly)
// singular so that the p_H^2 term keeps a gradient at p_H = 0.
CMatrix adjugate(const CMatrix& G, double det, const Eigen::PartialPivLU<CMatrix>& lu) {
  const Eigen::Index M = G.rows();
  if (M == 1) return CMatrix::Ones(1, 1);
  const double mean_diag = std::abs(G.trace().real()) / static_cast<double>(M);
  const double scale = std::pow(mean_diag, static_cast<double>(M));
  if (scale > 0.0 && std::abs(det) > 1e-8 * scale) return det * lu.inverse();
  CMatrix adj(M, M);
  CMatrix minor(M - 1, M - 1);
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index j = 0; j < M; ++j) {
      for (Eigen::Index r = 0, rr = 0; r < M; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < M; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = G(r, c);
        }
        ++rr;
      }
      const Complex cof = minor.partialPivLu().determinant() * (((i + j) % 2) ? -1.0 : 1.0);
      adj(j, i) = cof;
    }
  }
  return adj;
}

void check_finite(const FilterBank& bank, const char* who) {
  if (!bank.all_finite()) throw ArgumentError(std::string(who) + ": non-finite filter taps");
}

// Shared evaluation of f + R (+ lambda * synthesis penalty when synthesis
// is given).
ObjectiveValue evaluate(const FilterBank& H, const FilterBank* G, const DesignSpec& spec,
                        double lambda) {
  check_finite(H, "objective");
  if (H.channels() != spec.channels || H.size() != spec.size || H.downsample() != spec.s) {
    throw ArgumentError("objective: bank shape does not match the design spec");
  }
  const int N = spec.grid_size;
  const int P = N * N;
  const int Nc = H.channels();
  const int M = H.cosets();
  const int L = H.size();
  const int o = H.origin();

  ObjectiveValue out;
  out.gradient.assign(H.taps().size(), 0.0);
  std::vector<Complex> buf(P);
  std::vector<Complex> z(P);

  // Magnitude-response fit, h_c(w) = sum_m h_c[m] exp(+j w.m).
  for (int c = 0; c < Nc; ++c) {
    if (!spec.has_target(c)) continue;
    const auto taps = H.filter(c);
    std::fill(buf.begin(), buf.end(), Complex{});
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        buf[static_cast<std::size_t>(positive_mod(o + i, N)) * N + positive_mod(o + j, N)] +=
            taps[static_cast<std::size_t>(i) * L + j];
      }
    }
    dft2_inplace(buf, N, DftSign::kPlus);
    const double* D = spec.desired.data() + static_cast<std::size_t>(c) * P;
    const double* W = spec.weights.data() + static_cast<std::size_t>(c) * P;
    for (int p = 0; p < P; ++p) {
      const double diff = std::norm(buf[p]) - D[p];
      out.fit += W[p] * diff * diff;
      z[p] = 4.0 * W[p] * diff * std::conj(buf[p]);
    }
    dft2_inplace(z, N, DftSign::kPlus);
    auto grad = std::span<double>(out.gradient).subspan(static_cast<std::size_t>(c) * L * L, L * L);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        grad[static_cast<std::size_t>(i) * L + j] +=
            z[static_cast<std::size_t>(positive_mod(o + i, N)) * N + positive_mod(o + j, N)].real();
      }
    }
  }

  if (spec.alpha != 0.0) {
    const auto taps = H.taps();
    for (std::size_t k = 0; k < taps.size(); ++k) {
      out.norm += spec.alpha * taps[k] * taps[k];
      out.gradient[k] += 2.0 * spec.alpha * taps[k];
    }
  }

  const bool need_gram = spec.beta != 0.0 || spec.gamma != 0.0;
  if (!need_gram && G == nullptr) {
    out.value = out.fit + out.norm;
    return out;
  }

  const PolyphaseGrid Hgrid = detail::polyphase_grid_unchecked(H, N);
  PolyphaseGrid ZH(Nc, M, N);  // dL = Re sum conj(ZH) dH

  if (need_gram) {
    for (int p = 0; p < P; ++p) {
      const auto Hm = Hgrid.matrix(p);
      const CMatrix Gm = Hm.adjoint() * Hm;
      const Eigen::PartialPivLU<CMatrix> lu(Gm);
      const double det = lu.determinant().real();
      if (spec.gamma > 0.0 && !(det > 0.0)) {
        out.barrier_violated = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
      }
      double w = 2.0 * spec.beta * det;
      out.barrier += spec.beta * det * det;
      if (spec.gamma > 0.0) {
        out.barrier -= spec.gamma * std::log(det);
        w -= spec.gamma / det;
      }
      // d p_H = 2 Re sum conj(H adj(G)) dH
      ZH.matrix(p) += (2.0 * w) * (Hm * adjugate(Gm, det, lu));
    }
  }

  PolyphaseGrid ZG(M, Nc, N);
  if (G != nullptr) {
    const PolyphaseGrid Ggrid = detail::synthesis_polyphase_grid(*G, N);
    const CMatrix I = CMatrix::Identity(M, M);
    for (int p = 0; p < P; ++p) {
      const auto Hm = Hgrid.matrix(p);
      const auto Gm = Ggrid.matrix(p);
      const CMatrix E = Gm * Hm - I;
      out.synthesis_penalty += E.squaredNorm();
      ZH.matrix(p) += (2.0 * lambda) * (Gm.adjoint() * E);
      ZG.matrix(p) = (2.0 * lambda) * (E * Hm.adjoint());
    }
  }

  const auto cosets = coset_vectors(H.downsample());
  for (int c = 0; c < Nc; ++c) {
    auto grad = std::span<double>(out.gradient).subspan(static_cast<std::size_t>(c) * L * L, L * L);
    for (int v = 0; v < M; ++v) {
      for (int p = 0; p < P; ++p) z[p] = ZH.matrix(p)(c, v);
      detail::coset_adjoint(z, H, c, cosets[v], detail::Role::kAnalysis, N, grad);
    }
  }

  if (G != nullptr) {
    const int Lg = G->size();
    out.synthesis_gradient.assign(G->taps().size(), 0.0);
    for (int c = 0; c < Nc; ++c) {
      auto grad = std::span<double>(out.synthesis_gradient)
                      .subspan(static_cast<std::size_t>(c) * Lg * Lg, Lg * Lg);
      for (int u = 0; u < M; ++u) {
        for (int p = 0; p < P; ++p) z[p] = ZG.matrix(p)(u, c);
        detail::coset_adjoint(z, *G, c, cosets[u], detail::Role::kSynthesis, N, grad);
      }
    }
  }

  out.value = out.fit + out.norm + out.barrier + lambda * out.synthesis_penalty;
  return out;
}

struct AdamOutcome {
  std::vector<double> history;
  int backtracks = 0;
};

// Adam on a flat parameter vector. `eval(x, t)` returns the objective at
// x for 1-based iteration t; `project` maps x onto the constraint set.
template <class Eval, class Project>
AdamOutcome run_adam(std::vector<double>& x, ObjectiveValue current, int iters, double lr,
                     const AdamSettings& adam, Eval&& eval, Project&& project) {
  AdamOutcome outcome;
  outcome.history.reserve(iters);
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0), v(n, 0.0), step(n), trial(n);
  auto grad_of = [](const ObjectiveValue& ov, std::size_t k) {
    return k < ov.gradient.size() ? ov.gradient[k] : ov.synthesis_gradient[k - ov.gradient.size()];
  };
  for (int t = 1; t <= iters; ++t) {
    const double c1 = 1.0 - std::pow(adam.beta1, t);
    const double c2 = 1.0 - std::pow(adam.beta2, t);
    for (std::size_t k = 0; k < n; ++k) {
      const double g = grad_of(current, k);
      m[k] = adam.beta1 * m[k] + (1.0 - adam.beta1) * g;
      v[k] = adam.beta2 * v[k] + (1.0 - adam.beta2) * g * g;
      step[k] = lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + adam.epsilon);
    }
    ObjectiveValue next;
    double shrink = 1.0;
    for (int attempt = 0;; ++attempt) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = x[k] - shrink * step[k];
      project(trial);
      next = eval(trial, t);
      if (!next.barrier_violated) break;
      if (attempt == 40) {
        throw NumericalError("design: no barrier-feasible step at iteration " + std::to_string(t));
      }
      shrink *= 0.5;
      ++outcome.backtracks;
    }
    x.swap(trial);
    current = std::move(next);
    outcome.history.push_back(current.value);
  }
  return outcome;
}

void copy_into(FilterBank& bank, std::span<const double> x, std::size_t offset = 0) {
  auto taps = bank.taps();
  std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(offset), taps.size(), taps.begin());
}

}  // namespace

const char* to_string(InitStrategy s) { return s == InitStrategy::kIdft ? "idft" : "random"; }

InitStrategy init_from_string(const std::string& name) {
  if (name == "idft") return InitStrategy::kIdft;
  if (name == "random") return InitStrategy::kRandom;
  throw ArgumentError("unknown init strategy '" + name + "' (expected idft or random)");
}

void DesignSpec::validate() const {
  if (channels < 1 || size < 1 || s < 1) throw ArgumentError("DesignSpec: channels, size, s >= 1");
  if (channels < s * s) {
    throw ArgumentError("DesignSpec: need channels >= s^2 for perfect reconstruction");
  }
  if (grid_size < 1) throw ArgumentError("DesignSpec: grid size must be >= 1");
  const std::size_t plane = static_cast<std::size_t>(grid_size) * grid_size;
  if (desired.size() != channels * plane || weights.size() != channels * plane) {
    throw ArgumentError("DesignSpec: desired and weights need channels * N * N values");
  }
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || !(penalty_scale >= 0.0)) {
    throw ArgumentError("DesignSpec: alpha, beta, gamma, penalty_scale must be non-negative");
  }
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); })) {
    throw ArgumentError("DesignSpec: weights must be non-negative");
  }
  if (iters < 0 || !(learning_rate > 0.0)) throw ArgumentError("DesignSpec: bad iters or lr");
}

bool DesignSpec::has_target(int c) const {
  const std::size_t plane = static_cast<std::size_t>(grid_size) * grid_size;
  const auto begin = weights.begin() + static_cast<std::ptrdiff_t>(c * plane);
  return std::any_of(begin, begin + static_cast<std::ptrdiff_t>(plane),
                     [](double w) { return w != 0.0; });
}

ObjectiveValue objective(const FilterBank& bank, const DesignSpec& spec) {
  return evaluate(bank, nullptr, spec, 0.0);
}

ObjectiveValue codesign_objective(const FilterBank& analysis, const FilterBank& synthesis,
                                  const DesignSpec& spec, double lambda) {
  if (synthesis.channels() != analysis.channels() ||
      synthesis.downsample() != analysis.downsample()) {
    throw ArgumentError("codesign_objective: synthesis bank must match channels and s");
  }
  check_finite(synthesis, "codesign_objective");
  return evaluate(analysis, &synthesis, spec, lambda);
}

FilterBank initial_bank(const DesignSpec& spec, InitStrategy strategy, double random_scale,
                        std::uint64_t seed) {
  const int n = spec.size;
  const int N = spec.grid_size;
  const double sigma = random_scale > 0.0 ? random_scale : 1.0 / n;
  FilterBank bank(spec.channels, n, spec.s);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<Complex> buf(static_cast<std::size_t>(N) * N);
  const int half = n / 2;
  for (int c = 0; c < spec.channels; ++c) {
    auto taps = bank.filter(c);
    if (strategy == InitStrategy::kIdft && spec.has_target(c)) {
      const double* D = spec.desired.data() + static_cast<std::size_t>(c) * N * N;
      for (std::size_t p = 0; p < buf.size(); ++p) buf[p] = std::sqrt(std::max(D[p], 0.0));
      // h[m] = N^-2 sum_w H(w) exp(-j w.m) for the exp(+j w.m) response convention.
      dft2_inplace(buf, N, DftSign::kMinus);
      const double scale = 1.0 / (static_cast<double>(N) * N);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const int a = positive_mod(i - half, N);
          const int b = positive_mod(j - half, N);
          taps[static_cast<std::size_t>(i) * n + j] = buf[static_cast<std::size_t>(a) * N + b].real() * scale;
        }
      }
    } else {
      for (double& t : taps) t = normal(rng);
    }
  }
  return bank;
}

namespace {

// Initial bank with p_H > 0 on the grid. An infeasible start is perturbed
// by seeded normal noise whose scale doubles on every retry (5 at most);
// for the random strategy this is a rescaled random restart.
template <class Eval>
FilterBank feasible_start(const DesignSpec& spec, std::optional<FilterBank> init, int& restarts,
                          Eval&& eval) {
  const double scale = spec.init_scale > 0.0 ? spec.init_scale : 1.0 / spec.size;
  const FilterBank base = init ? std::move(*init) : initial_bank(spec, spec.init, scale, spec.seed);
  const bool random_base = !init && spec.init == InitStrategy::kRandom;
  FilterBank bank = base;
  if (spec.projection) spec.projection(bank);
  restarts = 0;
  while (eval(bank).barrier_violated) {
    if (restarts == 5) {
      throw NumericalError("design: p_H vanishes on the grid for every initialisation tried");
    }
    ++restarts;
    const double sigma = scale * std::pow(2.0, restarts) * (random_base ? 1.0 : 0.01);
    const FilterBank noise = initial_bank(spec, InitStrategy::kRandom, sigma, spec.seed + restarts);
    bank = base;
    auto taps = bank.taps();
    for (std::size_t k = 0; k < taps.size(); ++k) {
      taps[k] = (random_base ? 0.0 : taps[k]) + noise.taps()[k];
    }
    if (spec.projection) spec.projection(bank);
  }
  return bank;
}

}  // namespace

double penalty_schedule(int iteration) { return std::log2(static_cast<double>(std::max(iteration, 2))); }

DesignResult design(const DesignSpec& spec, std::optional<FilterBank> init, const AdamSettings& adam) {
  spec.validate();
  int restarts = 0;
  FilterBank bank = feasible_start(spec, std::move(init), restarts, [&](const FilterBank& b) {
    return objective(b, spec);
  });
  ObjectiveValue current = objective(bank, spec);
  std::vector<double> x(bank.taps().begin(), bank.taps().end());
  FilterBank work = bank;
  auto eval = [&](const std::vector<double>& params, int) {
    copy_into(work, params);
    return objective(work, spec);
  };
  auto project = [&](std::vector<double>& params) {
    if (!spec.projection) return;
    copy_into(work, params);
    spec.projection(work);
    std::copy(work.taps().begin(), work.taps().end(), params.begin());
  };
  AdamOutcome outcome =
      run_adam(x, std::move(current), spec.iters, spec.learning_rate, adam, eval, project);
  copy_into(bank, x);
  return DesignResult{std::move(bank), std::move(outcome.history), restarts, outcome.backtracks};
}

CodesignResult design_with_synthesis(const DesignSpec& spec, int synth_size, int check_grid,
                                     std::optional<FilterBank> init, const AdamSettings& adam) {
  spec.validate();
  if (synth_size < 1) throw ArgumentError("design_with_synthesis: synth_size must be >= 1");
  FilterBank synthesis(spec.channels, synth_size, spec.s,
                       synthesis_origin(spec.size, synth_size));
  int restarts = 0;
  FilterBank analysis = feasible_start(spec, std::move(init), restarts, [&](const FilterBank& b) {
    return codesign_objective(b, synthesis, spec, spec.penalty_scale * penalty_schedule(1));
  });
  ObjectiveValue current = codesign_objective(analysis, synthesis, spec, spec.penalty_scale * penalty_schedule(1));
  const std::size_t nh = analysis.taps().size();
  std::vector<double> x(analysis.taps().begin(), analysis.taps().end());
  x.insert(x.end(), synthesis.taps().begin(), synthesis.taps().end());
  FilterBank work_h = analysis;
  FilterBank work_g = synthesis;
  auto eval = [&](const std::vector<double>& params, int t) {
    copy_into(work_h, params);
    copy_into(work_g, params, nh);
    return codesign_objective(work_h, work_g, spec, spec.penalty_scale * penalty_schedule(t));
  };
  auto project = [&](std::vector<double>& params) {
    if (!spec.projection) return;
    copy_into(work_h, params);
    spec.projection(work_h);
    std::copy(work_h.taps().begin(), work_h.taps().end(), params.begin());
  };
  AdamOutcome outcome =
      run_adam(x, std::move(current), spec.iters, spec.learning_rate, adam, eval, project);
  copy_into(analysis, x);
  copy_into(synthesis, x, nh);

  CodesignResult result{analysis, synthesis, std::move(outcome.history), 0.0, 0.0, 0, 0, 0, std::nullopt};
  result.check_grid = check_grid;
  result.restarts = restarts;
  result.backtracks = outcome.backtracks;
  result.adam_residual = synthesis_residual(analysis, synthesis, check_grid);
  result.residual = result.adam_residual;

  FilterBank refit = least_squares_synthesis(analysis, synth_size, spec.grid_size);
  const double refit_residual = synthesis_residual(analysis, refit, check_grid);
  if (refit_residual < result.residual) {
    result.synthesis = std::move(refit);
    result.residual = refit_residual;
  }
  if (!(result.residual < 1e-7)) {
    result.warning = "synthesis residual " + std::to_string(result.residual) +
                     " exceeds 1e-7 on the check grid";
  }
  return result;
}

}  // namespace trigbound::fb
