#pragma once

#include <span>

#include "trigbound/trig_poly.hpp"

namespace trigbound {

// Univariate Dirichlet kernel D_n(t) = sin((2n+1)t/2) / sin(t/2).
double dirichlet_factor(int n, double t);

// Univariate un-normalised de la Vallee-Poussin factor
//   sin((m+n)t/2) sin((m-n)t/2) / sin^2(t/2) = sum_{l=n}^{m-1} D_l(t).
double vp_factor(int n, int m, double t);

// Tensor-product Dirichlet kernel D_n^d(theta), d = theta.size().
double dirichlet_kernel(int n, std::span<const double> theta);

// Tensor-product de la Vallee-Poussin kernel D_{n,m}^d(theta); requires m > n.
double vp_kernel(int n, int m, std::span<const double> theta);

// Fejer kernel, the n = 0 case of vp_kernel.
inline double fejer_kernel(int m, std::span<const double> theta) { return vp_kernel(0, m, theta); }

struct InterpolationKernel {
  enum class Kind { kDirichlet, kValleePoussin };
  Kind kind = Kind::kValleePoussin;
  int m = 0;

  static InterpolationKernel dirichlet(int m) { return {Kind::kDirichlet, m}; }
  static InterpolationKernel vallee_poussin(int m) { return {Kind::kValleePoussin, m}; }
};

// Periodic interpolation N^-d sum_k p(theta_k) K(theta - theta_k) of a
// polynomial of degree n from its samples. Exact for p in T_n^d when m > n
// and the grid is large enough for the kernel: N >= n + m for the
// de la Vallee-Poussin kernel, N >= n + m + 1 for the Dirichlet kernel D_m.
Complex interpolate(const SampleGrid& samples, int n, InterpolationKernel kernel,
                    std::span<const double> theta);

}  // namespace trigbound
