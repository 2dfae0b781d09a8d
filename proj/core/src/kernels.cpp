#include "trigbound/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "trigbound/errors.hpp"

namespace trigbound {
namespace {

// Removable singularities sit at every multiple of 2 pi. Below this value
// of |sin(t/2)| the kernels switch to their second-order expansion about
// the nearest lattice point.
constexpr double kSingularSin = 1e-6;

double reduce(double t) { return std::remainder(t, 2.0 * std::numbers::pi); }

// sum_{l=0}^{L-1} l(l+1)(2l+1)
double cubic_moment(double L) { return (L - 1.0) * L * L * (L + 1.0) / 2.0; }

}  // namespace

double dirichlet_factor(int n, double t) {
  const double e = reduce(t);
  const double half = std::sin(0.5 * e);
  const double width = 2.0 * n + 1.0;
  if (std::abs(half) < kSingularSin) {
    // D_n(e) = sum_k cos(k e) = (2n+1) - e^2 n(n+1)(2n+1)/6 + O(e^4)
    return width - e * e * n * (n + 1.0) * width / 6.0;
  }
  return std::sin(0.5 * width * e) / half;
}

double vp_factor(int n, int m, double t) {
  const double e = reduce(t);
  const double half = std::sin(0.5 * e);
  if (std::abs(half) < kSingularSin) {
    // sum_{l=n}^{m-1} D_l(e), expanded to second order.
    const double value = static_cast<double>(m) * m - static_cast<double>(n) * n;
    const double curvature = cubic_moment(m) - cubic_moment(n);
    return value - e * e * curvature / 6.0;
  }
  return std::sin(0.5 * (m + n) * e) * std::sin(0.5 * (m - n) * e) / (half * half);
}

double dirichlet_kernel(int n, std::span<const double> theta) {
  if (n < 0) throw ArgumentError("dirichlet_kernel: n must be >= 0");
  double r = 1.0;
  for (double t : theta) r *= dirichlet_factor(n, t);
  return r;
}

double vp_kernel(int n, int m, std::span<const double> theta) {
  if (n < 0) throw ArgumentError("vp_kernel: n must be >= 0");
  if (m <= n) {
    throw ArgumentError("vp_kernel: need m > n (n=" + std::to_string(n) +
                        ", m=" + std::to_string(m) + ")");
  }
  const double scale = 1.0 / (m - n);
  double r = 1.0;
  for (double t : theta) r *= scale * vp_factor(n, m, t);
  return r;
}

Complex interpolate(const SampleGrid& samples, int n, InterpolationKernel kernel,
                    std::span<const double> theta) {
  const int d = samples.dim();
  const int N = samples.grid_size();
  const int m = kernel.m;
  if (static_cast<int>(theta.size()) != d) throw ArgumentError("interpolate: dimension mismatch");
  if (n < 0) throw ArgumentError("interpolate: n must be >= 0");
  if (m <= n) throw PreconditionError("interpolate: kernel order m must exceed n");
  const bool dirichlet = kernel.kind == InterpolationKernel::Kind::kDirichlet;
  const int needed = dirichlet ? n + m + 1 : n + m;
  if (N < needed) {
    throw PreconditionError("interpolate: N=" + std::to_string(N) + " is below the " +
                            std::to_string(needed) + " samples per axis the kernel requires");
  }

  // The kernel is a tensor product, so tabulate one factor per axis and
  // grid offset.
  const double step = 2.0 * std::numbers::pi / N;
  std::vector<double> table(static_cast<std::size_t>(d) * N);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < N; ++k) {
      const double t = theta[i] - k * step;
      table[static_cast<std::size_t>(i) * N + k] =
          dirichlet ? dirichlet_factor(m, t) : vp_factor(n, m, t) / (m - n);
    }
  }

  Complex sum{};
  std::vector<int> idx(d, 0);
  for (const Complex& v : samples.values()) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) w *= table[static_cast<std::size_t>(i) * N + idx[i]];
    sum += v * w;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < N) break;
      idx[i] = 0;
    }
  }
  return sum / std::pow(static_cast<double>(N), d);
}

}  // namespace trigbound
