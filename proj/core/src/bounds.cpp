#include "trigbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trigbound/errors.hpp"
#include "trigbound/kernels.hpp"

namespace trigbound::bounds {
namespace {

void require_oversampled(int N, int n, int d, const char* who) {
  if (n < 0 || d < 1) throw ArgumentError(std::string(who) + ": need n >= 0 and d >= 1");
  if (N < 2 * n + 1) {
    throw PreconditionError(std::string(who) + ": need N >= 2n+1 (N=" + std::to_string(N) +
                            ", n=" + std::to_string(n) + ")");
  }
}

void require_real(const GridExtrema& g, const char* who) {
  if (!g.is_real()) {
    throw ArgumentError(std::string(who) + ": grid is not real (max |imag| = " +
                        std::to_string(g.max_imag_abs) + ")");
  }
}

// Sum over the grid of |D_{n,N-n}(theta - theta_k)| * (N - 2n).
double vp_abs_sum(int N, int n, double theta) {
  const double step = 2.0 * std::numbers::pi / N;
  double s = 0.0;
  for (int k = 0; k < N; ++k) s += std::abs(vp_factor(n, N - n, theta - k * step));
  return s;
}

}  // namespace

const char* to_string(Constant c) { return c == Constant::kSharp ? "sharp" : "simple"; }

Constant constant_from_string(const std::string& name) {
  if (name == "sharp") return Constant::kSharp;
  if (name == "simple") return Constant::kSimple;
  throw ArgumentError("unknown constant '" + name + "' (expected sharp or simple)");
}

double cnd_simple(int N, int n, int d) {
  require_oversampled(N, n, d, "cnd_simple");
  const double alpha = 2.0 * n / N;
  return std::pow(1.0 - alpha, -0.5 * d);
}

double cnd_sharp(int N, int n, int d, const SharpOptions& options) {
  require_oversampled(N, n, d, "cnd_sharp");
  if (n == 0) return 1.0;
  const int points = std::max(options.scan_points, 8);
  const double cell = 2.0 * std::numbers::pi / N;
  const double h = cell / points;

  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i <= points; ++i) {
    const double v = vp_abs_sum(N, n, i * h);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  // Golden-section refinement on the bracket around the best scan point.
  double lo = std::max(0, best_i - 1) * h;
  double hi = std::min(points, best_i + 1) * h;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = vp_abs_sum(N, n, x1);
  double f2 = vp_abs_sum(N, n, x2);
  while (hi - lo > options.tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = vp_abs_sum(N, n, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = vp_abs_sum(N, n, x1);
    }
    best = std::max({best, f1, f2});
  }

  const double univariate = best / (static_cast<double>(N) * (N - 2 * n));
  return std::pow(std::max(univariate, 1.0), d);
}

double bound_constant(int N, int n, int d, Constant which) {
  return which == Constant::kSharp ? cnd_sharp(N, n, d) : cnd_simple(N, n, d);
}

double upper_bound_complex(const GridExtrema& grid, int n, Constant which) {
  return bound_constant(grid.grid_size, n, grid.dim, which) * grid.max_abs;
}

double upper_bound_complex(const SampleGrid& grid, int n, Constant which) {
  return upper_bound_complex(extrema(grid), n, which);
}

double upper_bound_real(const GridExtrema& grid, int n, Constant which) {
  require_real(grid, "upper_bound_real");
  const double c = bound_constant(grid.grid_size, n, grid.dim, which);
  const double A = grid.max_real;
  const double B = grid.min_real;
  return 0.5 * (A + B + c * (A - B));
}

double upper_bound_real(const SampleGrid& grid, int n, Constant which) {
  return upper_bound_real(extrema(grid), n, which);
}

double lower_bound_real(const GridExtrema& grid, int n, Constant which) {
  require_real(grid, "lower_bound_real");
  const double c = bound_constant(grid.grid_size, n, grid.dim, which);
  const double A = grid.max_real;
  const double B = grid.min_real;
  return 0.5 * (A + B - c * (A - B));
}

double lower_bound_real(const SampleGrid& grid, int n, Constant which) {
  return lower_bound_real(extrema(grid), n, which);
}

double positivity_threshold(double c) {
  if (c <= 1.0) return std::numeric_limits<double>::infinity();
  return (c + 1.0) / (c - 1.0);
}

double dynamic_range(double A, double B) {
  if (B < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (B == 0.0) return A == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return A / B;
}

BoundReport certify_positive(const GridExtrema& grid, int n, Constant which) {
  require_real(grid, "certify_positive");
  require_oversampled(grid.grid_size, n, grid.dim, "certify_positive");
  BoundReport r;
  r.N = grid.grid_size;
  r.n = n;
  r.d = grid.dim;
  r.constant = which;
  r.cnd_sharp = cnd_sharp(r.N, n, r.d);
  r.cnd_simple = cnd_simple(r.N, n, r.d);
  r.A = grid.max_real;
  r.B = grid.min_real;
  const double c = which == Constant::kSharp ? r.cnd_sharp : r.cnd_simple;
  r.upper = 0.5 * (r.A + r.B + c * (r.A - r.B));
  r.lower = 0.5 * (r.A + r.B - c * (r.A - r.B));
  r.kappa = dynamic_range(r.A, r.B);
  r.threshold_sharp = positivity_threshold(r.cnd_sharp);
  r.threshold_simple = positivity_threshold(r.cnd_simple);
  const double threshold = which == Constant::kSharp ? r.threshold_sharp : r.threshold_simple;
  r.certified_positive = r.B > 0.0 && r.kappa <= threshold;
  return r;
}

BoundReport certify_positive(const SampleGrid& grid, int n, Constant which) {
  return certify_positive(extrema(grid), n, which);
}

std::optional<double> lebesgue_constant(int N, int n, int d) {
  if (N != 2 * n + 1 || d < 1) return std::nullopt;
  const double pi = std::numbers::pi;
  return std::pow((pi + 4.0) / pi + (2.0 / pi) * std::log(2.0 * n + 1.0), d);
}

std::optional<double> ehlich_zeller_constant(int N, int n, int d) {
  if (d != 1 || N % 2 != 0 || N <= 2 * n + 1) return std::nullopt;
  const int m = N / 2;
  return 1.0 / std::cos(std::numbers::pi * n / (2.0 * m));
}

std::optional<double> wunder_boche_constant(int N, int n, int d) {
  if (d != 1 || N <= 2 * n + 1) return std::nullopt;
  return std::sqrt((N + 2.0 * n + 1.0) / (N - (2.0 * n + 1.0)));
}

std::map<std::string, PriorBound> prior_bounds(const GridExtrema& grid, int n) {
  std::map<std::string, PriorBound> out;
  const auto add = [&](const char* name, std::optional<double> c) {
    if (c) out[name] = PriorBound{*c, *c * grid.max_abs};
  };
  add("lebesgue", lebesgue_constant(grid.grid_size, n, grid.dim));
  add("ehlich_zeller", ehlich_zeller_constant(grid.grid_size, n, grid.dim));
  add("wunder_boche", wunder_boche_constant(grid.grid_size, n, grid.dim));
  return out;
}

std::map<std::string, PriorBound> prior_bounds(const SampleGrid& grid, int n) {
  return prior_bounds(extrema(grid), n);
}

}  // namespace trigbound::bounds
