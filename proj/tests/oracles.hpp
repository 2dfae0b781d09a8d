#pragma once

// Independent reference computations for the test suites. Nothing here
// calls the FFT paths of the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "trigbound/trig_poly.hpp"

namespace oracle {

using trigbound::Complex;
using trigbound::TrigPoly;
constexpr double kPi = std::numbers::pi;

// 4.8 + sum_k a_k cos(k t) + b_k sin(k t), k = 1..8.
inline TrigPoly example_poly() {
  const double cosc[] = {0.4, 0.1, 1.5, 0.8, 0.1, 0.4, 0.3, 1.5};
  const double sinc[] = {0.4, 1.0, 2.2, 1.9, -1.0, 1.0, -0.2, -0.1};
  TrigPoly p(1, 8);
  auto c = p.coeffs();
  c[8] = 4.8;
  for (int k = 1; k <= 8; ++k) {
    c[8 + k] = Complex(cosc[k - 1], -sinc[k - 1]) / 2.0;
    c[8 - k] = Complex(cosc[k - 1], sinc[k - 1]) / 2.0;
  }
  return p;
}

// Term-by-term real evaluation of the example polynomial.
inline double example_poly_value(double t) {
  const double cosc[] = {0.4, 0.1, 1.5, 0.8, 0.1, 0.4, 0.3, 1.5};
  const double sinc[] = {0.4, 1.0, 2.2, 1.9, -1.0, 1.0, -0.2, -0.1};
  double v = 4.8;
  for (int k = 1; k <= 8; ++k) v += cosc[k - 1] * std::cos(k * t) + sinc[k - 1] * std::sin(k * t);
  return v;
}

// Dense evaluation on an M^d grid (theta = 2 pi j / M) by separable
// contraction with per-axis exponential tables.
inline std::vector<Complex> dense_values(const TrigPoly& p, int M) {
  const int d = p.dim();
  const int n = p.degree();
  const int side = 2 * n + 1;
  std::vector<Complex> table(static_cast<std::size_t>(M) * side);
  for (int j = 0; j < M; ++j) {
    for (int k = -n; k <= n; ++k) {
      const double a = 2.0 * kPi * static_cast<double>((static_cast<long long>(j) * k) % M) / M;
      table[static_cast<std::size_t>(j) * side + (k + n)] = {std::cos(a), std::sin(a)};
    }
  }
  // cur has shape M^i x side^(d-i), contracting the leading coefficient axis each step.
  std::vector<Complex> cur(p.coeffs().begin(), p.coeffs().end());
  std::size_t done = 1;
  std::size_t rest = cur.size();
  for (int axis = 0; axis < d; ++axis) {
    rest /= side;
    std::vector<Complex> next(done * M * rest);
    for (std::size_t a = 0; a < done; ++a) {
      for (int j = 0; j < M; ++j) {
        for (int k = 0; k < side; ++k) {
          const Complex e = table[static_cast<std::size_t>(j) * side + k];
          const Complex* src = &cur[(a * side + k) * rest];
          Complex* dst = &next[(a * M + j) * rest];
          for (std::size_t r = 0; r < rest; ++r) dst[r] += e * src[r];
        }
      }
    }
    cur.swap(next);
    done *= M;
  }
  return cur;
}

struct DenseExtrema {
  double max_real = -INFINITY;
  double min_real = INFINITY;
  double max_abs = 0.0;
};

inline DenseExtrema dense_extrema(const TrigPoly& p, int M) {
  DenseExtrema e;
  for (const auto& v : dense_values(p, M)) {
    e.max_real = std::max(e.max_real, v.real());
    e.min_real = std::min(e.min_real, v.real());
    e.max_abs = std::max(e.max_abs, std::abs(v));
  }
  return e;
}

// Real polynomial with Hermitian unit-normal coefficients.
inline TrigPoly random_real_poly(std::mt19937_64& rng, int d, int n, double shift = 0.0) {
  std::normal_distribution<double> normal;
  TrigPoly p(d, n);
  auto c = p.coeffs();
  const std::size_t total = c.size();
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t j = total - 1 - i;
    if (i > j) break;
    if (i == j) {
      c[i] = normal(rng) + shift;
    } else {
      c[i] = Complex(normal(rng), normal(rng));
      c[j] = std::conj(c[i]);
    }
  }
  return p;
}

inline TrigPoly random_complex_poly(std::mt19937_64& rng, int d, int n) {
  std::normal_distribution<double> normal;
  TrigPoly p(d, n);
  for (auto& c : p.coeffs()) c = Complex(normal(rng), normal(rng));
  return p;
}

// Dense Hermitian Toeplitz (d=1, order L) or BTTB (d=2, L x L blocks of
// order L) matrix with entry x_{i-j}.
inline Eigen::MatrixXcd toeplitz_matrix(const TrigPoly& gen, int L) {
  const int n = gen.degree();
  auto x = [&](int k1, int k2) -> Complex {
    if (std::abs(k1) > n || std::abs(k2) > n) return 0.0;
    if (gen.dim() == 1) return gen.coeffs()[static_cast<std::size_t>(k1 + n)];
    return gen.coeffs()[static_cast<std::size_t>(k1 + n) * (2 * n + 1) + (k2 + n)];
  };
  if (gen.dim() == 1) {
    Eigen::MatrixXcd T(L, L);
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) T(i, j) = x(i - j, 0);
    }
    return T;
  }
  Eigen::MatrixXcd T(L * L, L * L);
  for (int i1 = 0; i1 < L; ++i1) {
    for (int i2 = 0; i2 < L; ++i2) {
      for (int j1 = 0; j1 < L; ++j1) {
        for (int j2 = 0; j2 < L; ++j2) T(i1 * L + i2, j1 * L + j2) = x(i1 - j1, i2 - j2);
      }
    }
  }
  return T;
}

inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& T) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(T, Eigen::EigenvaluesOnly).eigenvalues();
}

// sup over [0, 2pi/N] of sum_k |sin(N t/2) sin((N-2n)(t-t_k)/2)| / sin^2((t-t_k)/2),
// by brute-force scan, divided by N(N-2n).
inline double sharp_constant_scan(int N, int n, int points) {
  double best = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double t = 2.0 * kPi / N * i / points;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) {
      const double u = t - 2.0 * kPi * k / N;
      const double s = std::sin(u / 2.0);
      if (std::abs(s) < 1e-9) {
        sum += static_cast<double>(N) * (N - 2 * n);
      } else {
        sum += std::abs(std::sin(N * t / 2.0) * std::sin((N - 2 * n) * u / 2.0)) / (s * s);
      }
    }
    best = std::max(best, sum);
  }
  return best / (static_cast<double>(N) * (N - 2 * n));
}

}  // namespace oracle
