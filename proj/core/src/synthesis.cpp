#include "trigbound/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "polyphase_internal.hpp"
#include "trigbound/errors.hpp"

namespace trigbound::fb {
namespace {

using trigbound::detail::DftSign;
using trigbound::detail::dft2_inplace;

int positive_mod(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FilterBank min_norm_synthesis(const FilterBank& analysis, int grid_size) {
  const int N = grid_size;
  const int s = analysis.downsample();
  const int Nc = analysis.channels();
  const int M = analysis.cosets();
  const int P = N * N;
  const PolyphaseGrid H = detail::polyphase_grid_unchecked(analysis, N);

  std::vector<double> det(P);
  double max_det = 0.0;
  for (int p = 0; p < P; ++p) {
    const auto Hm = H.matrix(p);
    det[p] = (Hm.adjoint() * Hm).partialPivLu().determinant().real();
    max_det = std::max(max_det, det[p]);
  }

  PolyphaseGrid Hd(M, Nc, N);  // (H^* H)^{-1} H^*
  for (int p = 0; p < P; ++p) {
    if (!(det[p] > 1e-12 * max_det)) {
      throw NumericalError("min_norm_synthesis: singular Gram matrix at omega = 2pi/" +
                           std::to_string(N) + " * (" + std::to_string(p / N) + ", " +
                           std::to_string(p % N) + ")");
    }
    const auto Hm = H.matrix(p);
    const CMatrix Gm = Hm.adjoint() * Hm;
    Hd.matrix(p) = Gm.partialPivLu().solve(Hm.adjoint());
  }

  // ghat^u[m] = g[s m + u]; m unwrapped to [-floor(N/2), N - floor(N/2)).
  const int half = N / 2;
  const int size = s * N;
  FilterBank out(Nc, size, s, -s * half);
  const auto cosets = coset_vectors(s);
  std::vector<Complex> z(P);
  const double scale = 1.0 / P;
  for (int c = 0; c < Nc; ++c) {
    for (int u = 0; u < M; ++u) {
      for (int p = 0; p < P; ++p) z[p] = Hd.matrix(p)(u, c);
      dft2_inplace(z, N, DftSign::kPlus);
      for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
          const int m1 = a - half;
          const int m2 = b - half;
          const Complex val = z[static_cast<std::size_t>(positive_mod(m1, N)) * N + positive_mod(m2, N)];
          out.ref(c, s * m1 + cosets[u][0], s * m2 + cosets[u][1]) = val.real() * scale;
        }
      }
    }
  }
  return out;
}

int synthesis_origin(int analysis_size, int synth_size) {
  return -((analysis_size + synth_size - 2) / 2);
}

FilterBank least_squares_synthesis(const FilterBank& analysis, int synth_size, int grid_size) {
  return least_squares_synthesis(analysis, synth_size, grid_size,
                                 synthesis_origin(analysis.size(), synth_size));
}

FilterBank least_squares_synthesis(const FilterBank& analysis, int synth_size, int grid_size,
                                   int origin) {
  const int N = grid_size;
  const int P = N * N;
  const int s = analysis.downsample();
  const int Nc = analysis.channels();
  const int M = analysis.cosets();
  const int L = synth_size;
  if (L < 1) throw ArgumentError("least_squares_synthesis: synth_size must be >= 1");
  const PolyphaseGrid H = detail::polyphase_grid_unchecked(analysis, N);

  // T[c][c'](delta) = sum_w sum_v conj(H[c,v]) H[c',v] exp(+j w.delta); the normal
  // matrix entry for unknowns (c, q), (c', q') is Re T[c][c'](q - q').
  std::vector<std::vector<Complex>> T(static_cast<std::size_t>(Nc) * Nc,
                                      std::vector<Complex>(P));
  for (int c = 0; c < Nc; ++c) {
    for (int c2 = 0; c2 < Nc; ++c2) {
      auto& t = T[static_cast<std::size_t>(c) * Nc + c2];
      for (int p = 0; p < P; ++p) {
        const auto Hm = H.matrix(p);
        t[p] = Hm.row(c).dot(Hm.row(c2));
      }
      dft2_inplace(t, N, DftSign::kPlus);
    }
  }

  FilterBank out(Nc, L, s, origin);
  const auto cosets = coset_vectors(s);
  std::vector<Complex> z(P);
  // Taps g[s m + u] inside [origin, origin + L) have m in [lo, lo + count).
  auto ceil_div = [](int a, int b) { return a >= 0 ? (a + b - 1) / b : -(-a / b); };
  auto range = [&](int u, int& lo) {
    lo = ceil_div(origin - u, s);
    return ceil_div(origin + L - u, s) - lo;
  };
  for (int u = 0; u < M; ++u) {
    int lo1 = 0;
    int lo2 = 0;
    const int q1n = range(cosets[u][0], lo1);
    const int q2n = range(cosets[u][1], lo2);
    if (q1n <= 0 || q2n <= 0) continue;
    if (q1n > N || q2n > N) {
      throw PreconditionError("least_squares_synthesis: grid too small for the synthesis support");
    }
    const int per = q1n * q2n;
    const int unknowns = Nc * per;
    Eigen::MatrixXd A(unknowns, unknowns);
    Eigen::VectorXd rhs(unknowns);
    for (int c = 0; c < Nc; ++c) {
      // rhs[(c, q)] = Re sum_w conj(H[c,u](w)) exp(+j w.q)
      for (int p = 0; p < P; ++p) z[p] = std::conj(H.matrix(p)(c, u));
      dft2_inplace(z, N, DftSign::kPlus);
      for (int a = 0; a < q1n; ++a) {
        for (int b = 0; b < q2n; ++b) {
          rhs(c * per + a * q2n + b) =
              z[static_cast<std::size_t>(positive_mod(lo1 + a, N)) * N + positive_mod(lo2 + b, N)].real();
        }
      }
      for (int c2 = 0; c2 < Nc; ++c2) {
        const auto& t = T[static_cast<std::size_t>(c) * Nc + c2];
        for (int a = 0; a < q1n; ++a) {
          for (int b = 0; b < q2n; ++b) {
            for (int a2 = 0; a2 < q1n; ++a2) {
              for (int b2 = 0; b2 < q2n; ++b2) {
                const int d1 = positive_mod(a - a2, N);
                const int d2 = positive_mod(b - b2, N);
                A(c * per + a * q2n + b, c2 * per + a2 * q2n + b2) =
                    t[static_cast<std::size_t>(d1) * N + d2].real();
              }
            }
          }
        }
      }
    }
    const Eigen::VectorXd x = A.ldlt().solve(rhs);
    for (int c = 0; c < Nc; ++c) {
      for (int a = 0; a < q1n; ++a) {
        for (int b = 0; b < q2n; ++b) {
          out.ref(c, s * (lo1 + a) + cosets[u][0], s * (lo2 + b) + cosets[u][1]) =
              x(c * per + a * q2n + b);
        }
      }
    }
  }
  return out;
}

double synthesis_residual(const FilterBank& analysis, const FilterBank& synthesis, int grid_size) {
  if (synthesis.channels() != analysis.channels() ||
      synthesis.downsample() != analysis.downsample()) {
    throw ArgumentError("synthesis_residual: banks differ in channels or s");
  }
  const PolyphaseGrid H = detail::polyphase_grid_unchecked(analysis, grid_size);
  const PolyphaseGrid G = detail::synthesis_polyphase_grid(synthesis, grid_size);
  const CMatrix I = CMatrix::Identity(analysis.cosets(), analysis.cosets());
  double worst = 0.0;
  for (int p = 0; p < H.points(); ++p) {
    worst = std::max(worst, (G.matrix(p) * H.matrix(p) - I).squaredNorm());
  }
  return worst;
}

}  // namespace trigbound::fb
