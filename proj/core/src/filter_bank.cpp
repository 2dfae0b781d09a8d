#include "trigbound/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "polyphase_internal.hpp"
#include "trigbound/errors.hpp"

namespace trigbound::fb {

FilterBank::FilterBank(int channels, int size, int s, int origin)
    : channels_(channels), size_(size), s_(s), origin_(origin) {
  if (channels < 1 || size < 1 || s < 1) {
    throw ArgumentError("FilterBank: channels, size and s must be >= 1");
  }
  taps_.assign(static_cast<std::size_t>(channels) * size * size, 0.0);
}

FilterBank::FilterBank(int channels, int size, int s, std::vector<double> taps, int origin)
    : FilterBank(channels, size, s, origin) {
  if (taps.size() != taps_.size()) {
    throw ArgumentError("FilterBank: expected " + std::to_string(taps_.size()) + " taps, got " +
                        std::to_string(taps.size()));
  }
  taps_ = std::move(taps);
}

std::span<const double> FilterBank::filter(int c) const {
  const std::size_t len = static_cast<std::size_t>(size_) * size_;
  return std::span<const double>(taps_).subspan(c * len, len);
}

std::span<double> FilterBank::filter(int c) {
  const std::size_t len = static_cast<std::size_t>(size_) * size_;
  return std::span<double>(taps_).subspan(c * len, len);
}

double FilterBank::at(int c, int k1, int k2) const {
  const int i = k1 - origin_;
  const int j = k2 - origin_;
  if (i < 0 || j < 0 || i >= size_ || j >= size_) return 0.0;
  return taps_[(static_cast<std::size_t>(c) * size_ + i) * size_ + j];
}

double& FilterBank::ref(int c, int k1, int k2) {
  const int i = k1 - origin_;
  const int j = k2 - origin_;
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw ArgumentError("FilterBank: tap outside support");
  return taps_[(static_cast<std::size_t>(c) * size_ + i) * size_ + j];
}

bool FilterBank::all_finite() const {
  return std::all_of(taps_.begin(), taps_.end(), [](double x) { return std::isfinite(x); });
}

std::vector<std::array<int, 2>> coset_vectors(int s) {
  std::vector<std::array<int, 2>> out;
  out.reserve(static_cast<std::size_t>(s) * s);
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) out.push_back({a, b});
  }
  return out;
}

double PolyphaseComponent::at(int m1, int m2) const {
  const int q1 = m1 - offset[0];
  const int q2 = m2 - offset[1];
  if (q1 < 0 || q2 < 0 || q1 >= size || q2 >= size) return 0.0;
  return taps[static_cast<std::size_t>(q1) * size + q2];
}

std::vector<PolyphaseComponent> polyphase_analysis(const FilterBank& bank) {
  const int s = bank.downsample();
  const int q = (bank.size() + s - 1) / s;
  std::vector<PolyphaseComponent> out;
  const auto cosets = coset_vectors(s);
  out.reserve(static_cast<std::size_t>(bank.channels()) * cosets.size());
  for (int c = 0; c < bank.channels(); ++c) {
    for (const auto& v : cosets) {
      PolyphaseComponent comp;
      comp.coset = v;
      comp.size = q;
      comp.taps.assign(static_cast<std::size_t>(q) * q, 0.0);
      std::array<int, 2> r{};
      for (int a = 0; a < 2; ++a) {
        r[a] = (s - v[a]) % s;
        comp.offset[a] = v[a] == 0 ? 0 : 1;
      }
      for (int q1 = 0; q1 < q; ++q1) {
        for (int q2 = 0; q2 < q; ++q2) {
          comp.taps[static_cast<std::size_t>(q1) * q + q2] =
              bank.at(c, s * q1 + r[0], s * q2 + r[1]);
        }
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

int degree_bound(int n, int s, int d) {
  if (n < 1 || s < 1 || d < 1) throw ArgumentError("degree_bound: n, s, d must be >= 1");
  int sd = 1;
  for (int i = 0; i < d; ++i) sd *= s;
  return sd * ((n + s - 1) / s - 1);
}

PolyphaseGrid::PolyphaseGrid(int channels, int cosets, int grid_size)
    : channels_(channels), cosets_(cosets), grid_size_(grid_size) {
  data_.assign(static_cast<std::size_t>(channels) * cosets * grid_size * grid_size, Complex{});
}

CMatrixMap PolyphaseGrid::matrix(int point) {
  return CMatrixMap(data_.data() + static_cast<std::size_t>(point) * channels_ * cosets_,
                    channels_, cosets_);
}

ConstCMatrixMap PolyphaseGrid::matrix(int point) const {
  return ConstCMatrixMap(data_.data() + static_cast<std::size_t>(point) * channels_ * cosets_,
                         channels_, cosets_);
}

namespace detail {
namespace {

int positive_mod(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

// Polyphase index m of tap k along one axis, or false when the tap belongs
// to another coset.
bool coset_index(int k, int v, int s, Role role, int& m) {
  const int shifted = role == Role::kAnalysis ? k + v : k - v;
  if (positive_mod(shifted, s) != 0) return false;
  m = shifted / s;
  return true;
}

}  // namespace

void coset_spectrum(const FilterBank& bank, int c, std::array<int, 2> v, Role role, int N,
                    std::span<Complex> out) {
  std::fill(out.begin(), out.end(), Complex{});
  const int s = bank.downsample();
  const int o = bank.origin();
  const int L = bank.size();
  const auto taps = bank.filter(c);
  for (int i = 0; i < L; ++i) {
    int m1 = 0;
    if (!coset_index(o + i, v[0], s, role, m1)) continue;
    for (int j = 0; j < L; ++j) {
      int m2 = 0;
      if (!coset_index(o + j, v[1], s, role, m2)) continue;
      out[static_cast<std::size_t>(positive_mod(m1, N)) * N + positive_mod(m2, N)] +=
          taps[static_cast<std::size_t>(i) * L + j];
    }
  }
  trigbound::detail::dft2_inplace(out, N, trigbound::detail::DftSign::kMinus);
}

void coset_adjoint(std::span<Complex> z, const FilterBank& bank, int c, std::array<int, 2> v,
                   Role role, int N, std::span<double> grad) {
  trigbound::detail::dft2_inplace(z, N, trigbound::detail::DftSign::kPlus);
  const int s = bank.downsample();
  const int o = bank.origin();
  const int L = bank.size();
  (void)c;
  for (int i = 0; i < L; ++i) {
    int m1 = 0;
    if (!coset_index(o + i, v[0], s, role, m1)) continue;
    for (int j = 0; j < L; ++j) {
      int m2 = 0;
      if (!coset_index(o + j, v[1], s, role, m2)) continue;
      grad[static_cast<std::size_t>(i) * L + j] +=
          z[static_cast<std::size_t>(positive_mod(m1, N)) * N + positive_mod(m2, N)].real();
    }
  }
}

PolyphaseGrid polyphase_grid_unchecked(const FilterBank& bank, int N) {
  const int M = bank.cosets();
  const int Nc = bank.channels();
  PolyphaseGrid grid(Nc, M, N);
  grid.set_ph_degree(degree_bound(bank.size(), bank.downsample(), 2));
  const auto cosets = coset_vectors(bank.downsample());
  std::vector<Complex> spec(static_cast<std::size_t>(N) * N);
  auto data = grid.data();
  for (int c = 0; c < Nc; ++c) {
    for (int v = 0; v < M; ++v) {
      coset_spectrum(bank, c, cosets[v], Role::kAnalysis, N, spec);
      for (int p = 0; p < N * N; ++p) {
        data[static_cast<std::size_t>(p) * Nc * M + static_cast<std::size_t>(v) * Nc + c] = spec[p];
      }
    }
  }
  return grid;
}

PolyphaseGrid synthesis_polyphase_grid(const FilterBank& bank, int N) {
  const int M = bank.cosets();
  const int Nc = bank.channels();
  PolyphaseGrid grid(M, Nc, N);
  const auto cosets = coset_vectors(bank.downsample());
  std::vector<Complex> spec(static_cast<std::size_t>(N) * N);
  auto data = grid.data();
  for (int c = 0; c < Nc; ++c) {
    for (int u = 0; u < M; ++u) {
      coset_spectrum(bank, c, cosets[u], Role::kSynthesis, N, spec);
      for (int p = 0; p < N * N; ++p) {
        data[static_cast<std::size_t>(p) * Nc * M + static_cast<std::size_t>(c) * M + u] = spec[p];
      }
    }
  }
  return grid;
}

}  // namespace detail

PolyphaseGrid polyphase_grid(const FilterBank& bank, int grid_size) {
  const int m = degree_bound(bank.size(), bank.downsample(), 2);
  if (grid_size < 2 * m + 1) {
    throw PreconditionError("polyphase_grid: need N >= 2m+1 = " + std::to_string(2 * m + 1) +
                            " for p_H of degree m=" + std::to_string(m));
  }
  return detail::polyphase_grid_unchecked(bank, grid_size);
}

SampleGrid gram_det_grid(const PolyphaseGrid& grid) {
  const int P = grid.points();
  std::vector<Complex> values(P);
  for (int p = 0; p < P; ++p) {
    const auto H = grid.matrix(p);
    const CMatrix G = H.adjoint() * H;
    values[p] = Complex(G.partialPivLu().determinant().real(), 0.0);
  }
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v.real()));
  return SampleGrid(2, grid.grid_size(), std::move(values), 1e-9 * std::max(scale, 1e-300));
}

FrameBounds frame_bounds(const PolyphaseGrid& grid) {
  FrameBounds fbounds{0.0, std::numeric_limits<double>::infinity()};
  for (int p = 0; p < grid.points(); ++p) {
    const auto H = grid.matrix(p);
    const CMatrix G = H.adjoint() * H;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(G, Eigen::EigenvaluesOnly);
    fbounds.upper = std::max(fbounds.upper, eig.eigenvalues().maxCoeff());
    fbounds.lower = std::min(fbounds.lower, eig.eigenvalues().minCoeff());
  }
  return fbounds;
}

bounds::BoundReport certify_pr(const FilterBank& bank, int grid_size, bounds::Constant which) {
  const int m = degree_bound(bank.size(), bank.downsample(), 2);
  const SampleGrid ph = gram_det_grid(polyphase_grid(bank, grid_size));
  return bounds::certify_positive(ph, m, which);
}

}  // namespace trigbound::fb
