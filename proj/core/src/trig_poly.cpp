#include "trigbound/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "trigbound/errors.hpp"

namespace trigbound {
namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int positive_mod(long long k, int n) {
  long long r = k % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Folds the coefficient tensor into an N^d array, slot (k mod N) per axis.
// Aliased frequencies add up, which is exact for samples on Theta_N^d.
std::vector<Complex> fold_coefficients(const TrigPoly& p, int grid_size) {
  const int d = p.dim();
  const int n = p.degree();
  const int side = p.side();
  std::vector<Complex> out(ipow(static_cast<std::size_t>(grid_size), d));
  auto coeffs = p.coeffs();
  std::vector<int> k(d, -n);
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    std::size_t dst = 0;
    std::size_t rem = flat;
    std::size_t stride = ipow(static_cast<std::size_t>(side), d);
    for (int i = 0; i < d; ++i) {
      stride /= side;
      const int ki = static_cast<int>(rem / stride) - n;
      rem %= stride;
      dst = dst * grid_size + positive_mod(ki, grid_size);
    }
    out[dst] += coeffs[flat];
  }
  return out;
}

}  // namespace

TrigPoly::TrigPoly(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw ArgumentError("TrigPoly: dim must be >= 1");
  if (degree < 0) throw ArgumentError("TrigPoly: degree must be >= 0");
  coeffs_.assign(ipow(static_cast<std::size_t>(side()), dim), Complex{});
}

TrigPoly::TrigPoly(int dim, int degree, std::vector<Complex> coeffs) : TrigPoly(dim, degree) {
  if (coeffs.size() != coeffs_.size()) {
    throw ArgumentError("TrigPoly: expected " + std::to_string(coeffs_.size()) +
                        " coefficients, got " + std::to_string(coeffs.size()));
  }
  coeffs_ = std::move(coeffs);
}

TrigPoly TrigPoly::constant(int dim, Complex value) {
  TrigPoly p(dim, 0);
  p.coeffs_[0] = value;
  return p;
}

std::size_t TrigPoly::flat_index(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != dim_) throw ArgumentError("TrigPoly: index dimension mismatch");
  std::size_t idx = 0;
  for (int ki : k) {
    if (ki < -degree_ || ki > degree_) throw ArgumentError("TrigPoly: frequency out of range");
    idx = idx * side() + static_cast<std::size_t>(ki + degree_);
  }
  return idx;
}

bool TrigPoly::is_real(double tol) const {
  // Reversing the flat index maps k to -k.
  const std::size_t total = coeffs_.size();
  for (std::size_t i = 0; i < total; ++i) {
    if (std::abs(coeffs_[i] - std::conj(coeffs_[total - 1 - i])) > tol) return false;
  }
  return true;
}

double TrigPoly::coeff_l1() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

Complex TrigPoly::eval(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != dim_) {
    throw ArgumentError("eval: expected " + std::to_string(dim_) + " angles, got " +
                        std::to_string(theta.size()));
  }
  // Per-axis tables of exp(j k theta_i), k = -n..n.
  const int s = side();
  std::vector<Complex> phase(static_cast<std::size_t>(dim_) * s);
  for (int i = 0; i < dim_; ++i) {
    const double t = std::remainder(theta[i], 2.0 * std::numbers::pi);
    for (int k = -degree_; k <= degree_; ++k) {
      phase[static_cast<std::size_t>(i) * s + (k + degree_)] = std::polar(1.0, k * t);
    }
  }
  Complex sum{};
  std::vector<int> idx(dim_, 0);
  for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
    Complex term = coeffs_[flat];
    for (int i = 0; i < dim_; ++i) term *= phase[static_cast<std::size_t>(i) * s + idx[i]];
    sum += term;
    for (int i = dim_ - 1; i >= 0; --i) {
      if (++idx[i] < s) break;
      idx[i] = 0;
    }
  }
  return sum;
}

SampleGrid::SampleGrid(int dim, int grid_size, std::vector<Complex> values, double real_tolerance)
    : dim_(dim), grid_size_(grid_size), values_(std::move(values)) {
  if (dim < 1 || grid_size < 1) throw ArgumentError("SampleGrid: dim and N must be >= 1");
  if (values_.size() != ipow(static_cast<std::size_t>(grid_size), dim)) {
    throw ArgumentError("SampleGrid: expected N^d values");
  }
  real_tolerance_ = real_tolerance >= 0.0 ? real_tolerance : 1e-9 * std::max(max_abs(), 1e-300);
}

double SampleGrid::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampleGrid::max_real() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : values_) m = std::max(m, v.real());
  return m;
}

double SampleGrid::min_real() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : values_) m = std::min(m, v.real());
  return m;
}

double SampleGrid::max_imag_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

GridExtrema extrema(const SampleGrid& grid) {
  GridExtrema e;
  e.dim = grid.dim();
  e.grid_size = grid.grid_size();
  e.max_real = grid.max_real();
  e.min_real = grid.min_real();
  e.max_abs = grid.max_abs();
  e.max_imag_abs = grid.max_imag_abs();
  e.real_tolerance = grid.real_tolerance();
  return e;
}

double real_tolerance_for(const TrigPoly& p) { return 1e-9 * std::max(p.coeff_l1(), 1e-300); }

SampleGrid sample_uniform(const TrigPoly& p, int grid_size) {
  if (grid_size < 1) throw ArgumentError("sample_uniform: N must be >= 1");
  std::vector<Complex> values = fold_coefficients(p, grid_size);
  std::vector<int> shape(p.dim(), grid_size);
  detail::dft_inplace(values, shape, detail::DftSign::kPlus);
  return SampleGrid(p.dim(), grid_size, std::move(values), real_tolerance_for(p));
}

GridExtrema sample_extrema(const TrigPoly& p, int grid_size) {
  if (grid_size < 1) throw ArgumentError("sample_extrema: N must be >= 1");
  const int d = p.dim();
  const int N = grid_size;
  constexpr std::size_t kMaterializeLimit = std::size_t{1} << 22;
  if (d == 1 || ipow(static_cast<std::size_t>(N), d) <= kMaterializeLimit) {
    return extrema(sample_uniform(p, N));
  }

  // Axis 0 carries at most S = min(N, 2n+1) non-zero slots. Transform the
  // remaining d-1 axes for those slots, then finish axis 0 column by column.
  const std::vector<Complex> folded = fold_coefficients(p, N);
  const std::size_t slab = ipow(static_cast<std::size_t>(N), d - 1);
  std::vector<int> slots;
  for (int k = -p.degree(); k <= p.degree(); ++k) {
    const int slot = positive_mod(k, N);
    if (std::find(slots.begin(), slots.end(), slot) == slots.end()) slots.push_back(slot);
  }
  std::sort(slots.begin(), slots.end());

  std::vector<Complex> partial(slots.size() * slab);
  const std::vector<int> rest(d - 1, N);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    std::span<Complex> dst(partial.data() + s * slab, slab);
    std::copy_n(folded.begin() + static_cast<std::ptrdiff_t>(slots[s] * slab), slab, dst.begin());
    detail::dft_inplace(dst, rest, detail::DftSign::kPlus);
  }

  GridExtrema e;
  e.dim = d;
  e.grid_size = N;
  e.max_real = -std::numeric_limits<double>::infinity();
  e.min_real = std::numeric_limits<double>::infinity();
  e.real_tolerance = real_tolerance_for(p);

  constexpr std::size_t kChunk = 2048;
  std::vector<Complex> columns(kChunk * N);
  for (std::size_t start = 0; start < slab; start += kChunk) {
    const std::size_t count = std::min(kChunk, slab - start);
    std::fill(columns.begin(), columns.end(), Complex{});
    for (std::size_t c = 0; c < count; ++c) {
      for (std::size_t s = 0; s < slots.size(); ++s) {
        columns[c * N + slots[s]] = partial[s * slab + start + c];
      }
    }
    detail::dft_many_inplace(std::span(columns.data(), count * N), N, static_cast<int>(count), 1,
                             N, detail::DftSign::kPlus);
    for (std::size_t i = 0; i < count * N; ++i) {
      const Complex v = columns[i];
      e.max_real = std::max(e.max_real, v.real());
      e.min_real = std::min(e.min_real, v.real());
      e.max_abs = std::max(e.max_abs, std::abs(v));
      e.max_imag_abs = std::max(e.max_imag_abs, std::abs(v.imag()));
    }
  }
  return e;
}

TrigPoly from_samples(const SampleGrid& grid, int degree) {
  const int N = grid.grid_size();
  const int d = grid.dim();
  if (degree < 0) throw ArgumentError("from_samples: degree must be >= 0");
  if (N < 2 * degree + 1) {
    throw PreconditionError("from_samples: need N >= 2n+1 (N=" + std::to_string(N) +
                            ", n=" + std::to_string(degree) + ")");
  }
  std::vector<Complex> spectrum(grid.values().begin(), grid.values().end());
  std::vector<int> shape(d, N);
  detail::dft_inplace(spectrum, shape, detail::DftSign::kMinus);
  const double scale = 1.0 / static_cast<double>(spectrum.size());

  TrigPoly p(d, degree);
  auto coeffs = p.coeffs();
  const int side = p.side();
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    std::size_t src = 0;
    std::size_t rem = flat;
    std::size_t stride = ipow(static_cast<std::size_t>(side), d);
    for (int i = 0; i < d; ++i) {
      stride /= side;
      const int ki = static_cast<int>(rem / stride) - degree;
      rem %= stride;
      src = src * N + positive_mod(ki, N);
    }
    coeffs[flat] = spectrum[src] * scale;
  }
  return p;
}

}  // namespace trigbound
