#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace trigbound {

using Complex = std::complex<double>;

// A d-variate trigonometric polynomial
//
//   p(theta) = sum_{k in {-n..n}^d} c_k exp(j k . theta)
//
// with uniform component degree n. Coefficients are stored densely in
// row-major order over {-n..n}^d with k_1 varying slowest; the flat index
// of k is sum_i (k_i + n) * (2n+1)^(d-1-i).
class TrigPoly {
 public:
  TrigPoly(int dim, int degree);
  TrigPoly(int dim, int degree, std::vector<Complex> coeffs);

  static TrigPoly constant(int dim, Complex value);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  // Number of coefficients per axis, 2n+1.
  int side() const { return 2 * degree_ + 1; }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  std::size_t flat_index(std::span<const int> k) const;
  Complex coeff(std::span<const int> k) const { return coeffs_[flat_index(k)]; }
  void set_coeff(std::span<const int> k, Complex value) { coeffs_[flat_index(k)] = value; }

  // Hermitian symmetry c_k == conj(c_{-k}) within an absolute tolerance.
  bool is_real(double tol = 1e-12) const;

  // Sum of coefficient moduli; an upper bound on |p| everywhere.
  double coeff_l1() const;

  // Reference evaluation by direct summation, O((2n+1)^d).
  Complex eval(std::span<const double> theta) const;

 private:
  int dim_;
  int degree_;
  std::vector<Complex> coeffs_;
};

// Values of a polynomial on the uniform grid Theta_N^d, row-major over
// k in [N]^d; entry k holds p(2 pi k / N).
class SampleGrid {
 public:
  SampleGrid(int dim, int grid_size, std::vector<Complex> values, double real_tolerance = -1.0);

  int dim() const { return dim_; }
  int grid_size() const { return grid_size_; }
  std::span<const Complex> values() const { return values_; }

  // Imaginary parts at or below this are treated as round-off.
  double real_tolerance() const { return real_tolerance_; }

  double max_abs() const;
  double max_real() const;
  double min_real() const;
  double max_imag_abs() const;
  bool is_real() const { return max_imag_abs() <= real_tolerance_; }

 private:
  int dim_;
  int grid_size_;
  std::vector<Complex> values_;
  double real_tolerance_;
};

// Summary of a sampled grid; all the bounds need.
struct GridExtrema {
  int dim = 0;
  int grid_size = 0;
  double max_real = 0.0;     // A
  double min_real = 0.0;     // B
  double max_abs = 0.0;      // ||p||_{N^d, inf}
  double max_imag_abs = 0.0;
  double real_tolerance = 0.0;

  bool is_real() const { return max_imag_abs <= real_tolerance; }
};

GridExtrema extrema(const SampleGrid& grid);

// Tolerance for treating sampled values of p as real: 1e-9 * sum |c_k|.
double real_tolerance_for(const TrigPoly& p);

// Samples p on Theta_N^d with a zero-padded inverse-sign DFT. When
// N < 2n+1 coefficients are folded modulo N, which yields the same samples
// as direct evaluation.
SampleGrid sample_uniform(const TrigPoly& p, int grid_size);

// Same values as extrema(sample_uniform(p, N)) without materialising the
// N^d grid; memory is O((2n+1) N^(d-1)).
GridExtrema sample_extrema(const TrigPoly& p, int grid_size);

// Recovers the degree-n coefficients from N >= 2n+1 samples per axis.
TrigPoly from_samples(const SampleGrid& grid, int degree);

}  // namespace trigbound
