#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "trigbound/bounds.hpp"
#include "trigbound/trig_poly.hpp"

namespace trigbound::fb {

// N_c real square 2D FIR filters with downsampling matrix M = s I_2.
// Filter c has taps h_c[k1, k2] for k in [origin, origin + size)^2, stored
// row-major (k1 slowest). Analysis banks use origin 0.
class FilterBank {
 public:
  FilterBank(int channels, int size, int s, int origin = 0);
  FilterBank(int channels, int size, int s, std::vector<double> taps, int origin = 0);

  int channels() const { return channels_; }
  int size() const { return size_; }
  int downsample() const { return s_; }
  int cosets() const { return s_ * s_; }
  int origin() const { return origin_; }

  std::span<const double> taps() const { return taps_; }
  std::span<double> taps() { return taps_; }
  std::span<const double> filter(int c) const;
  std::span<double> filter(int c);

  // Tap at absolute position (k1, k2), zero outside the support.
  double at(int c, int k1, int k2) const;
  double& ref(int c, int k1, int k2);

  bool all_finite() const;

 private:
  int channels_;
  int size_;
  int s_;
  int origin_;
  std::vector<double> taps_;
};

// Coset vectors v of M = s I_2, v in {0..s-1}^2 in lexicographic order.
std::vector<std::array<int, 2>> coset_vectors(int s);

// One polyphase component hhat^v[m] = h[s m - v] of an analysis filter.
// Non-zero entries sit at m = offset + q with q in [0, size)^2, where
// taps[q] = h[s q + r], r = (-v) mod s and offset = [v != 0] per axis.
struct PolyphaseComponent {
  std::array<int, 2> coset{};
  std::array<int, 2> offset{};
  int size = 0;
  std::vector<double> taps;

  double at(int m1, int m2) const;
};

// Components for every filter and coset, indexed [c * s^2 + v].
std::vector<PolyphaseComponent> polyphase_analysis(const FilterBank& bank);

// Maximum component degree of p_H: s^d (ceil(n/s) - 1).
int degree_bound(int n, int s, int d);

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CMatrixMap = Eigen::Map<CMatrix>;
using ConstCMatrixMap = Eigen::Map<const CMatrix>;

// The polyphase matrix H(omega) (N_c x s^2) on Theta_N^2. The matrix at
// grid point (w1, w2) is stored column-major and contiguous, with
// H[c, v](omega) = sum_m hhat_c^v[m] exp(-j omega . m).
class PolyphaseGrid {
 public:
  PolyphaseGrid(int channels, int cosets, int grid_size);

  int channels() const { return channels_; }
  int cosets() const { return cosets_; }
  int grid_size() const { return grid_size_; }
  int points() const { return grid_size_ * grid_size_; }
  int ph_degree() const { return ph_degree_; }
  void set_ph_degree(int m) { ph_degree_ = m; }

  CMatrixMap matrix(int point);
  ConstCMatrixMap matrix(int point) const;

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

 private:
  int channels_;
  int cosets_;
  int grid_size_;
  int ph_degree_ = 0;
  std::vector<Complex> data_;
};

// Samples the polyphase matrix by zero-padded DFTs. Requires
// N >= 2 * degree_bound + 1.
PolyphaseGrid polyphase_grid(const FilterBank& bank, int grid_size);

// p_H(omega) = det(H^* H) on the grid, as a real 2D SampleGrid.
SampleGrid gram_det_grid(const PolyphaseGrid& grid);

struct FrameBounds {
  double upper = 0.0;  // largest eigenvalue of H^* H over the grid
  double lower = 0.0;  // smallest
};

FrameBounds frame_bounds(const PolyphaseGrid& grid);

// Samples p_H on Theta_N^2 and runs the positivity certificate with the
// degree bound m; a certified bank is perfect reconstruction.
bounds::BoundReport certify_pr(const FilterBank& bank, int grid_size,
                               bounds::Constant which = bounds::Constant::kSharp);

}  // namespace trigbound::fb
