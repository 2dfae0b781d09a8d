#pragma once

#include <utility>

#include "trigbound/bounds.hpp"
#include "trigbound/trig_poly.hpp"

namespace trigbound::toeplitz {

// Generators of a Toeplitz (dim 1) or block-Toeplitz-with-Toeplitz-blocks
// (dim 2) matrix. Entry (i, j) of the matrix is x_{i-j}; for dim 2 the
// entry ((i1,i2),(j1,j2)) is x_{i1-j1, i2-j2}. Generators beyond the
// stored degree are zero.
struct ToeplitzSpec {
  TrigPoly generators;
  int order = 0;  // matrix order per level; informational

  ToeplitzSpec(TrigPoly gen, int matrix_order = 0);

  int dim() const { return generators.dim(); }
  int degree() const { return generators.degree(); }
  bool is_hermitian(double tol = 1e-12) const { return generators.is_real(tol); }
};

// The symbol x(theta) = sum_k x_k exp(j k theta).
TrigPoly symbol(const ToeplitzSpec& spec);

struct EigenRange {
  double lower = 0.0;
  double upper = 0.0;
};

// Encloses every eigenvalue of a Hermitian Toeplitz/BTTB matrix built from
// these generators, using N (or N^2) samples of the symbol.
EigenRange eigen_range(const ToeplitzSpec& spec, int N,
                       bounds::Constant which = bounds::Constant::kSharp);

}  // namespace trigbound::toeplitz
