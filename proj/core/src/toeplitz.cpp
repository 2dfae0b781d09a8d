#include "trigbound/toeplitz.hpp"

#include <string>

#include "trigbound/errors.hpp"

namespace trigbound::toeplitz {

ToeplitzSpec::ToeplitzSpec(TrigPoly gen, int matrix_order)
    : generators(std::move(gen)), order(matrix_order) {
  if (generators.dim() != 1 && generators.dim() != 2) {
    throw ArgumentError("ToeplitzSpec: only Toeplitz (dim 1) and BTTB (dim 2) are supported");
  }
  if (order < 0) throw ArgumentError("ToeplitzSpec: negative matrix order");
}

TrigPoly symbol(const ToeplitzSpec& spec) { return spec.generators; }

EigenRange eigen_range(const ToeplitzSpec& spec, int N, bounds::Constant which) {
  if (!spec.is_hermitian()) {
    throw ArgumentError("eigen_range: generators are not Hermitian (x_{-k} != conj(x_k))");
  }
  const int n = spec.degree();
  if (N < 2 * n + 1) {
    throw PreconditionError("eigen_range: need N >= 2n+1 (N=" + std::to_string(N) + ", n=" +
                            std::to_string(n) + ")");
  }
  const GridExtrema g = sample_extrema(symbol(spec), N);
  return {bounds::lower_bound_real(g, n, which), bounds::upper_bound_real(g, n, which)};
}

}  // namespace trigbound::toeplitz
