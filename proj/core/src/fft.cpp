#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace trigbound::detail {
namespace {

// FFTW's planner is not reentrant; execution with the new-array interface
// is. Plans are created once per geometry and kept for the process
// lifetime.
using PlanKey = std::tuple<std::vector<int>, int, int, int, int>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

int fftw_sign(DftSign sign) { return sign == DftSign::kMinus ? FFTW_FORWARD : FFTW_BACKWARD; }

// FFTW_ESTIMATE keeps the chosen algorithm (and thus round-off) identical
// from run to run.
constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

fftw_plan get_plan(const std::vector<int>& shape, int howmany, int stride, int dist, int sign) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  PlanKey key{shape, howmany, stride, dist, sign};
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  std::size_t extent = howmany == 1 ? total
                                    : static_cast<std::size_t>(howmany - 1) * dist +
                                          (total - 1) * stride + 1;
  // ESTIMATE planning does not touch the array contents.
  std::vector<std::complex<double>> scratch(extent);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_many_dft(static_cast<int>(shape.size()), shape.data(), howmany, buf,
                                      nullptr, stride, dist, buf, nullptr, stride, dist, sign,
                                      kPlanFlags);
  if (plan == nullptr) throw std::runtime_error("FFTW could not create a plan");
  cache.emplace(std::move(key), plan);
  return plan;
}

}  // namespace

void dft_inplace(std::span<std::complex<double>> data, std::span<const int> shape, DftSign sign) {
  std::vector<int> dims(shape.begin(), shape.end());
  std::size_t total = 1;
  for (int s : dims) total *= static_cast<std::size_t>(s);
  if (total != data.size()) throw std::logic_error("dft_inplace: shape does not match data");
  if (total == 0) return;
  fftw_plan plan = get_plan(dims, 1, 1, 0, fftw_sign(sign));
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

void dft_many_inplace(std::span<std::complex<double>> data, int n, int howmany, int stride,
                      int dist, DftSign sign) {
  if (howmany <= 0 || n <= 0) return;
  fftw_plan plan = get_plan({n}, howmany, stride, dist, fftw_sign(sign));
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace trigbound::detail
