#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace bfamily::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(std::size_t n) {
    const int len = static_cast<int>(n);
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_r2c_1d(len, real.data(), c, flags);
    backward = fftw_plan_dft_c2r_1d(len, c, real.data(), flags);
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

const Plans& plans_for(std::size_t n) {
  // The FFTW planner is not thread-safe; execution with new-array calls is.
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plans>(n);
  return *slot;
}

}  // namespace

void fft_forward(std::span<const double> in, std::span<std::complex<double>> out) {
  const auto& p = plans_for(in.size());
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void fft_backward(std::span<std::complex<double>> in, std::span<double> out) {
  const auto& p = plans_for(out.size());
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace bfamily::detail
