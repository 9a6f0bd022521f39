#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace diffmix::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  std::size_t n = 0;

  explicit PlanPair(std::size_t size) : n(size) {
    const int len = static_cast<int>(size);
    double* real = fftw_alloc_real(size);
    fftw_complex* cplx = fftw_alloc_complex(size / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_r2c_1d(len, real, cplx, flags);
    inverse = fftw_plan_dft_c2r_1d(len, cplx, real, flags | FFTW_DESTROY_INPUT);
    fftw_free(cplx);
    fftw_free(real);
    if (forward == nullptr || inverse == nullptr) {
      throw std::runtime_error("FFTW planning failed");
    }
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
  }
};

// FFTW's planner is not thread-safe; execution with the new-array interface is.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  return *slot;
}

}  // namespace

void rfft(std::span<const double> in, std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  if (out.size() != n / 2 + 1) throw std::invalid_argument("rfft: output size mismatch");
  const auto& p = plans_for(n);
  // r2c does not modify its input, FFTW just lacks const in the signature.
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

Spectrum rfft(std::span<const double> in) {
  Spectrum out(in.size() / 2 + 1);
  rfft(in, out);
  return out;
}

void irfft(std::span<const std::complex<double>> in, std::span<double> out) {
  const std::size_t n = out.size();
  if (in.size() != n / 2 + 1) throw std::invalid_argument("irfft: input size mismatch");
  const auto& p = plans_for(n);
  Spectrum scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
}

std::vector<double> irfft(std::span<const std::complex<double>> in, std::size_t n) {
  std::vector<double> out(n);
  irfft(in, out);
  return out;
}

}  // namespace diffmix::detail
