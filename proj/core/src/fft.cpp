#include "lplab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace lplab::detail {

namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft is.
// Plans are created once per (n, N, sign) with FFTW_UNALIGNED so they can
// be executed on any caller-provided buffers.
class PlanCache {
 public:
  fftw_plan get(int n, std::int64_t N, bool forward) {
    std::scoped_lock lock(mu_);
    auto key = std::make_tuple(n, N, forward);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::int64_t total = (n == 1) ? N : N * N;
    std::vector<fftw_complex> a(total), b(total);
    int sign = forward ? FFTW_FORWARD : FFTW_BACKWARD;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = (n == 1)
                      ? fftw_plan_dft_1d(static_cast<int>(N), a.data(), b.data(), sign, flags)
                      : fftw_plan_dft_2d(static_cast<int>(N), static_cast<int>(N), a.data(),
                                         b.data(), sign, flags);
    if (!p) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, std::int64_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft(int n, std::int64_t N, const std::complex<double>* in, std::complex<double>* out,
         bool forward) {
  if (n != 1 && n != 2) throw std::invalid_argument("dft: dimension must be 1 or 2");
  fftw_plan p = cache().get(n, N, forward);
  // fftw_complex and std::complex<double> are layout-compatible.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

double pow_abs(const std::complex<double>& z, double p) {
  double n2 = z.real() * z.real() + z.imag() * z.imag();
  if (p == 2.0) return n2;
  if (p == 1.0) return std::sqrt(n2);
  if (p == 0.5) return std::sqrt(std::sqrt(n2));
  if (p == 4.0) return n2 * n2;
  return std::pow(n2, 0.5 * p);
}

double pow_pos(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 0.5) return std::sqrt(x);
  if (p == 4.0) return (x * x) * (x * x);
  return std::pow(x, p);
}

}  // namespace lplab::detail
