#pragma once

#include <complex>
#include <cstdint>

namespace lplab::detail {

// Unnormalized c2c DFT on an n-dimensional lattice with N points per axis
// (n = 1 or 2, row-major layout for n = 2). forward uses the e^{-2pi i}
// kernel. in and out must not alias and must hold N^n elements.
// Thread-safe; plans are cached per (n, N, direction).
void dft(int n, std::int64_t N, const std::complex<double>* in,
         std::complex<double>* out, bool forward);

// Running compensated (Kahan) sum for long quadrature loops.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// |z|^p and x^p (x >= 0) with fast paths for the exponents the norm
// definitions actually use.
double pow_abs(const std::complex<double>& z, double p);
double pow_pos(double x, double p);

}  // namespace lplab::detail
