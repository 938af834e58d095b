#include "defseq/kernels.hpp"

namespace defseq::kernels {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
                 Complex* c, bool accumulate) noexcept {
  if (!accumulate) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex{};
  }
  // Explicit real arithmetic: std::complex operator* goes through the
  // Annex G NaN-recovery path, and all entries here are finite.
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const Complex* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = Complex{crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

}  // namespace defseq::kernels
