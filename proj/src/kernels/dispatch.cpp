#include <cstdlib>
#include <string_view>

#include "defseq/kernels.hpp"

namespace defseq::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_compiled() noexcept {
#if defined(DEFSEQ_HAVE_AVX2_KERNEL)
  return true;
#else
  return false;
#endif
}

bool avx2_supported() noexcept {
#if defined(DEFSEQ_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa select_isa() noexcept {
  const bool avx2 = avx2_compiled() && avx2_supported();
  if (const char* env = std::getenv("DEFSEQ_KERNEL")) {
    const std::string_view want{env};
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && avx2) return Isa::Avx2;
  }
  return avx2 ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa chosen = select_isa();
  return chosen;
}

#if !defined(DEFSEQ_HAVE_AVX2_KERNEL)
void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
               Complex* c, bool accumulate) noexcept {
  gemm_scalar(m, n, k, a, b, c, accumulate);
}
#endif

void gemm(Isa isa, std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c, bool accumulate) noexcept {
  if (isa == Isa::Avx2 && avx2_compiled() && avx2_supported()) {
    gemm_avx2(m, n, k, a, b, c, accumulate);
  } else {
    gemm_scalar(m, n, k, a, b, c, accumulate);
  }
}

}  // namespace defseq::kernels
