#pragma once

#include <cstddef>
#include <string_view>

#include "defseq/complex_matrix.hpp"

// Complex GEMM kernels. The scalar path is the reference; the AVX2/FMA path is
// compiled in a separate translation unit and chosen at runtime when the CPU
// supports it. DEFSEQ_KERNEL=scalar|avx2 in the environment overrides the choice.

namespace defseq::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the AVX2 variant was compiled into this build.
bool avx2_compiled() noexcept;
/// True when the running CPU reports AVX2 and FMA.
bool avx2_supported() noexcept;
/// The variant used by gemm(); fixed for the lifetime of the process.
Isa active_isa() noexcept;

// C (m x n) = A (m x k) * B (k x n), all row-major and contiguous.
// With accumulate set, C += A * B.
void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
                 Complex* c, bool accumulate) noexcept;
void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
               Complex* c, bool accumulate) noexcept;

void gemm(Isa isa, std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c, bool accumulate) noexcept;

inline void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
                 Complex* c, bool accumulate) noexcept {
  gemm(active_isa(), m, n, k, a, b, c, accumulate);
}

}  // namespace defseq::kernels
