#include "defseq/random.hpp"

#include <cmath>
#include <numbers>

#include "defseq/linalg.hpp"

namespace defseq {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + kGolden * (index + 1));
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t n) noexcept {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

double SplitMix64::normal() noexcept {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SplitMix64::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.entries()) z = rng.complex_normal();
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, SplitMix64& rng) {
  auto [q, r] = qr_decompose(ginibre(n, n, rng));
  for (std::size_t c = 0; c < n; ++c) {
    const Complex rcc = r(c, c);
    const double mag = std::abs(rcc);
    const Complex phase = mag > 0.0 ? rcc / mag : Complex(1.0, 0.0);
    for (std::size_t row = 0; row < n; ++row) q(row, c) *= phase;
  }
  return q;
}

ComplexMatrix random_unit_vector(std::size_t n, SplitMix64& rng) {
  ComplexMatrix v = ginibre(n, 1, rng);
  const double norm = frobenius_norm(v);
  v *= Complex(1.0 / norm, 0.0);
  return v;
}

}  // namespace defseq
