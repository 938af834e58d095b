#pragma once

#include <cstdint>
#include <string_view>

#include "defseq/complex_matrix.hpp"

namespace defseq {

/// SplitMix64 (identifier "splitmix64-v1"): 64-bit state advanced by the
/// golden-ratio increment, output passed through the MurmurHash3-style
/// finalizer. Streams for independent samples come from derive_seed.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64-v1";

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n) by rejection; n >= 1.
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Standard normal via Box-Muller (one output per call, the cosine branch).
  double normal() noexcept;
  /// Real and imaginary parts independent N(0, 1/2).
  Complex complex_normal() noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z) noexcept;
/// Sub-seed for (seed, index): mix64(seed + golden * (index + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// rows x cols Ginibre matrix with complex_normal entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, SplitMix64& rng);
/// Haar-distributed unitary: Q of a Ginibre QR with R's diagonal phases removed.
ComplexMatrix haar_unitary(std::size_t n, SplitMix64& rng);
/// Unit vector with complex_normal direction.
ComplexMatrix random_unit_vector(std::size_t n, SplitMix64& rng);

}  // namespace defseq
