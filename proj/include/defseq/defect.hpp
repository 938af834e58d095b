#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "defseq/complex_matrix.hpp"
#include "defseq/linalg.hpp"
#include "defseq/tuple.hpp"

namespace defseq {

// Defect operators D_n = I - P_T^n(I), defect spaces H_n = Range D_n and the
// defect dimensions Delta_n = dim H_n of a row contraction.
//
// All dimension counts come from the iterated map P_T^n(I) (cost d h^3 per
// step). Tuple powers are materialized only by rank_symmetry_check.

/// Saturating upper bounds used for reporting; values clamp at UINT64_MAX.
/// (1 + d + ... + d^{n-1}) * delta.
std::uint64_t geometric_bound(std::size_t d, std::size_t n, std::uint64_t delta);
/// sum_{k=0}^{n-1} C(k+d-1, d-1) * delta = C(n+d-1, d) * delta.
std::uint64_t binomial_bound(std::size_t d, std::size_t n, std::uint64_t delta);

/// Smallest eigenvalue of I - sum T_i T_i^*.
double min_defect_eigenvalue(const OperatorTuple& t);
/// Throws NonContractiveError when min_defect_eigenvalue < -10 * rtol.
void require_contractive(const OperatorTuple& t, const RankTolerance& tol);

ComplexMatrix defect_operator(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {});
std::size_t defect_dimension(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {});

struct DefectReport {
  std::size_t dim = 0;
  std::size_t arity = 0;
  std::vector<std::size_t> deltas;  // deltas[k] = Delta_{T^{k+1}}
  std::optional<std::size_t> stabilized_at;
  bool reached_full = false;
  bool commuting = false;
  std::vector<std::uint64_t> noncomm_bounds;
  std::vector<bool> bound_ok_noncomm;
  std::vector<std::uint64_t> comm_bounds;  // empty unless commuting
  std::vector<bool> bound_ok_comm;         // empty unless commuting
  RankTolerance tol;

  std::size_t delta(std::size_t n) const { return deltas.at(n - 1); }
};

struct DefectSequenceOptions {
  /// Stop once two consecutive dimensions agree or the full dimension is hit.
  bool early_stop = true;
};

/// Delta_{T^n} for n = 1..n_max, with bound flags. When early_stop is on the
/// last recorded entry repeats its predecessor (or equals h) and stabilized_at
/// names the first index of the constant tail.
DefectReport defect_sequence(const OperatorTuple& t, std::size_t n_max, const RankTolerance& tol = {},
                             DefectSequenceOptions options = {});

Subspace defect_space(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {});

/// H_1 v span{T_w H_1 : 1 <= |w| <= n-1}, accumulated breadth-first: each
/// round applies every T_i to the directions added in the previous round.
Subspace defect_space_via_words(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {});

/// dim span{T_w H_1 : |w| = n}.
std::size_t word_image_dimension(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {});

struct RankSymmetryVerdict {
  std::size_t n = 0;
  std::size_t rank_left = 0;   // rank(I_H - R_n R_n^*)
  std::size_t rank_right = 0;  // rank(I - R_n^* R_n) on H^{d^n}
  std::size_t ker_dim = 0;     // dim ker R_n
  std::size_t coker_dim = 0;   // dim ker R_n^*
  bool equal_ranks = false;
  bool equal_kernels = false;

  bool biconditional_holds() const noexcept { return equal_ranks == equal_kernels; }
};

/// Materializes R_n = [T_w]_{|w|=n} and compares the two defect ranks with the
/// two kernel dimensions. Throws ResourceError when h * d^n exceeds
/// limits.max_row_width.
RankSymmetryVerdict rank_symmetry_check(const OperatorTuple& t, std::size_t n, const RankTolerance& tol = {},
                                        const SizeLimits& limits = {});

struct ProductBoundsCheck {
  std::size_t delta_b = 0;
  std::size_t delta_c = 0;
  std::size_t delta_bc = 0;
  std::size_t m = 0;  // arity of B
  bool lower_ok = false;  // delta_b <= delta_bc
  bool upper_ok = false;  // delta_bc <= delta_b + m * delta_c
};

ProductBoundsCheck verify_product_bounds(const OperatorTuple& b, const OperatorTuple& c,
                                         const RankTolerance& tol = {});

}  // namespace defseq
