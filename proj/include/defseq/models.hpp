#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "defseq/complex_matrix.hpp"
#include "defseq/linalg.hpp"
#include "defseq/tuple.hpp"

namespace defseq {

// Truncated Fock models. Creation and shift operators annihilate the top level
// L, so I - sum V_i V_i^* is exactly the vacuum projection and Delta_{V^n}
// equals its untruncated value for n <= L.
//
// Full Fock basis: by level, then lexicographic word. index(w) =
// offset(|w|) + sum_j w_j d^{|w|-1-j} with offset(k) = 1 + d + ... + d^{k-1}.
//
// Symmetric Fock basis: by degree, then exponent vectors in descending
// lexicographic order, which is the lexicographic order of the associated
// non-decreasing words (alpha = (2,0) <-> (1,1) comes before (1,1) <-> (1,2)).

/// 1 + d + ... + d^L. Throws ResourceError above limits.max_model_dim.
std::size_t fock_dimension(std::size_t d, std::size_t levels, const SizeLimits& limits = {});
/// 1 + d + ... + d^{k-1}, the index of the first level-k basis vector.
std::size_t fock_level_offset(std::size_t d, std::size_t k);
std::size_t fock_index(std::size_t d, const Word& w);

/// V_i e_w = e_{iw} for |w| < L and V_i e_w = 0 for |w| = L.
OperatorTuple fock_creation(std::size_t d, std::size_t levels, const SizeLimits& limits = {});

/// The level-k symmetrizer (1/k!) sum_pi U_pi on (C^d)^{k}, in the lexicographic word basis.
/// Requires k <= 8 and d^k <= limits.max_words.
ComplexMatrix symmetrizer(std::size_t d, std::size_t k, const SizeLimits& limits = {});
/// The permutation operator e_{i_1} .. e_{i_k} -> e_{i_pi(1)} .. e_{i_pi(k)} on level k.
ComplexMatrix permutation_operator(std::size_t d, std::span<const std::size_t> pi);

struct MultiIndex {
  std::vector<std::size_t> exponents;

  std::size_t degree() const noexcept;
  /// The non-decreasing word with exponents[i] copies of letter i.
  Word word() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// All exponent vectors of the given degree, in basis order.
std::vector<MultiIndex> monomials(std::size_t d, std::size_t degree);
/// sum_{k <= L} C(k+d-1, d-1).
std::size_t symmetric_dimension(std::size_t d, std::size_t levels, const SizeLimits& limits = {});
std::size_t symmetric_level_offset(std::size_t d, std::size_t k);

/// S_i e_alpha = sqrt((alpha_i + 1)/(|alpha| + 1)) e_{alpha + delta_i}, zero on degree L.
OperatorTuple symmetric_fock_shift(std::size_t d, std::size_t levels, const SizeLimits& limits = {});

/// Columns: the normalized symmetrized tensors P_s e_{w(alpha)} in the full
/// Fock basis, ordered like the monomial basis. An isometry onto Gamma_s.
ComplexMatrix symmetric_embedding(std::size_t d, std::size_t levels, const SizeLimits& limits = {});
/// J^H V_i J for the embedding J, built from the symmetrizer of every level.
OperatorTuple symmetric_shift_via_compression(std::size_t d, std::size_t levels, const SizeLimits& limits = {});

/// M = span of the vacuum and all words not ending in letter j (0-based).
Subspace right_creation_subspace(std::size_t d, std::size_t levels, std::size_t j);
/// compress(fock_creation(d, L), M) for the subspace above. Requires L >= 2, j < d.
OperatorTuple right_creation_compression(std::size_t d, std::size_t levels, std::size_t j,
                                         const SizeLimits& limits = {});

/// Finitely supported phi = sum lambda_w e_w on the full Fock space.
using PhiCoefficients = std::vector<std::pair<Word, Complex>>;

std::size_t phi_degree(const PhiCoefficients& phi);
/// M = (span{e_w (x) phi : |w| + deg(phi) <= L})^perp. Requires unit norm
/// within 1e-12 and no vacuum coefficient. Co-invariant for homogeneous phi.
Subspace phi_complement_subspace(std::size_t d, std::size_t levels, const PhiCoefficients& phi,
                                 const SizeLimits& limits = {});
OperatorTuple finite_phi_compression(std::size_t d, std::size_t levels, const PhiCoefficients& phi,
                                     const SizeLimits& limits = {});

/// (V_1 (+) 0, ..., V_{d-1} (+) 0, 0 (+) r) on Gamma(C^{d-1}) (+) C. Requires d >= 2, 0 < r < 1.
OperatorTuple pure_nonmaximal_example(std::size_t d, std::size_t levels, double r, const SizeLimits& limits = {});

/// Z_i = lambda_i I_k. Requires sum |lambda_i|^2 = 1 within 1e-12.
OperatorTuple scalar_spherical_tuple(std::span<const Complex> lambdas, std::size_t k);

/// V (+) S on the truncated full and symmetric Fock spaces.
OperatorTuple fock_dshift_sum(std::size_t d, std::size_t levels, const SizeLimits& limits = {});
/// S (+) Z with Z = scalar_spherical_tuple(lambdas, k).
OperatorTuple dshift_spherical_sum(std::size_t levels, std::span<const Complex> lambdas, std::size_t k,
                                   const SizeLimits& limits = {});
/// (V_i (x) I_m) on Gamma (x) C^m.
OperatorTuple fock_ampliation(std::size_t d, std::size_t levels, std::size_t m, const SizeLimits& limits = {});

/// Row matrix R = W Sigma U^H with Haar W, U; Sigma has h - defect_rank unit
/// singular values and defect_rank values uniform in [0.2, 0.9]. T_i is the
/// i-th h x h block of R, so Delta_T = defect_rank.
OperatorTuple random_contractive(std::size_t d, std::size_t h, std::size_t defect_rank, std::uint64_t seed);

/// Smallest subspace containing the columns of `generators` and invariant
/// under every T_i^*, grown breadth-first.
Subspace coinvariant_subspace(const OperatorTuple& t, const ComplexMatrix& generators, const RankTolerance& tol = {});

/// compress(V, M) for M generated under the V_i^* by n_generators unit vectors
/// drawn from the seed.
OperatorTuple random_coinvariant_compression(std::size_t d, std::size_t levels, std::size_t n_generators,
                                             std::uint64_t seed, const SizeLimits& limits = {});

/// Invariant subspace M = span{e_alpha : alpha_1 >= 1} of the truncated d-shift.
Subspace z1_ideal_subspace(std::size_t d, std::size_t levels, const SizeLimits& limits = {});

struct IdealDefectExperiment {
  std::size_t ambient_dim = 0;
  std::size_t subspace_dim = 0;
  std::size_t defect_rank = 0;              // rank of P_M - sum T_i T_i^* on M
  std::size_t defect_rank_below_top = 0;     // same, restricted to degrees < L
};

/// Defect of the restriction of the d-shift to z1_ideal_subspace.
IdealDefectExperiment z1_ideal_experiment(std::size_t d, std::size_t levels, const RankTolerance& tol = {},
                                          const SizeLimits& limits = {});

}  // namespace defseq
