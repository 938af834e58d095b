#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "defseq/complex_matrix.hpp"
#include "defseq/linalg.hpp"

namespace defseq {

/// Caps on materialized objects. The defaults can be raised by the CLI through
/// the DEFSEQ_MAX_WORDS environment variable.
struct SizeLimits {
  std::size_t max_words = 4096;        // d^n entries of a tuple power
  std::size_t max_row_width = 4096;    // h * d^n columns of a materialized row operator
  std::size_t max_commutant_dim = 32;  // h for the h^2-unknown commutant system
  std::size_t max_model_dim = 8192;    // ambient dimension of constructed models

  /// Defaults overridden by DEFSEQ_MAX_WORDS, DEFSEQ_MAX_ROW_WIDTH,
  /// DEFSEQ_MAX_COMMUTANT_DIM and DEFSEQ_MAX_MODEL_DIM when set to a positive integer.
  static SizeLimits from_environment();
};

/// A word over the alphabet {0, ..., d-1}; the empty word is the identity.
/// Letters are 0-based in the API and printed 1-based.
struct Word {
  std::vector<std::size_t> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
};

/// All d^n words of length n in lexicographic order (first letter most significant).
std::vector<Word> all_words(std::size_t d, std::size_t n);

/// T = (T_1, ..., T_d), d >= 1 square matrices of one common dimension h >= 1.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<ComplexMatrix> ops, std::string label = {});

  static OperatorTuple zero(std::size_t d, std::size_t h, std::string label = "zero");

  std::size_t arity() const noexcept { return ops_.size(); }
  std::size_t dim() const noexcept { return ops_.front().rows(); }
  const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  const std::string& label() const noexcept { return label_; }
  OperatorTuple with_label(std::string label) const;

 private:
  std::vector<ComplexMatrix> ops_;
  std::string label_;
};

/// P_T(X) = sum_i T_i X T_i^*, re-symmetrized. X must be Hermitian and h x h.
ComplexMatrix apply_cp_map(const OperatorTuple& t, const ComplexMatrix& x);
/// P_T^n(I) by n applications of the map; n = 0 gives I.
ComplexMatrix cp_iterate(const OperatorTuple& t, std::size_t n);

/// The mk-tuple (B_1 C_1, ..., B_1 C_k, B_2 C_1, ..., B_m C_k): entry i*k + j holds B_i C_j.
OperatorTuple tuple_product(const OperatorTuple& b, const OperatorTuple& c);
/// T^n, entries in lexicographic word order. Throws ResourceError when d^n > limits.max_words.
OperatorTuple tuple_power(const OperatorTuple& t, std::size_t n, const SizeLimits& limits = {});

/// T_{w_1} T_{w_2} ... T_{w_n}; identity for the empty word.
ComplexMatrix word_apply(const OperatorTuple& t, const Word& w);

/// The h x dh row matrix [T_1 ... T_d].
ComplexMatrix row_operator(const OperatorTuple& t);

/// Blockwise (A_i (+) B_i). Arity must agree.
OperatorTuple direct_sum(const OperatorTuple& a, const OperatorTuple& b);

/// (B^H T_i B) for the basis B of m: the compression P_M T_i |_M in M's coordinates.
OperatorTuple compress(const OperatorTuple& t, const Subspace& m);

/// Largest spectral norm of a commutator T_i T_j - T_j T_i over i < j.
double max_commutator_norm(const OperatorTuple& t);
/// max commutator norm <= rtol * (1 + max_i |T_i|^2).
bool is_commuting(const OperatorTuple& t, const RankTolerance& tol = {});

/// T_i M subset M for all i.
bool is_invariant(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol = {});
/// T_i^* M subset M for all i.
bool is_coinvariant(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol = {});
bool is_reducing(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol = {});

}  // namespace defseq
