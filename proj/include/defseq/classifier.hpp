#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "defseq/complex_matrix.hpp"
#include "defseq/linalg.hpp"
#include "defseq/tuple.hpp"

namespace defseq {

/// Smallest eigenvalue of I - sum T_i T_i^* is at least -10 * rtol.
bool is_contractive(const OperatorTuple& t, const RankTolerance& tol = {});

struct PurityOptions {
  std::size_t max_iter = 10000;
  double eps_pure = 1e-10;  // stop as Pure once |P_T^k(I)|_2 <= eps_pure
  double eps_conv = 1e-12;  // stop as NotPure once |X_k - X_{k-1}|_F <= eps_conv * |X_k|_F

  void validate() const;
};

enum class PurityStatus { Pure, NotPure, Undecided };

const char* purity_status_name(PurityStatus s) noexcept;

struct PurityVerdict {
  PurityStatus status = PurityStatus::Undecided;
  std::size_t iterations = 0;
  double residual_norm = 0.0;          // |P_T^k(I)|_2 at the stop
  std::optional<ComplexMatrix> limit;  // the fixed point reached, NotPure only
};

/// Iterates X_{k+1} = P_T(X_k) from X_0 = I. Throws NonContractiveError.
PurityVerdict purity(const OperatorTuple& t, const PurityOptions& options = {}, const RankTolerance& tol = {});

/// Outcome of comparing Delta_{T^n} with a maximality bound for n = 1..horizon.
struct MaximalityVerdict {
  bool maximal = false;
  std::size_t horizon = 0;
  bool horizon_defaulted = false;
  std::vector<std::size_t> deltas;     // n = 1.. as far as evaluated
  std::vector<std::uint64_t> bounds;   // matching bounds
  std::optional<std::size_t> first_mismatch;
  bool saturated = false;  // evaluation stopped because Delta reached h
};

/// Largest n with bound(n) <= h; 1 when Delta_T = 0.
std::size_t default_horizon_noncommutative(std::size_t d, std::size_t h, std::size_t delta_t);
std::size_t default_horizon_commuting(std::size_t d, std::size_t h, std::size_t delta_t);

MaximalityVerdict maximality_noncommutative(const OperatorTuple& t, std::optional<std::size_t> horizon = {},
                                            const RankTolerance& tol = {});
/// Throws PreconditionError for a non-commuting tuple.
MaximalityVerdict maximality_commuting(const OperatorTuple& t, std::optional<std::size_t> horizon = {},
                                       const RankTolerance& tol = {});

bool is_maximal_noncommutative(const OperatorTuple& t, std::optional<std::size_t> horizon = {},
                               const RankTolerance& tol = {});
bool is_maximal_commuting(const OperatorTuple& t, std::optional<std::size_t> horizon = {},
                          const RankTolerance& tol = {});

/// dim {X : X T_i = T_i X, X T_i^* = T_i^* X for all i}, the nullity of the
/// stacked 2d h^2 x h^2 commutation system. Throws ResourceError when
/// h > limits.max_commutant_dim.
std::size_t commutant_dimension(const OperatorTuple& t, const RankTolerance& tol = {},
                                const SizeLimits& limits = {});
bool is_irreducible(const OperatorTuple& t, const RankTolerance& tol = {}, const SizeLimits& limits = {});

struct ClassifyOptions {
  PurityOptions purity;
  std::optional<std::size_t> horizon;
  RankTolerance tol;
  SizeLimits limits;
};

struct ClassificationReport {
  std::size_t dim = 0;
  std::size_t arity = 0;
  bool contractive = false;
  double min_defect_eigenvalue = 0.0;
  bool commuting = false;
  double max_commutator_norm = 0.0;
  std::size_t delta_1 = 0;
  // The fields below need a row contraction and stay empty otherwise.
  std::optional<PurityVerdict> purity;
  std::optional<MaximalityVerdict> maximal_noncomm;
  std::optional<MaximalityVerdict> maximal_comm;  // commuting tuples only
  // Empty when h exceeds the commutant size cap.
  std::optional<std::size_t> commutant_dim;
  std::optional<bool> irreducible;
  /// irreducible and Delta_T > 0 imply purity is not NotPure; vacuous otherwise.
  bool irreducible_pure_consistent = true;
  ClassifyOptions options;
};

ClassificationReport classify(const OperatorTuple& t, const ClassifyOptions& options = {});

}  // namespace defseq
