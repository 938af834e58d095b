#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "defseq/complex_matrix.hpp"

namespace defseq {

/// Singular values strictly above max(rtol * sigma_max, atol) count toward rank.
struct RankTolerance {
  double rtol = 1e-9;
  double atol = 1e-12;

  /// Throws PreconditionError unless rtol > 0 and atol >= 0.
  void validate() const;
  double threshold(double sigma_max) const noexcept;
};

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary, column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. The input is re-symmetrized
/// before factoring; inputs further than 1e-10 * (1 + max|M|) from Hermitian
/// are rejected with PreconditionError.
HermitianEigen hermitian_eig(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);

/// Number of entries of a descending singular-value list above tol's threshold.
std::size_t rank_from_singular_values(std::span<const double> sigma, const RankTolerance& tol);
std::size_t numerical_rank(const ComplexMatrix& m, const RankTolerance& tol = {});

struct QrFactors {
  ComplexMatrix q;  // m x min(m, n), orthonormal columns
  ComplexMatrix r;  // min(m, n) x n, upper triangular
};
QrFactors qr_decompose(const ComplexMatrix& m);

/// A subspace of C^n held by an orthonormal basis, together with the
/// tolerance that produced it.
class Subspace {
 public:
  /// Throws PreconditionError unless basis^H basis = I to within 1e-10.
  Subspace(ComplexMatrix basis, RankTolerance tol = {});

  static Subspace zero(std::size_t ambient_dim, RankTolerance tol = {});
  static Subspace full(std::size_t ambient_dim, RankTolerance tol = {});

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  const RankTolerance& tolerance() const noexcept { return tol_; }

  /// Orthogonal projection B B^H onto the subspace.
  ComplexMatrix projector() const;
  Subspace orthogonal_complement() const;

 private:
  ComplexMatrix basis_;
  RankTolerance tol_;
};

Subspace orthonormal_range(const ComplexMatrix& m, const RankTolerance& tol = {});

/// A v span(vectors). Directions of the projected residual count when their
/// singular value exceeds tol's threshold relative to the spectral norm of
/// `vectors`; the appended basis is re-orthogonalized against A.
Subspace subspace_extend(const Subspace& a, const ComplexMatrix& vectors,
                         const RankTolerance& tol = {});
Subspace subspace_join(const Subspace& a, const Subspace& b, const RankTolerance& tol = {});

/// True iff every basis column b of `b` satisfies
/// |(I - A A^H) b| <= max(rtol, atol) * (1 + |b|).
bool subspace_contains(const Subspace& a, const Subspace& b, const RankTolerance& tol = {});
bool subspace_equal(const Subspace& a, const Subspace& b, const RankTolerance& tol = {});

}  // namespace defseq
