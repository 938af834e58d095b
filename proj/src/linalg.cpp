#include "defseq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "defseq/errors.hpp"

namespace defseq {

namespace {

using EigenMatrix = Eigen::MatrixXcd;
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

EigenMatrix to_eigen(const ComplexMatrix& m) {
  return RowMajorMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                     static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EigenMatrix& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return out;
}

ComplexMatrix checked_hermitian(const ComplexMatrix& m, const char* who) {
  if (!m.is_square()) throw PreconditionError(std::string(who) + ": matrix is not square");
  const double defect = hermitian_defect(m);
  if (defect > 1e-10 * (1.0 + max_abs(m))) {
    throw PreconditionError(std::string(who) + ": matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
  return hermitian_part(m);
}

double max_orthonormality_error(const ComplexMatrix& basis) {
  if (basis.cols() == 0) return 0.0;
  return max_abs_diff(adjoint_multiply(basis, basis), ComplexMatrix::identity(basis.cols()));
}

// Columns of `u` whose singular values pass the threshold, in order.
ComplexMatrix leading_columns(const EigenMatrix& u, const Eigen::VectorXd& sigma, double threshold) {
  Eigen::Index keep = 0;
  while (keep < sigma.size() && sigma(keep) > threshold) ++keep;
  return from_eigen(u.leftCols(keep));
}

}  // namespace

void RankTolerance::validate() const {
  if (!(rtol > 0.0) || !std::isfinite(rtol)) throw PreconditionError("RankTolerance: rtol must be > 0");
  if (!(atol >= 0.0) || !std::isfinite(atol)) throw PreconditionError("RankTolerance: atol must be >= 0");
}

double RankTolerance::threshold(double sigma_max) const noexcept {
  return std::max(rtol * sigma_max, atol);
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_hermitian(m, "hermitian_eig");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(to_eigen(h), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver did not converge");
  HermitianEigen out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = from_eigen(solver.eigenvectors());
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = checked_hermitian(m, "hermitian_eigenvalues");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(to_eigen(h), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigenvalues: eigensolver did not converge");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<EigenMatrix> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double spectral_norm(const ComplexMatrix& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

std::size_t rank_from_singular_values(std::span<const double> sigma, const RankTolerance& tol) {
  if (sigma.empty()) return 0;
  const double threshold = tol.threshold(sigma.front());
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > threshold; }));
}

std::size_t numerical_rank(const ComplexMatrix& m, const RankTolerance& tol) {
  tol.validate();
  const auto s = singular_values(m);
  return rank_from_singular_values(s, tol);
}

QrFactors qr_decompose(const ComplexMatrix& m) {
  const auto rows = static_cast<Eigen::Index>(m.rows());
  const auto cols = static_cast<Eigen::Index>(m.cols());
  const Eigen::Index k = std::min(rows, cols);
  Eigen::HouseholderQR<EigenMatrix> qr(to_eigen(m));
  EigenMatrix q = qr.householderQ() * EigenMatrix::Identity(rows, k);
  EigenMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return {from_eigen(q), from_eigen(r)};
}

Subspace::Subspace(ComplexMatrix basis, RankTolerance tol) : basis_(std::move(basis)), tol_(tol) {
  tol_.validate();
  if (basis_.cols() > basis_.rows()) throw PreconditionError("Subspace: more basis columns than ambient dimension");
  const double err = max_orthonormality_error(basis_);
  if (err > 1e-10) {
    throw PreconditionError("Subspace: basis is not orthonormal (error " + std::to_string(err) + ")");
  }
}

Subspace Subspace::zero(std::size_t ambient_dim, RankTolerance tol) {
  return Subspace(ComplexMatrix(ambient_dim, 0), tol);
}

Subspace Subspace::full(std::size_t ambient_dim, RankTolerance tol) {
  return Subspace(ComplexMatrix::identity(ambient_dim), tol);
}

ComplexMatrix Subspace::projector() const { return multiply_adjoint(basis_, basis_); }

Subspace Subspace::orthogonal_complement() const {
  const std::size_t n = ambient_dim();
  if (dim() == n) return zero(n, tol_);
  if (dim() == 0) return full(n, tol_);
  return orthonormal_range(ComplexMatrix::identity(n) - projector(), tol_);
}

Subspace orthonormal_range(const ComplexMatrix& m, const RankTolerance& tol) {
  tol.validate();
  if (m.rows() == 0 || m.cols() == 0) return Subspace::zero(m.rows(), tol);
  Eigen::BDCSVD<EigenMatrix> svd(to_eigen(m), Eigen::ComputeThinU);
  const Eigen::VectorXd& sigma = svd.singularValues();
  return Subspace(leading_columns(svd.matrixU(), sigma, tol.threshold(sigma(0))), tol);
}

Subspace subspace_extend(const Subspace& a, const ComplexMatrix& vectors, const RankTolerance& tol) {
  tol.validate();
  if (vectors.rows() != a.ambient_dim()) {
    throw DimensionError("subspace_extend: ambient dimension " + std::to_string(a.ambient_dim()) +
                         " vs vectors of length " + std::to_string(vectors.rows()));
  }
  if (vectors.cols() == 0) return Subspace(a.basis(), tol);
  if (a.dim() == 0) return orthonormal_range(vectors, tol);
  if (a.dim() == a.ambient_dim()) return Subspace(a.basis(), tol);

  const double scale = spectral_norm(vectors);
  const double threshold = tol.threshold(scale);
  if (scale <= tol.atol) return Subspace(a.basis(), tol);

  const ComplexMatrix& q = a.basis();
  // Two classical Gram-Schmidt passes against the existing basis.
  ComplexMatrix residual = vectors - q * adjoint_multiply(q, vectors);
  residual -= q * adjoint_multiply(q, residual);

  Eigen::BDCSVD<EigenMatrix> svd(to_eigen(residual), Eigen::ComputeThinU);
  ComplexMatrix fresh = leading_columns(svd.matrixU(), svd.singularValues(), threshold);
  if (fresh.cols() == 0) return Subspace(q, tol);

  // Directions with a small singular value carry O(eps / sigma) leakage onto
  // span(q); project once more and re-orthonormalize.
  fresh -= q * adjoint_multiply(q, fresh);
  fresh = qr_decompose(fresh).q;

  const ComplexMatrix parts[] = {q, fresh};
  return Subspace(hstack(parts), tol);
}

Subspace subspace_join(const Subspace& a, const Subspace& b, const RankTolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError("subspace_join: ambient dimensions " + std::to_string(a.ambient_dim()) +
                         " and " + std::to_string(b.ambient_dim()));
  }
  return subspace_extend(a, b.basis(), tol);
}

bool subspace_contains(const Subspace& a, const Subspace& b, const RankTolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError("subspace_contains: ambient dimensions " + std::to_string(a.ambient_dim()) +
                         " and " + std::to_string(b.ambient_dim()));
  }
  if (b.dim() == 0) return true;
  if (b.dim() > a.dim()) return false;
  const ComplexMatrix& bb = b.basis();
  const ComplexMatrix residual =
      a.dim() == 0 ? bb : bb - a.basis() * adjoint_multiply(a.basis(), bb);
  const double slack = std::max(tol.rtol, tol.atol);
  for (std::size_t c = 0; c < bb.cols(); ++c) {
    double res2 = 0.0, norm2 = 0.0;
    for (std::size_t r = 0; r < bb.rows(); ++r) {
      res2 += std::norm(residual(r, c));
      norm2 += std::norm(bb(r, c));
    }
    if (std::sqrt(res2) > slack * (1.0 + std::sqrt(norm2))) return false;
  }
  return true;
}

bool subspace_equal(const Subspace& a, const Subspace& b, const RankTolerance& tol) {
  return a.dim() == b.dim() && subspace_contains(a, b, tol) && subspace_contains(b, a, tol);
}

}  // namespace defseq
