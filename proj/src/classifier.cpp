#include "defseq/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "defseq/defect.hpp"
#include "defseq/errors.hpp"

namespace defseq {

namespace {

double psd_spectral_norm(const ComplexMatrix& x) {
  const auto eig = hermitian_eigenvalues(x);
  double worst = 0.0;
  for (double v : eig) worst = std::max(worst, std::abs(v));
  return worst;
}

// n = 1.. until bound(n) > h. Bounds are nondecreasing in n, and strictly
// increasing while delta_t > 0.
template <typename Bound>
std::size_t largest_fitting(std::size_t h, std::size_t delta_t, Bound bound) {
  if (delta_t == 0) return 1;
  std::size_t n = 1;
  while (bound(n + 1) <= h) ++n;
  return n;
}

template <typename Bound>
MaximalityVerdict evaluate_maximality(const OperatorTuple& t, std::optional<std::size_t> horizon,
                                      const RankTolerance& tol, Bound bound, std::size_t default_horizon) {
  MaximalityVerdict v;
  v.horizon_defaulted = !horizon.has_value();
  v.horizon = horizon.value_or(default_horizon);
  if (v.horizon == 0) throw PreconditionError("maximality: horizon must be at least 1");

  const DefectReport seq = defect_sequence(t, v.horizon, tol, {.early_stop = false});
  const std::uint64_t delta_t = seq.deltas.front();
  v.maximal = true;
  for (std::size_t n = 1; n <= seq.deltas.size(); ++n) {
    const std::size_t delta = seq.deltas[n - 1];
    const std::uint64_t b = bound(n, delta_t);
    v.deltas.push_back(delta);
    v.bounds.push_back(b);
    if (delta != b) {
      v.maximal = false;
      v.first_mismatch = n;
      break;
    }
    if (delta == t.dim()) {
      v.saturated = true;
      break;
    }
  }
  return v;
}

void append_block(Eigen::MatrixXcd& system, Eigen::Index row0, const Eigen::MatrixXcd& block) {
  system.block(row0, 0, block.rows(), block.cols()) = block;
}

}  // namespace

bool is_contractive(const OperatorTuple& t, const RankTolerance& tol) {
  tol.validate();
  return min_defect_eigenvalue(t) >= -10.0 * tol.rtol;
}

void PurityOptions::validate() const {
  if (max_iter == 0) throw PreconditionError("purity: max_iter must be at least 1");
  if (!(eps_pure > 0.0)) throw PreconditionError("purity: eps_pure must be > 0");
  if (!(eps_conv > 0.0)) throw PreconditionError("purity: eps_conv must be > 0");
}

const char* purity_status_name(PurityStatus s) noexcept {
  switch (s) {
    case PurityStatus::Pure:
      return "pure";
    case PurityStatus::NotPure:
      return "not_pure";
    case PurityStatus::Undecided:
      return "undecided";
  }
  return "undecided";
}

PurityVerdict purity(const OperatorTuple& t, const PurityOptions& options, const RankTolerance& tol) {
  options.validate();
  require_contractive(t, tol);

  PurityVerdict v;
  ComplexMatrix x = ComplexMatrix::identity(t.dim());
  for (std::size_t k = 1; k <= options.max_iter; ++k) {
    ComplexMatrix next = apply_cp_map(t, x);
    v.iterations = k;
    v.residual_norm = psd_spectral_norm(next);
    if (v.residual_norm <= options.eps_pure) {
      v.status = PurityStatus::Pure;
      return v;
    }
    const double step = frobenius_norm(next - x);
    if (step <= options.eps_conv * frobenius_norm(next)) {
      v.status = PurityStatus::NotPure;
      v.limit = std::move(next);
      return v;
    }
    x = std::move(next);
  }
  v.status = PurityStatus::Undecided;
  return v;
}

std::size_t default_horizon_noncommutative(std::size_t d, std::size_t h, std::size_t delta_t) {
  return largest_fitting(h, delta_t, [&](std::size_t n) { return geometric_bound(d, n, delta_t); });
}

std::size_t default_horizon_commuting(std::size_t d, std::size_t h, std::size_t delta_t) {
  return largest_fitting(h, delta_t, [&](std::size_t n) { return binomial_bound(d, n, delta_t); });
}

MaximalityVerdict maximality_noncommutative(const OperatorTuple& t, std::optional<std::size_t> horizon,
                                            const RankTolerance& tol) {
  const std::size_t delta_t = defect_dimension(t, 1, tol);
  const std::size_t d = t.arity();
  return evaluate_maximality(
      t, horizon, tol, [d](std::size_t n, std::uint64_t delta) { return geometric_bound(d, n, delta); },
      default_horizon_noncommutative(d, t.dim(), delta_t));
}

MaximalityVerdict maximality_commuting(const OperatorTuple& t, std::optional<std::size_t> horizon,
                                       const RankTolerance& tol) {
  if (!is_commuting(t, tol)) throw PreconditionError("maximality_commuting: tuple is not commuting");
  const std::size_t delta_t = defect_dimension(t, 1, tol);
  const std::size_t d = t.arity();
  return evaluate_maximality(
      t, horizon, tol, [d](std::size_t n, std::uint64_t delta) { return binomial_bound(d, n, delta); },
      default_horizon_commuting(d, t.dim(), delta_t));
}

bool is_maximal_noncommutative(const OperatorTuple& t, std::optional<std::size_t> horizon,
                               const RankTolerance& tol) {
  return maximality_noncommutative(t, horizon, tol).maximal;
}

bool is_maximal_commuting(const OperatorTuple& t, std::optional<std::size_t> horizon, const RankTolerance& tol) {
  return maximality_commuting(t, horizon, tol).maximal;
}

std::size_t commutant_dimension(const OperatorTuple& t, const RankTolerance& tol, const SizeLimits& limits) {
  tol.validate();
  const std::size_t h = t.dim();
  if (h > limits.max_commutant_dim) {
    throw ResourceError("commutant_dimension: h = " + std::to_string(h) + " exceeds the size cap " +
                        std::to_string(limits.max_commutant_dim));
  }
  const auto hh = static_cast<Eigen::Index>(h);
  const Eigen::Index n2 = hh * hh;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(hh, hh);

  // Row-major vec: vec(A X B) = (A kron B^T) vec(X).
  auto kron = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };

  Eigen::MatrixXcd system(2 * static_cast<Eigen::Index>(t.arity()) * n2, n2);
  Eigen::Index row = 0;
  for (const auto& op : t.ops()) {
    Eigen::MatrixXcd m(hh, hh);
    for (Eigen::Index r = 0; r < hh; ++r)
      for (Eigen::Index c = 0; c < hh; ++c) m(r, c) = op(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    // X T - T X = 0 and X T^* - T^* X = 0.
    append_block(system, row, kron(eye, m.transpose()) - kron(m, eye));
    row += n2;
    append_block(system, row, kron(eye, m.conjugate()) - kron(m.adjoint(), eye));
    row += n2;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(system);
  const Eigen::VectorXd& s = svd.singularValues();
  const std::vector<double> sigma(s.data(), s.data() + s.size());
  return h * h - rank_from_singular_values(sigma, tol);
}

bool is_irreducible(const OperatorTuple& t, const RankTolerance& tol, const SizeLimits& limits) {
  return commutant_dimension(t, tol, limits) == 1;
}

ClassificationReport classify(const OperatorTuple& t, const ClassifyOptions& options) {
  const RankTolerance& tol = options.tol;
  tol.validate();
  options.purity.validate();

  ClassificationReport r;
  r.options = options;
  r.dim = t.dim();
  r.arity = t.arity();
  r.min_defect_eigenvalue = min_defect_eigenvalue(t);
  r.contractive = r.min_defect_eigenvalue >= -10.0 * tol.rtol;
  r.max_commutator_norm = max_commutator_norm(t);
  r.commuting = is_commuting(t, tol);

  if (t.dim() <= options.limits.max_commutant_dim) {
    r.commutant_dim = commutant_dimension(t, tol, options.limits);
    r.irreducible = *r.commutant_dim == 1;
  }
  if (!r.contractive) return r;

  r.delta_1 = defect_dimension(t, 1, tol);
  r.purity = purity(t, options.purity, tol);
  r.maximal_noncomm = maximality_noncommutative(t, options.horizon, tol);
  if (r.commuting) r.maximal_comm = maximality_commuting(t, options.horizon, tol);
  if (r.irreducible.value_or(false) && r.delta_1 > 0) {
    r.irreducible_pure_consistent = r.purity->status != PurityStatus::NotPure;
  }
  return r;
}

}  // namespace defseq
