#include "defseq/defect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "defseq/errors.hpp"

namespace defseq {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// C(n, k) with saturation, via the multiplicative formula on 128-bit intermediates.
std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(value);
}

std::size_t psd_rank(const ComplexMatrix& m, const RankTolerance& tol) {
  auto eig = hermitian_eigenvalues(m);
  for (auto& v : eig) v = std::abs(v);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return rank_from_singular_values(eig, tol);
}

ComplexMatrix defect_from_iterate(const ComplexMatrix& iterate) {
  return hermitian_part(ComplexMatrix::identity(iterate.rows()) - iterate);
}

}  // namespace

std::uint64_t geometric_bound(std::size_t d, std::size_t n, std::uint64_t delta) {
  std::uint64_t sum = 0;
  std::uint64_t term = 1;
  for (std::size_t k = 0; k < n; ++k) {
    sum = sat_add(sum, term);
    term = sat_mul(term, d);
  }
  return sat_mul(sum, delta);
}

std::uint64_t binomial_bound(std::size_t d, std::size_t n, std::uint64_t delta) {
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < n; ++k) sum = sat_add(sum, sat_binomial(k + d - 1, d - 1));
  return sat_mul(sum, delta);
}

double min_defect_eigenvalue(const OperatorTuple& t) {
  const auto eig = hermitian_eigenvalues(defect_from_iterate(cp_iterate(t, 1)));
  return eig.front();
}

void require_contractive(const OperatorTuple& t, const RankTolerance& tol) {
  const double lowest = min_defect_eigenvalue(t);
  if (lowest < -10.0 * tol.rtol) {
    throw NonContractiveError("tuple is not a row contraction: smallest eigenvalue of I - sum T_i T_i^* is " +
                              std::to_string(lowest));
  }
}

ComplexMatrix defect_operator(const OperatorTuple& t, std::size_t n, const RankTolerance& tol) {
  if (n == 0) throw PreconditionError("defect_operator: n must be at least 1");
  tol.validate();
  require_contractive(t, tol);
  return defect_from_iterate(cp_iterate(t, n));
}

std::size_t defect_dimension(const OperatorTuple& t, std::size_t n, const RankTolerance& tol) {
  return psd_rank(defect_operator(t, n, tol), tol);
}

DefectReport defect_sequence(const OperatorTuple& t, std::size_t n_max, const RankTolerance& tol,
                             DefectSequenceOptions options) {
  if (n_max == 0) throw PreconditionError("defect_sequence: n_max must be at least 1");
  tol.validate();
  require_contractive(t, tol);

  DefectReport report;
  report.dim = t.dim();
  report.arity = t.arity();
  report.tol = tol;
  report.commuting = is_commuting(t, tol);

  ComplexMatrix iterate = ComplexMatrix::identity(t.dim());
  for (std::size_t n = 1; n <= n_max; ++n) {
    iterate = apply_cp_map(t, iterate);
    const std::size_t delta = psd_rank(defect_from_iterate(iterate), tol);
    report.deltas.push_back(delta);

    if (!report.stabilized_at) {
      if (delta == t.dim()) {
        report.reached_full = true;
        report.stabilized_at = n;
      } else if (n >= 2 && report.deltas[n - 2] == delta) {
        report.stabilized_at = n - 1;
      }
      if (report.stabilized_at && options.early_stop) break;
    }
  }

  const std::uint64_t delta1 = report.deltas.front();
  for (std::size_t k = 0; k < report.deltas.size(); ++k) {
    const std::uint64_t nc = geometric_bound(t.arity(), k + 1, delta1);
    report.noncomm_bounds.push_back(nc);
    report.bound_ok_noncomm.push_back(report.deltas[k] <= nc);
    if (report.commuting) {
      const std::uint64_t cb = binomial_bound(t.arity(), k + 1, delta1);
      report.comm_bounds.push_back(cb);
      report.bound_ok_comm.push_back(report.deltas[k] <= cb);
    }
  }
  return report;
}

Subspace defect_space(const OperatorTuple& t, std::size_t n, const RankTolerance& tol) {
  return orthonormal_range(defect_operator(t, n, tol), tol);
}

Subspace defect_space_via_words(const OperatorTuple& t, std::size_t n, const RankTolerance& tol) {
  Subspace accumulated = defect_space(t, 1, tol);
  ComplexMatrix frontier = accumulated.basis();
  for (std::size_t round = 1; round < n && frontier.cols() > 0; ++round) {
    if (accumulated.dim() == t.dim()) break;
    std::vector<ComplexMatrix> images;
    images.reserve(t.arity());
    for (const auto& op : t.ops()) images.push_back(op * frontier);
    Subspace next = subspace_extend(accumulated, hstack(images), tol);
    frontier = next.basis().columns(accumulated.dim(), next.dim() - accumulated.dim());
    accumulated = std::move(next);
  }
  return accumulated;
}

std::size_t word_image_dimension(const OperatorTuple& t, std::size_t n, const RankTolerance& tol) {
  Subspace image = defect_space(t, 1, tol);
  for (std::size_t k = 0; k < n && image.dim() > 0; ++k) {
    std::vector<ComplexMatrix> parts;
    parts.reserve(t.arity());
    for (const auto& op : t.ops()) parts.push_back(op * image.basis());
    image = orthonormal_range(hstack(parts), tol);
  }
  return image.dim();
}

RankSymmetryVerdict rank_symmetry_check(const OperatorTuple& t, std::size_t n, const RankTolerance& tol,
                                        const SizeLimits& limits) {
  if (n == 0) throw PreconditionError("rank_symmetry_check: n must be at least 1");
  tol.validate();
  require_contractive(t, tol);

  const OperatorTuple power = tuple_power(t, n, limits);
  const std::size_t h = t.dim();
  const std::size_t width = h * power.arity();
  if (width > limits.max_row_width) {
    throw ResourceError("rank_symmetry_check: row operator width " + std::to_string(width) +
                        " exceeds the size cap " + std::to_string(limits.max_row_width));
  }
  const ComplexMatrix row = row_operator(power);

  RankSymmetryVerdict v;
  v.n = n;
  const std::size_t rank = numerical_rank(row, tol);
  v.ker_dim = width - rank;
  v.coker_dim = h - rank;
  v.rank_left = psd_rank(hermitian_part(ComplexMatrix::identity(h) - multiply_adjoint(row, row)), tol);
  v.rank_right = psd_rank(hermitian_part(ComplexMatrix::identity(width) - adjoint_multiply(row, row)), tol);
  v.equal_ranks = v.rank_left == v.rank_right;
  v.equal_kernels = v.ker_dim == v.coker_dim;
  return v;
}

ProductBoundsCheck verify_product_bounds(const OperatorTuple& b, const OperatorTuple& c,
                                         const RankTolerance& tol) {
  ProductBoundsCheck r;
  r.m = b.arity();
  r.delta_b = defect_dimension(b, 1, tol);
  r.delta_c = defect_dimension(c, 1, tol);
  r.delta_bc = defect_dimension(tuple_product(b, c), 1, tol);
  r.lower_ok = r.delta_b <= r.delta_bc;
  r.upper_ok = r.delta_bc <= r.delta_b + r.m * r.delta_c;
  return r;
}

}  // namespace defseq
