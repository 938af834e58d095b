#include "defseq/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "defseq/errors.hpp"
#include "defseq/random.hpp"

namespace defseq {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) v *= base;
  return v;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t v = 1;
  for (std::size_t i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

void require_arity(std::size_t d, const char* who) {
  if (d == 0) throw PreconditionError(std::string(who) + ": d must be at least 1");
}

void require_levels(std::size_t levels, const char* who) {
  if (levels == 0) throw PreconditionError(std::string(who) + ": levels must be at least 1");
}

// Capped sum with an early exit so huge parameters fail before overflowing.
template <typename Term>
std::size_t capped_sum(std::size_t levels, std::size_t cap, const char* who, Term term) {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= levels; ++k) {
    const std::size_t t = term(k);
    if (t > cap || total > cap - t) {
      throw ResourceError(std::string(who) + ": model dimension exceeds the size cap " + std::to_string(cap));
    }
    total += t;
  }
  return total;
}

ComplexMatrix basis_columns(std::size_t n, const std::vector<std::size_t>& indices) {
  ComplexMatrix b(n, indices.size());
  for (std::size_t c = 0; c < indices.size(); ++c) b(indices[c], c) = 1.0;
  return b;
}

// Lexicographic index of `pi`'s action on the word encoded by `local` at level k.
std::size_t permuted_local_index(std::size_t d, std::size_t k, std::size_t local, std::span<const std::size_t> pi,
                                 std::vector<std::size_t>& letters) {
  letters.assign(k, 0);
  for (std::size_t pos = k; pos-- > 0;) {
    letters[pos] = local % d;
    local /= d;
  }
  std::size_t out = 0;
  for (std::size_t pos = 0; pos < k; ++pos) out = out * d + letters[pi[pos]];
  return out;
}

std::map<std::vector<std::size_t>, std::size_t> monomial_positions(std::size_t d, std::size_t levels) {
  std::map<std::vector<std::size_t>, std::size_t> pos;
  std::size_t idx = 0;
  for (std::size_t k = 0; k <= levels; ++k)
    for (const auto& m : monomials(d, k)) pos.emplace(m.exponents, idx++);
  return pos;
}

}  // namespace

std::size_t fock_dimension(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  require_arity(d, "fock_dimension");
  const std::size_t cap = limits.max_model_dim;
  std::size_t total = 0, term = 1;
  for (std::size_t k = 0; k <= levels; ++k) {
    if (term > cap - total) {
      throw ResourceError("fock_dimension: model dimension exceeds the size cap " + std::to_string(cap));
    }
    total += term;
    if (k < levels && term > cap / d) {
      throw ResourceError("fock_dimension: model dimension exceeds the size cap " + std::to_string(cap));
    }
    term *= d;
  }
  return total;
}

std::size_t fock_level_offset(std::size_t d, std::size_t k) {
  std::size_t offset = 0, term = 1;
  for (std::size_t j = 0; j < k; ++j) {
    offset += term;
    term *= d;
  }
  return offset;
}

std::size_t fock_index(std::size_t d, const Word& w) {
  std::size_t local = 0;
  for (const std::size_t letter : w.letters) {
    if (letter >= d) throw PreconditionError("fock_index: letter out of range");
    local = local * d + letter;
  }
  return fock_level_offset(d, w.length()) + local;
}

OperatorTuple fock_creation(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  require_levels(levels, "fock_creation");
  const std::size_t h = fock_dimension(d, levels, limits);
  std::vector<ComplexMatrix> ops(d, ComplexMatrix(h, h));
  for (std::size_t k = 0; k < levels; ++k) {
    const std::size_t width = ipow(d, k);
    const std::size_t src = fock_level_offset(d, k);
    const std::size_t dst = fock_level_offset(d, k + 1);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t u = 0; u < width; ++u) ops[i](dst + i * width + u, src + u) = 1.0;
  }
  return OperatorTuple(std::move(ops), "fock(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ")");
}

ComplexMatrix permutation_operator(std::size_t d, std::span<const std::size_t> pi) {
  require_arity(d, "permutation_operator");
  const std::size_t k = pi.size();
  const std::size_t n = ipow(d, k);
  ComplexMatrix u(n, n);
  std::vector<std::size_t> letters;
  for (std::size_t local = 0; local < n; ++local) u(permuted_local_index(d, k, local, pi, letters), local) = 1.0;
  return u;
}

ComplexMatrix symmetrizer(std::size_t d, std::size_t k, const SizeLimits& limits) {
  require_arity(d, "symmetrizer");
  if (k > 8) throw ResourceError("symmetrizer: k = " + std::to_string(k) + " exceeds the permutation cap 8");
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n > limits.max_words / d) {
      throw ResourceError("symmetrizer: d^k exceeds the size cap " + std::to_string(limits.max_words));
    }
    n *= d;
  }
  std::vector<std::size_t> pi(k);
  std::iota(pi.begin(), pi.end(), 0);
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= k; ++i) factorial *= i;
  const double weight = 1.0 / static_cast<double>(factorial);

  ComplexMatrix p(n, n);
  std::vector<std::size_t> letters;
  do {
    for (std::size_t local = 0; local < n; ++local) p(permuted_local_index(d, k, local, pi, letters), local) += weight;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return p;
}

std::size_t MultiIndex::degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), std::size_t{0});
}

Word MultiIndex::word() const {
  Word w;
  for (std::size_t i = 0; i < exponents.size(); ++i) w.letters.insert(w.letters.end(), exponents[i], i);
  return w;
}

std::vector<MultiIndex> monomials(std::size_t d, std::size_t degree) {
  require_arity(d, "monomials");
  std::vector<MultiIndex> out;
  // Non-decreasing words of the given length, in lexicographic order.
  std::vector<std::size_t> word(degree, 0);
  while (true) {
    MultiIndex m{std::vector<std::size_t>(d, 0)};
    for (const std::size_t letter : word) ++m.exponents[letter];
    out.push_back(std::move(m));

    std::size_t pos = degree;
    while (pos > 0 && word[pos - 1] == d - 1) --pos;
    if (pos == 0) break;
    const std::size_t next = word[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < degree; ++j) word[j] = next;
  }
  return out;
}

std::size_t symmetric_level_offset(std::size_t d, std::size_t k) {
  std::size_t offset = 0;
  for (std::size_t j = 0; j < k; ++j) offset += binom(j + d - 1, d - 1);
  return offset;
}

std::size_t symmetric_dimension(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  require_arity(d, "symmetric_dimension");
  return capped_sum(levels, limits.max_model_dim, "symmetric_dimension",
                    [&](std::size_t k) { return binom(k + d - 1, d - 1); });
}

OperatorTuple symmetric_fock_shift(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  require_levels(levels, "symmetric_fock_shift");
  const std::size_t h = symmetric_dimension(d, levels, limits);
  const auto pos = monomial_positions(d, levels);
  std::vector<ComplexMatrix> ops(d, ComplexMatrix(h, h));
  for (const auto& [alpha, src] : pos) {
    const std::size_t deg = std::accumulate(alpha.begin(), alpha.end(), std::size_t{0});
    if (deg == levels) continue;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<std::size_t> beta = alpha;
      ++beta[i];
      const double w = std::sqrt(static_cast<double>(alpha[i] + 1) / static_cast<double>(deg + 1));
      ops[i](pos.at(beta), src) = w;
    }
  }
  return OperatorTuple(std::move(ops), "dshift(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ")");
}

ComplexMatrix symmetric_embedding(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  const std::size_t h_full = fock_dimension(d, levels, limits);
  const std::size_t h_sym = symmetric_dimension(d, levels, limits);
  ComplexMatrix j(h_full, h_sym);
  std::size_t col = 0;
  for (std::size_t k = 0; k <= levels; ++k) {
    const ComplexMatrix p = symmetrizer(d, k, limits);
    const std::size_t row0 = fock_level_offset(d, k);
    for (const auto& m : monomials(d, k)) {
      const std::size_t local = fock_index(d, m.word()) - row0;
      double norm2 = 0.0;
      for (std::size_t r = 0; r < p.rows(); ++r) norm2 += std::norm(p(r, local));
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t r = 0; r < p.rows(); ++r) j(row0 + r, col) = p(r, local) * inv;
      ++col;
    }
  }
  return j;
}

OperatorTuple symmetric_shift_via_compression(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  const OperatorTuple v = fock_creation(d, levels, limits);
  const ComplexMatrix j = symmetric_embedding(d, levels, limits);
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (const auto& vi : v.ops()) ops.push_back(adjoint_multiply(j, vi * j));
  return OperatorTuple(std::move(ops),
                       "dshift-compressed(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ")");
}

Subspace right_creation_subspace(std::size_t d, std::size_t levels, std::size_t j) {
  require_arity(d, "right_creation_subspace");
  if (j >= d) throw PreconditionError("right_creation_subspace: letter j out of range");
  const std::size_t h = fock_level_offset(d, levels + 1);
  std::vector<std::size_t> keep{0};
  for (std::size_t k = 1; k <= levels; ++k) {
    const std::size_t offset = fock_level_offset(d, k);
    for (std::size_t u = 0; u < ipow(d, k); ++u)
      if (u % d != j) keep.push_back(offset + u);
  }
  return Subspace(basis_columns(h, keep));
}

OperatorTuple right_creation_compression(std::size_t d, std::size_t levels, std::size_t j,
                                         const SizeLimits& limits) {
  if (levels < 2) throw PreconditionError("right_creation_compression: levels must be at least 2");
  const OperatorTuple v = fock_creation(d, levels, limits);
  return compress(v, right_creation_subspace(d, levels, j))
      .with_label("rj(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ",j=" + std::to_string(j + 1) + ")");
}

std::size_t phi_degree(const PhiCoefficients& phi) {
  std::size_t deg = 0;
  for (const auto& [w, c] : phi) deg = std::max(deg, w.length());
  return deg;
}

Subspace phi_complement_subspace(std::size_t d, std::size_t levels, const PhiCoefficients& phi,
                                 const SizeLimits& limits) {
  const std::size_t h = fock_dimension(d, levels, limits);
  std::map<std::vector<std::size_t>, Complex> coeffs;
  for (const auto& [w, c] : phi) {
    for (const std::size_t letter : w.letters)
      if (letter >= d) throw PreconditionError("finite_phi_compression: letter out of range");
    coeffs[w.letters] += c;
  }
  double norm2 = 0.0;
  for (const auto& [w, c] : coeffs) {
    if (w.empty() && c != Complex(0.0, 0.0)) {
      throw PreconditionError("finite_phi_compression: phi must have no vacuum coefficient");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw PreconditionError("finite_phi_compression: phi must have unit norm (got |phi|^2 = " +
                            std::to_string(norm2) + ")");
  }

  const std::size_t deg = phi_degree(phi);
  if (deg > levels) return Subspace::full(h);

  std::vector<ComplexMatrix> cols;
  for (std::size_t k = 0; k + deg <= levels; ++k) {
    for (const Word& w : all_words(d, k)) {
      ComplexMatrix v(h, 1);
      for (const auto& [u, c] : coeffs) {
        Word wu = w;
        wu.letters.insert(wu.letters.end(), u.begin(), u.end());
        v(fock_index(d, wu), 0) += c;
      }
      cols.push_back(std::move(v));
    }
  }
  return orthonormal_range(hstack(cols)).orthogonal_complement();
}

OperatorTuple finite_phi_compression(std::size_t d, std::size_t levels, const PhiCoefficients& phi,
                                     const SizeLimits& limits) {
  const OperatorTuple v = fock_creation(d, levels, limits);
  return compress(v, phi_complement_subspace(d, levels, phi, limits))
      .with_label("phi(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ")");
}

OperatorTuple pure_nonmaximal_example(std::size_t d, std::size_t levels, double r, const SizeLimits& limits) {
  if (d < 2) throw PreconditionError("pure_nonmaximal_example: d must be at least 2");
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("pure_nonmaximal_example: r must lie in (0, 1)");
  const OperatorTuple v = fock_creation(d - 1, levels, limits);
  const ComplexMatrix zero1(1, 1);
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (const auto& vi : v.ops()) ops.push_back(block_diagonal(vi, zero1));
  ops.push_back(block_diagonal(ComplexMatrix(v.dim(), v.dim()), ComplexMatrix{{Complex(r, 0.0)}}));
  return OperatorTuple(std::move(ops), "pure-nonmax(d=" + std::to_string(d) + ",L=" + std::to_string(levels) + ")");
}

OperatorTuple scalar_spherical_tuple(std::span<const Complex> lambdas, std::size_t k) {
  if (lambdas.empty()) throw PreconditionError("scalar_spherical_tuple: need at least one coefficient");
  if (k == 0) throw PreconditionError("scalar_spherical_tuple: k must be at least 1");
  double norm2 = 0.0;
  for (const Complex& l : lambdas) norm2 += std::norm(l);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw PreconditionError("scalar_spherical_tuple: sum |lambda_i|^2 must be 1 (got " + std::to_string(norm2) + ")");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(lambdas.size());
  for (const Complex& l : lambdas) ops.push_back(l * ComplexMatrix::identity(k));
  return OperatorTuple(std::move(ops), "spherical(k=" + std::to_string(k) + ")");
}

OperatorTuple fock_dshift_sum(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  return direct_sum(fock_creation(d, levels, limits), symmetric_fock_shift(d, levels, limits));
}

OperatorTuple dshift_spherical_sum(std::size_t levels, std::span<const Complex> lambdas, std::size_t k,
                                   const SizeLimits& limits) {
  return direct_sum(symmetric_fock_shift(lambdas.size(), levels, limits), scalar_spherical_tuple(lambdas, k));
}

OperatorTuple fock_ampliation(std::size_t d, std::size_t levels, std::size_t m, const SizeLimits& limits) {
  if (m == 0) throw PreconditionError("fock_ampliation: m must be at least 1");
  const OperatorTuple v = fock_creation(d, levels, limits);
  if (v.dim() * m > limits.max_model_dim) throw ResourceError("fock_ampliation: dimension exceeds the size cap");
  const ComplexMatrix eye = ComplexMatrix::identity(m);
  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (const auto& vi : v.ops()) ops.push_back(kron(vi, eye));
  return OperatorTuple(std::move(ops), v.label() + "(x)I" + std::to_string(m));
}

OperatorTuple random_contractive(std::size_t d, std::size_t h, std::size_t defect_rank, std::uint64_t seed) {
  require_arity(d, "random_contractive");
  if (h == 0) throw PreconditionError("random_contractive: h must be at least 1");
  if (defect_rank > h) throw PreconditionError("random_contractive: defect_rank must not exceed h");
  SplitMix64 rng(seed);
  const ComplexMatrix w = haar_unitary(h, rng);
  const ComplexMatrix u = haar_unitary(d * h, rng);

  ComplexMatrix ws = w;
  for (std::size_t c = h - defect_rank; c < h; ++c) {
    const double s = rng.uniform(0.2, 0.9);
    for (std::size_t r = 0; r < h; ++r) ws(r, c) *= s;
  }
  // R = W Sigma U^H; only the first h columns of U meet a nonzero singular value.
  const ComplexMatrix row = multiply_adjoint(ws, u.columns(0, h));

  std::vector<ComplexMatrix> ops;
  ops.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ops.push_back(row.block(0, i * h, h, h));
  return OperatorTuple(std::move(ops), "random(d=" + std::to_string(d) + ",h=" + std::to_string(h) + ",rank=" +
                                           std::to_string(defect_rank) + ",seed=" + std::to_string(seed) + ")");
}

Subspace coinvariant_subspace(const OperatorTuple& t, const ComplexMatrix& generators, const RankTolerance& tol) {
  if (generators.rows() != t.dim()) throw DimensionError("coinvariant_subspace: generator length mismatch");
  Subspace m = orthonormal_range(generators, tol);
  ComplexMatrix frontier = m.basis();
  while (frontier.cols() > 0 && m.dim() < t.dim()) {
    std::vector<ComplexMatrix> images;
    images.reserve(t.arity());
    for (const auto& op : t.ops()) images.push_back(adjoint_multiply(op, frontier));
    Subspace next = subspace_extend(m, hstack(images), tol);
    frontier = next.basis().columns(m.dim(), next.dim() - m.dim());
    m = std::move(next);
  }
  if (m.dim() == t.dim()) return Subspace::full(t.dim(), tol);
  return m;
}

OperatorTuple random_coinvariant_compression(std::size_t d, std::size_t levels, std::size_t n_generators,
                                             std::uint64_t seed, const SizeLimits& limits) {
  if (n_generators == 0) throw PreconditionError("random_coinvariant_compression: need at least one generator");
  const OperatorTuple v = fock_creation(d, levels, limits);
  SplitMix64 rng(seed);
  std::vector<ComplexMatrix> gens;
  gens.reserve(n_generators);
  for (std::size_t g = 0; g < n_generators; ++g) gens.push_back(random_unit_vector(v.dim(), rng));
  const Subspace m = coinvariant_subspace(v, hstack(gens));
  return compress(v, m).with_label("random-coinv(d=" + std::to_string(d) + ",L=" + std::to_string(levels) +
                                   ",gens=" + std::to_string(n_generators) + ",seed=" + std::to_string(seed) + ")");
}

Subspace z1_ideal_subspace(std::size_t d, std::size_t levels, const SizeLimits& limits) {
  const std::size_t h = symmetric_dimension(d, levels, limits);
  std::vector<std::size_t> keep;
  std::size_t idx = 0;
  for (std::size_t k = 0; k <= levels; ++k)
    for (const auto& m : monomials(d, k)) {
      if (m.exponents[0] >= 1) keep.push_back(idx);
      ++idx;
    }
  return Subspace(basis_columns(h, keep));
}

IdealDefectExperiment z1_ideal_experiment(std::size_t d, std::size_t levels, const RankTolerance& tol,
                                          const SizeLimits& limits) {
  const OperatorTuple s = symmetric_fock_shift(d, levels, limits);
  const Subspace m = z1_ideal_subspace(d, levels, limits);
  const OperatorTuple restricted = compress(s, m);
  const ComplexMatrix defect = hermitian_part(ComplexMatrix::identity(m.dim()) - cp_iterate(restricted, 1));

  std::vector<std::size_t> below_top;
  const std::size_t top_offset = symmetric_level_offset(d, levels);
  for (std::size_t c = 0; c < m.dim(); ++c) {
    std::size_t ambient = 0;
    while (m.basis()(ambient, c) == Complex(0.0, 0.0)) ++ambient;
    if (ambient < top_offset) below_top.push_back(c);
  }
  ComplexMatrix sub(below_top.size(), below_top.size());
  for (std::size_t a = 0; a < below_top.size(); ++a)
    for (std::size_t b = 0; b < below_top.size(); ++b) sub(a, b) = defect(below_top[a], below_top[b]);

  IdealDefectExperiment e;
  e.ambient_dim = s.dim();
  e.subspace_dim = m.dim();
  e.defect_rank = numerical_rank(defect, tol);
  e.defect_rank_below_top = numerical_rank(sub, tol);
  return e;
}

}  // namespace defseq
