#include "defseq/tuple.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "defseq/errors.hpp"

namespace defseq {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const char* who) {
  std::size_t value = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && value > cap / base) {
      throw ResourceError(std::string(who) + ": " + std::to_string(base) + "^" + std::to_string(exp) +
                          " exceeds the size cap " + std::to_string(cap));
    }
    value *= base;
  }
  if (value > cap) throw ResourceError(std::string(who) + ": exceeds the size cap " + std::to_string(cap));
  return value;
}

void require_hermitian_square(const ComplexMatrix& x, std::size_t h, const char* who) {
  if (x.rows() != h || x.cols() != h) {
    throw DimensionError(std::string(who) + ": expected " + std::to_string(h) + "x" + std::to_string(h) +
                         " operand, got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  if (hermitian_defect(x) > 1e-10 * (1.0 + max_abs(x))) {
    throw PreconditionError(std::string(who) + ": operand is not Hermitian");
  }
}

bool images_contained(const std::vector<ComplexMatrix>& ops, bool adjoint, const Subspace& m,
                      const RankTolerance& tol) {
  if (m.dim() == 0) return true;
  for (const auto& op : ops) {
    const ComplexMatrix image = adjoint ? adjoint_multiply(op, m.basis()) : op * m.basis();
    // Each image column must lie in M up to the containment slack.
    const ComplexMatrix residual = image - m.basis() * adjoint_multiply(m.basis(), image);
    const double slack = std::max(tol.rtol, tol.atol);
    for (std::size_t c = 0; c < image.cols(); ++c) {
      double res2 = 0.0, norm2 = 0.0;
      for (std::size_t r = 0; r < image.rows(); ++r) {
        res2 += std::norm(residual(r, c));
        norm2 += std::norm(image(r, c));
      }
      if (std::sqrt(res2) > slack * (1.0 + std::sqrt(norm2))) return false;
    }
  }
  return true;
}

}  // namespace

SizeLimits SizeLimits::from_environment() {
  SizeLimits limits;
  const auto read = [](const char* name, std::size_t& field) {
    const char* env = std::getenv(name);
    if (!env) return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) field = static_cast<std::size_t>(v);
  };
  read("DEFSEQ_MAX_WORDS", limits.max_words);
  read("DEFSEQ_MAX_ROW_WIDTH", limits.max_row_width);
  read("DEFSEQ_MAX_COMMUTANT_DIM", limits.max_commutant_dim);
  read("DEFSEQ_MAX_MODEL_DIM", limits.max_model_dim);
  return limits;
}

std::string Word::to_string() const {
  if (letters.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(letters[i] + 1);
  }
  return s + ")";
}

std::vector<Word> all_words(std::size_t d, std::size_t n) {
  std::vector<Word> words;
  const std::size_t count = checked_power(d, n, static_cast<std::size_t>(-1) / 2, "all_words");
  words.reserve(count);
  Word w{std::vector<std::size_t>(n, 0)};
  for (std::size_t idx = 0; idx < count; ++idx) {
    words.push_back(w);
    for (std::size_t pos = n; pos-- > 0;) {
      if (++w.letters[pos] < d) break;
      w.letters[pos] = 0;
    }
  }
  return words;
}

OperatorTuple::OperatorTuple(std::vector<ComplexMatrix> ops, std::string label)
    : ops_(std::move(ops)), label_(std::move(label)) {
  if (ops_.empty()) throw PreconditionError("OperatorTuple: arity must be at least 1");
  const std::size_t h = ops_.front().rows();
  if (h == 0) throw PreconditionError("OperatorTuple: dimension must be at least 1");
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].rows() != h || ops_[i].cols() != h) {
      throw DimensionError("OperatorTuple: operator " + std::to_string(i + 1) + " is " +
                           std::to_string(ops_[i].rows()) + "x" + std::to_string(ops_[i].cols()) +
                           ", expected " + std::to_string(h) + "x" + std::to_string(h));
    }
  }
}

OperatorTuple OperatorTuple::zero(std::size_t d, std::size_t h, std::string label) {
  return OperatorTuple(std::vector<ComplexMatrix>(d, ComplexMatrix(h, h)), std::move(label));
}

OperatorTuple OperatorTuple::with_label(std::string label) const {
  OperatorTuple copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

ComplexMatrix apply_cp_map(const OperatorTuple& t, const ComplexMatrix& x) {
  const std::size_t h = t.dim();
  require_hermitian_square(x, h, "apply_cp_map");
  ComplexMatrix sum(h, h);
  for (const auto& op : t.ops()) sum += op * multiply_adjoint(x, op);
  return hermitian_part(sum);
}

ComplexMatrix cp_iterate(const OperatorTuple& t, std::size_t n) {
  ComplexMatrix x = ComplexMatrix::identity(t.dim());
  for (std::size_t k = 0; k < n; ++k) x = apply_cp_map(t, x);
  return x;
}

OperatorTuple tuple_product(const OperatorTuple& b, const OperatorTuple& c) {
  if (b.dim() != c.dim()) {
    throw DimensionError("tuple_product: dimensions " + std::to_string(b.dim()) + " and " +
                         std::to_string(c.dim()));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(b.arity() * c.arity());
  for (const auto& bi : b.ops())
    for (const auto& cj : c.ops()) ops.push_back(bi * cj);
  return OperatorTuple(std::move(ops), b.label() + "*" + c.label());
}

OperatorTuple tuple_power(const OperatorTuple& t, std::size_t n, const SizeLimits& limits) {
  if (n == 0) throw PreconditionError("tuple_power: exponent must be at least 1");
  checked_power(t.arity(), n, limits.max_words, "tuple_power");
  OperatorTuple power = t;
  for (std::size_t k = 1; k < n; ++k) power = tuple_product(power, t);
  return power.with_label(t.label() + "^" + std::to_string(n));
}

ComplexMatrix word_apply(const OperatorTuple& t, const Word& w) {
  ComplexMatrix result = ComplexMatrix::identity(t.dim());
  for (const std::size_t letter : w.letters) {
    if (letter >= t.arity()) {
      throw PreconditionError("word_apply: letter " + std::to_string(letter + 1) + " out of range 1.." +
                              std::to_string(t.arity()));
    }
    result = result * t[letter];
  }
  return result;
}

ComplexMatrix row_operator(const OperatorTuple& t) { return hstack(t.ops()); }

OperatorTuple direct_sum(const OperatorTuple& a, const OperatorTuple& b) {
  if (a.arity() != b.arity()) {
    throw DimensionError("direct_sum: arities " + std::to_string(a.arity()) + " and " +
                         std::to_string(b.arity()));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) ops.push_back(block_diagonal(a[i], b[i]));
  return OperatorTuple(std::move(ops), a.label() + "+" + b.label());
}

OperatorTuple compress(const OperatorTuple& t, const Subspace& m) {
  if (m.ambient_dim() != t.dim()) {
    throw DimensionError("compress: subspace lives in C^" + std::to_string(m.ambient_dim()) +
                         ", tuple acts on C^" + std::to_string(t.dim()));
  }
  if (m.dim() == 0) throw PreconditionError("compress: zero subspace");
  std::vector<ComplexMatrix> ops;
  ops.reserve(t.arity());
  for (const auto& op : t.ops()) ops.push_back(adjoint_multiply(m.basis(), op * m.basis()));
  return OperatorTuple(std::move(ops), t.label() + "|M");
}

double max_commutator_norm(const OperatorTuple& t) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.arity(); ++i)
    for (std::size_t j = i + 1; j < t.arity(); ++j)
      worst = std::max(worst, spectral_norm(t[i] * t[j] - t[j] * t[i]));
  return worst;
}

bool is_commuting(const OperatorTuple& t, const RankTolerance& tol) {
  double norm2 = 0.0;
  for (const auto& op : t.ops()) norm2 = std::max(norm2, spectral_norm(op));
  return max_commutator_norm(t) <= tol.rtol * (1.0 + norm2 * norm2);
}

bool is_invariant(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol) {
  if (m.ambient_dim() != t.dim()) throw DimensionError("is_invariant: dimension mismatch");
  return images_contained(t.ops(), false, m, tol);
}

bool is_coinvariant(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol) {
  if (m.ambient_dim() != t.dim()) throw DimensionError("is_coinvariant: dimension mismatch");
  return images_contained(t.ops(), true, m, tol);
}

bool is_reducing(const OperatorTuple& t, const Subspace& m, const RankTolerance& tol) {
  return is_invariant(t, m, tol) && is_coinvariant(t, m, tol);
}

}  // namespace defseq
