#pragma once

// Reference computations for the tests. Everything here is written from the
// definitions with plain loops and std containers, without calling into the
// library's linear-algebra or model code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "defseq/complex_matrix.hpp"
#include "defseq/tuple.hpp"

namespace oracle {

using defseq::Complex;
using defseq::ComplexMatrix;
using defseq::OperatorTuple;

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Every word of length n as a digit string, via an odometer.
inline std::vector<std::vector<std::size_t>> words(std::size_t d, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++w[pos] < d) break;
      w[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

/// T_w = T_{w_1} ... T_{w_n}.
inline ComplexMatrix word_product(const OperatorTuple& t, const std::vector<std::size_t>& w) {
  ComplexMatrix p = ComplexMatrix::identity(t.dim());
  for (auto letter : w) p = multiply(p, t[letter]);
  return p;
}

/// sum over |w| = n of T_w T_w^*.
inline ComplexMatrix word_sum(const OperatorTuple& t, std::size_t n) {
  ComplexMatrix s(t.dim(), t.dim());
  for (const auto& w : words(t.arity(), n)) {
    const ComplexMatrix tw = word_product(t, w);
    const ComplexMatrix term = multiply(tw, adjoint(tw));
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) += term(i, j);
  }
  return s;
}

/// Column rank by twice-orthogonalized Gram-Schmidt; a column counts when its
/// residual norm exceeds rel * (largest column norm).
inline std::size_t gram_schmidt_rank(const ComplexMatrix& m, double rel = 1e-8) {
  double scale = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) n2 += std::norm(m(i, j));
    scale = std::max(scale, std::sqrt(n2));
  }
  if (scale == 0.0) return 0;
  std::vector<std::vector<Complex>> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Complex> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
      }
    }
    double n2 = 0.0;
    for (auto x : v) n2 += std::norm(x);
    const double nv = std::sqrt(n2);
    if (nv > rel * scale) {
      for (auto& x : v) x /= nv;
      basis.push_back(std::move(v));
    }
  }
  return basis.size();
}

/// C(n, k) from Pascal's triangle.
inline std::uint64_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

inline std::uint64_t geometric(std::size_t d, std::size_t n, std::uint64_t delta) {
  std::uint64_t sum = 0, p = 1;
  for (std::size_t k = 0; k < n; ++k, p *= d) sum += p;
  return sum * delta;
}

inline std::uint64_t binomial_sum(std::size_t d, std::size_t n, std::uint64_t delta) {
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < n; ++k) sum += binom(k + d - 1, d - 1);
  return sum * delta;
}

/// Truncated Fock creation operators built from word strings: basis words
/// listed level by level in lexicographic order, V_i e_w = e_{iw}.
inline OperatorTuple fock(std::size_t d, std::size_t levels) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> basis;
  for (std::size_t k = 0; k <= levels; ++k) {
    for (const auto& w : words(d, k)) {
      index[w] = basis.size();
      basis.push_back(w);
    }
  }
  std::vector<ComplexMatrix> ops(d, ComplexMatrix(basis.size(), basis.size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t col = 0; col < basis.size(); ++col) {
      if (basis[col].size() == levels) continue;
      std::vector<std::size_t> iw{i};
      iw.insert(iw.end(), basis[col].begin(), basis[col].end());
      ops[i](index.at(iw), col) = 1.0;
    }
  }
  return OperatorTuple(std::move(ops));
}

/// Exponent vectors of degree k, descending lexicographic order.
inline std::vector<std::vector<std::size_t>> exponents(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(d, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == d) {
      a[pos] = left;
      out.push_back(a);
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      a[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

/// Truncated d-shift in the orthonormal monomial basis:
/// S_i e_a = sqrt((a_i + 1) / (|a| + 1)) e_{a + e_i}, zero at the top degree.
inline OperatorTuple dshift(std::size_t d, std::size_t levels) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> basis;
  for (std::size_t k = 0; k <= levels; ++k) {
    for (const auto& a : exponents(d, k)) {
      index[a] = basis.size();
      basis.push_back(a);
    }
  }
  std::vector<ComplexMatrix> ops(d, ComplexMatrix(basis.size(), basis.size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t col = 0; col < basis.size(); ++col) {
      std::size_t deg = 0;
      for (auto x : basis[col]) deg += x;
      if (deg == levels) continue;
      auto up = basis[col];
      ++up[i];
      ops[i](index.at(up), col) =
          std::sqrt(static_cast<double>(basis[col][i] + 1) / static_cast<double>(deg + 1));
    }
  }
  return OperatorTuple(std::move(ops));
}

}  // namespace oracle
