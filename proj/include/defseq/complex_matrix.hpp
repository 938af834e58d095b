#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace defseq {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Every operator in the library is carried by
/// one of these. Entries are always finite; zero-sized shapes are allowed so
/// that an empty subspace basis (h x 0) is representable.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws PreconditionError on a size mismatch or a non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }
  const Complex* data() const noexcept { return data_.data(); }
  Complex* data() noexcept { return data_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix column(std::size_t c) const { return columns(c, 1); }
  ComplexMatrix columns(std::size_t first, std::size_t count) const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& src);

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
/// Matrix product through the dispatched gemm kernel.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
/// a * b^H without forming the adjoint at the call site.
ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
/// a^H * b.
ComplexMatrix adjoint_multiply(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// (A + A^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// max |A - A^H| entrywise.
double hermitian_defect(const ComplexMatrix& a);

ComplexMatrix hstack(std::span<const ComplexMatrix> blocks);
ComplexMatrix vstack(std::span<const ComplexMatrix> blocks);
ComplexMatrix block_diagonal(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace defseq
