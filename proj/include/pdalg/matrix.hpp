#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdalg/errors.hpp"
#include "pdalg/rational.hpp"

namespace pdalg {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Vectors become rows.
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("row length differs from column count");
      std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> entries() const noexcept { return entries_; }
  std::span<const Rational> row(std::size_t r) const {
    return std::span<const Rational>(entries_).subspan(r * cols_, cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return pdalg::is_zero(x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix s = a;
    for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] += b.entries_[i];
    return s;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix s = a;
    for (std::size_t i = 0; i < s.entries_.size(); ++i) s.entries_[i] -= b.entries_[i];
    return s;
  }

  friend Matrix operator*(const Rational& k, const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.entries_) x *= k;
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const Rational& x = a(i, l);
        if (pdalg::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(l, j);
      }
    return p;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

inline Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product: length mismatch");
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_zero(v[c])) out[r] += m(r, c) * v[c];
  return out;
}

/// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss-Jordan elimination. The result is unique for the row space of `m`.
inline EchelonForm row_reduce(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != next)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(p, k), m(next, k));
    const Rational scale = inverse(m(next, c));
    for (std::size_t k = c; k < cols; ++k) m(next, k) *= scale;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || is_zero(m(r, c))) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < cols; ++k)
        if (!is_zero(m(next, k))) m(r, k) -= factor * m(next, k);
    }
    pivots.push_back(c);
    ++next;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

inline Matrix invert(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("invert: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  Matrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = 1;
  }
  const EchelonForm ef = row_reduce(std::move(augmented));
  if (ef.rank() < n || ef.pivots[n - 1] != n - 1) throw SingularMatrix();
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ef.reduced(r, n + c);
  return inv;
}

/// Canonical basis of span(vectors): the nonzero rows of their reduced echelon form.
inline std::vector<Vector> echelon_basis(std::span<const Vector> vectors, std::size_t length) {
  if (vectors.empty()) return {};
  const EchelonForm ef = row_reduce(Matrix::from_rows(vectors, length));
  std::vector<Vector> basis;
  basis.reserve(ef.rank());
  for (std::size_t r = 0; r < ef.rank(); ++r) {
    const auto row = ef.reduced.row(r);
    basis.emplace_back(row.begin(), row.end());
  }
  return basis;
}

namespace detail {

inline std::vector<Vector> kernel_from_echelon(const EchelonForm& ef, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  std::vector<Vector> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, f);
    kernel.push_back(std::move(v));
  }
  return echelon_basis(kernel, cols);
}

}  // namespace detail

/// Basis of {v : m v = 0}, echelon-normalized so equal kernels compare equal.
inline std::vector<Vector> nullspace(const Matrix& m) {
  return detail::kernel_from_echelon(row_reduce(m), m.cols());
}

struct Solution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// One solution of m x = b (free variables set to zero) plus the kernel; nullopt if inconsistent.
inline std::optional<Solution> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length differs from rows");
  const std::size_t cols = m.cols();
  Matrix augmented(m.rows(), cols + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) augmented(r, c) = m(r, c);
    augmented(r, cols) = b[r];
  }
  EchelonForm ef = row_reduce(std::move(augmented));
  if (!ef.pivots.empty() && ef.pivots.back() == cols) return std::nullopt;

  Vector particular(cols);
  for (std::size_t r = 0; r < ef.pivots.size(); ++r) particular[ef.pivots[r]] = ef.reduced(r, cols);

  Matrix coefficient(ef.reduced.rows(), cols);
  for (std::size_t r = 0; r < ef.reduced.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) coefficient(r, c) = ef.reduced(r, c);
  return Solution{std::move(particular), detail::kernel_from_echelon({std::move(coefficient), ef.pivots}, cols)};
}

inline bool in_span(std::span<const Vector> basis, const Vector& v) {
  const std::size_t length = v.size();
  std::vector<Vector> columns(basis.begin(), basis.end());
  Matrix a(length, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != length) throw DimensionMismatch("in_span: vector length mismatch");
    for (std::size_t r = 0; r < length; ++r) a(r, c) = columns[c][r];
  }
  return solve(a, v).has_value();
}

}  // namespace pdalg
