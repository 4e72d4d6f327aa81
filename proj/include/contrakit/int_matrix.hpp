#pragma once

#include "integer.hpp"

#include <cassert>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace contrakit {

using IntVec = std::vector<Int>;

/// Dense row-major matrix over the integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto &row : init) {
      assert(row.size() == cols_);
      for (auto v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<IntVec> &rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const IntVec &d, std::size_t r, std::size_t c) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < d.size() && i < r && i < c; ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const IntVec &v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  std::vector<IntVec> to_rows() const {
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int &q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int &q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (auto &v : data_)
      if (v != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    assert(a.cols_ == b.rows_);
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int &x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix &b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix &b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend IntMatrix operator*(const Int &k, IntMatrix a) {
    for (auto &v : a.data_) v *= k;
    return a;
  }
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Stack vertically; column counts must agree (an empty operand is skipped).
  static IntMatrix vstack(const IntMatrix &a, const IntMatrix &b) {
    if (a.rows_ == 0 && a.cols_ == 0) return b;
    if (b.rows_ == 0 && b.cols_ == 0) return a;
    assert(a.cols_ == b.cols_);
    IntMatrix c(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) c(a.rows_ + i, j) = b(i, j);
    return c;
  }
  static IntMatrix hstack(const IntMatrix &a, const IntMatrix &b) {
    assert(a.rows_ == b.rows_);
    IntMatrix c(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }
  /// Block diagonal sum.
  static IntMatrix block_diag(const IntMatrix &a, const IntMatrix &b) {
    IntMatrix c(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) c(a.rows_ + i, a.cols_ + j) = b(i, j);
    return c;
  }

  IntMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    IntMatrix s(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) s(i - r0, j - c0) = (*this)(i, j);
    return s;
  }

  friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// Row vector times matrix.
inline IntVec vec_mul(const IntVec &x, const IntMatrix &m) {
  assert(x.size() == m.rows());
  IntVec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

inline bool is_zero(const IntVec &v) {
  for (auto &x : v)
    if (x != 0) return false;
  return true;
}

} // namespace contrakit
