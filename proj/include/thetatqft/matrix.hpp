#pragma once

// Small dense matrices over Z and Q, with exact row reduction.

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <vector>

#include "thetatqft/errors.hpp"

namespace thetatqft {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& r : init) {
      if (static_cast<int>(r.size()) != cols_) throw ParseError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<T> column(int j) const {
    std::vector<T> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(int i) const {
    return std::vector<T>(data_.begin() + static_cast<size_t>(i) * cols_,
                          data_.begin() + static_cast<size_t>(i + 1) * cols_);
  }
  static Matrix from_columns(int rows, const std::vector<std::vector<T>>& columns) {
    Matrix m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix shape mismatch in sum");
    Matrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = -x;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DomainError("vector length mismatch");
    std::vector<T> out(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  // Stacks [a | b] side by side.
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw DomainError("hcat row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (int j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;
using RatMatrix = Matrix<mpq_class>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(static_cast<long>(m(i, j)));
  return r;
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    mpq_class inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      mpq_class f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

// Columns form a basis of the null space {x : m x = 0}.
inline RatMatrix kernel(RatMatrix m) {
  auto piv = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> v(m.cols(), 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
    basis.push_back(v);
  }
  return RatMatrix::from_columns(m.cols(), basis);
}

// A basis of the column space, chosen among the given columns.
inline RatMatrix column_basis(const RatMatrix& m) {
  RatMatrix w = m;
  auto piv = rref(w);
  std::vector<std::vector<mpq_class>> cols;
  for (int c : piv) cols.push_back(m.column(c));
  return RatMatrix::from_columns(m.rows(), cols);
}

// Solves m x = b; returns false if inconsistent.
inline bool solve(const RatMatrix& m, const std::vector<mpq_class>& b, std::vector<mpq_class>& x) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return false;
  x.assign(m.cols(), 0);
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), m.cols());
  return true;
}

inline mpq_class determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  mpq_class det = 1;
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      mpq_class f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

}  // namespace thetatqft
