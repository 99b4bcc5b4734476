#pragma once

// Linear maps on C[Z_N^g] with exact Scalar entries.
// Basis vectors a^mu are indexed lexicographically, mu_1 most significant.

#include <string>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/scalar.hpp"

namespace thetatqft {

inline long long int_pow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int basis_index(const std::vector<long long>& mu, int N) {
  long long idx = 0;
  for (long long m : mu) idx = idx * N + floor_mod(m, N);
  return static_cast<int>(idx);
}

inline std::vector<long long> multi_index(long long idx, int g, int N) {
  std::vector<long long> mu(g);
  for (int i = g - 1; i >= 0; --i) {
    mu[i] = idx % N;
    idx /= N;
  }
  return mu;
}

// Element of C[Z_N^g]: theta functions, equivalently the skein module of a handlebody.
struct ThetaVector {
  int genus = 0;
  int level = 2;
  std::vector<Scalar> coeffs;

  ThetaVector() = default;
  ThetaVector(int g, int N) : genus(g), level(N), coeffs(int_pow(N, g), Scalar(N)) {}

  static ThetaVector basis(int g, int N, const std::vector<long long>& mu) {
    ThetaVector v(g, N);
    v.coeffs[basis_index(mu, N)] = Scalar::one(N);
    return v;
  }
  int dim() const { return static_cast<int>(coeffs.size()); }
  Scalar& operator[](int i) { return coeffs[i]; }
  const Scalar& operator[](int i) const { return coeffs[i]; }

  friend bool operator==(const ThetaVector& a, const ThetaVector& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
};

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(int rows, int cols, int level)
      : rows_(rows), cols_(cols), level_(level), data_(static_cast<size_t>(rows) * cols, Scalar(level)) {}

  static ScalarMatrix identity(int n, int level) {
    ScalarMatrix m(n, n, level);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(level);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int level() const { return level_; }
  Scalar& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("operator shape mismatch in product");
    ScalarMatrix c(a.rows_, b.cols_, a.level_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    return c;
  }

  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("operator shape mismatch in sum");
    ScalarMatrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend ScalarMatrix operator*(const Scalar& s, const ScalarMatrix& a) {
    ScalarMatrix c = a;
    for (auto& x : c.data_) x = s * x;
    return c;
  }

  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.data_.size(); ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }
  friend bool operator!=(const ScalarMatrix& a, const ScalarMatrix& b) { return !(a == b); }

  ScalarMatrix adjoint() const {
    ScalarMatrix c(cols_, rows_, level_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) c(j, i) = (*this)(i, j).conj();
    return c;
  }

  ThetaVector apply(const ThetaVector& v) const {
    if (v.dim() != cols_) throw DomainError("operator/vector dimension mismatch");
    ThetaVector out = v;
    for (int i = 0; i < rows_; ++i) {
      Scalar acc(level_);
      for (int j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) acc += (*this)(i, j) * v[j];
      out.coeffs[i] = acc;
    }
    return out;
  }

  static ScalarMatrix kron(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix c(a.rows_ * b.rows_, a.cols_ * b.cols_, a.level_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (int k = 0; k < b.rows_; ++k)
          for (int l = 0; l < b.cols_; ++l)
            if (!b(k, l).is_zero()) c(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return c;
  }

  bool is_unitary() const {
    return rows_ == cols_ && adjoint() * (*this) == identity(rows_, level_);
  }

 private:
  int rows_ = 0, cols_ = 0, level_ = 2;
  std::vector<Scalar> data_;
};

// Generalized permutation operator: column j has the single entry t^{phase[j]} in row target[j].
struct MonomialOp {
  int level = 2;
  std::vector<int> target;
  std::vector<long long> phase;  // t-exponent mod 2N

  int dim() const { return static_cast<int>(target.size()); }

  static MonomialOp identity(int n, int level) {
    MonomialOp m;
    m.level = level;
    m.target.resize(n);
    m.phase.assign(n, 0);
    for (int i = 0; i < n; ++i) m.target[i] = i;
    return m;
  }

  friend MonomialOp operator*(const MonomialOp& a, const MonomialOp& b) {
    if (a.dim() != b.dim()) throw DomainError("monomial operator dimension mismatch");
    MonomialOp c = b;
    for (int j = 0; j < b.dim(); ++j) {
      c.target[j] = a.target[b.target[j]];
      c.phase[j] = floor_mod(b.phase[j] + a.phase[b.target[j]], 2 * a.level);
    }
    return c;
  }

  friend bool operator==(const MonomialOp& a, const MonomialOp& b) {
    return a.level == b.level && a.target == b.target && a.phase == b.phase;
  }

  MonomialOp adjoint() const {
    MonomialOp c = *this;
    for (int j = 0; j < dim(); ++j) {
      c.target[target[j]] = j;
      c.phase[target[j]] = floor_mod(-phase[j], 2 * level);
    }
    return c;
  }

  ScalarMatrix dense() const {
    ScalarMatrix m(dim(), dim(), level);
    for (int j = 0; j < dim(); ++j) m(target[j], j) = Scalar::t_power(level, phase[j]);
    return m;
  }

  // this * m
  ScalarMatrix times(const ScalarMatrix& m) const {
    ScalarMatrix out(m.rows(), m.cols(), level);
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (!m(r, c).is_zero()) out(target[r], c) = m(r, c).times_t(phase[r]);
    return out;
  }

  // m * this
  ScalarMatrix times_right(const ScalarMatrix& m) const {
    ScalarMatrix out(m.rows(), m.cols(), level);
    for (int j = 0; j < dim(); ++j)
      for (int r = 0; r < m.rows(); ++r)
        if (!m(r, target[j]).is_zero()) out(r, j) = m(r, target[j]).times_t(phase[j]);
    return out;
  }

  ThetaVector apply(const ThetaVector& v) const {
    ThetaVector out = v;
    for (auto& c : out.coeffs) c = Scalar(level);
    for (int j = 0; j < dim(); ++j) out.coeffs[target[j]] = v.coeffs[j].times_t(phase[j]);
    return out;
  }
};

}  // namespace thetatqft
