#pragma once

// Multivariate quadratic Gauss sums
//   S(e) = sum_{j in Z_N^m} t^{x^T Q x},   x = (j, e, 1),
// reduced symbolically in the summed variables j so that S can be evaluated cheaply
// for many assignments of the external variables e.
//
// Reductions (all exact, N even):
//  - a constraint with a unit coefficient on a summed variable is solved for it and
//    substituted with an integer lift (the summand is N-periodic in every variable);
//  - a summed variable with Q_kk = 0 mod N and absent from the constraints is linear:
//    summing it gives N times the constraint sum_l Q_kl x_l + Q_kk/2 = 0 mod N;
//  - a summed variable with Q_kk a unit mod 2N and absent from the constraints is
//    removed by completing the square;
//  - whatever is left is enumerated.

#include <numeric>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/matrix.hpp"
#include "thetatqft/scalar.hpp"

namespace thetatqft {

inline long long inverse_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, r = floor_mod(a, m);
  while (r != 0) {
    long long q = g / r;
    long long t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw DomainError("inverse_mod: not invertible");
  return floor_mod(x, m);
}

class QuadraticSum {
 public:
  // Q is square of size summed + external + 1; the last variable is the constant 1.
  QuadraticSum(int level, const IntMatrix& Q, int summed, int external)
      : N_(level), m_(summed), p_(external), factor_(Scalar::one(level)) {
    const int n = m_ + p_ + 1;
    if (Q.rows() != n || Q.cols() != n) throw DomainError("QuadraticSum: form has the wrong size");
    if (!Q.is_symmetric()) throw DomainError("QuadraticSum: form is not symmetric");
    q_.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q_[i][j] = Q(i, j);
    live_.assign(m_, true);
    normalize();
    reduce();
  }

  bool is_zero() const { return zero_; }
  int residual_variables() const { return static_cast<int>(residual_.size()); }
  const Scalar& factor() const { return factor_; }

  Scalar evaluate(const std::vector<long long>& e) const {
    if (static_cast<int>(e.size()) != p_) throw DomainError("QuadraticSum: wrong number of external values");
    if (zero_) return Scalar(N_);
    const int n = m_ + p_ + 1;
    std::vector<long long> x(n, 0);
    for (int i = 0; i < p_; ++i) x[m_ + i] = floor_mod(e[i], N_);
    x[n - 1] = 1;
    const long long M = 2LL * N_;
    const int r = static_cast<int>(residual_.size());
    std::vector<long long> counts(M, 0);
    std::vector<long long> idx(r, 0);
    while (true) {
      for (int k = 0; k < r; ++k) x[residual_[k]] = idx[k];
      bool ok = true;
      for (const auto& c : cons_) {
        long long s = 0;
        for (int v = 0; v < n; ++v)
          if (c[v]) s += c[v] * x[v];
        if (floor_mod(s, N_) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        long long s = 0;
        for (int a = 0; a < n; ++a) {
          if (!x[a]) continue;
          s += floor_mod(q_[a][a] * x[a] % M * x[a], M);
          for (int b = a + 1; b < n; ++b)
            if (x[b] && q_[a][b]) s += 2 * floor_mod(q_[a][b] * x[a] % N_ * x[b], N_);
        }
        counts[floor_mod(s, M)]++;
      }
      int k = 0;
      while (k < r && idx[k] == N_ - 1) idx[k++] = 0;
      if (k == r) break;
      ++idx[k];
    }
    return Scalar::from_t_histogram(N_, counts) * factor_;
  }

 private:
  using Row = std::vector<long long>;

  void normalize() {
    const int n = m_ + p_ + 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q_[i][j] = floor_mod(q_[i][j], i == j ? 2LL * N_ : N_);
  }

  int n() const { return m_ + p_ + 1; }

  bool in_constraints(int k) const {
    for (const auto& c : cons_)
      if (c[k]) return true;
    return false;
  }

  // x_u := sum_{l != u} r_l x_l.
  void substitute(int u, const Row& r) {
    const int nn = n();
    const long long M = 2LL * N_;
    Row qu = q_[u];
    const long long quu = q_[u][u];
    for (int l = 0; l < nn; ++l) {
      if (l == u) continue;
      for (int mm = l; mm < nn; ++mm) {
        if (mm == u) continue;
        if (l == mm) {
          q_[l][l] = floor_mod(q_[l][l] + 2 * floor_mod(r[l] * qu[l], N_) + floor_mod(r[l] * r[l] % M * quu, M), M);
        } else {
          long long v = q_[l][mm] + r[l] * qu[mm] + r[mm] * qu[l] + floor_mod(r[l] * r[mm], N_) * quu;
          q_[l][mm] = q_[mm][l] = floor_mod(v, N_);
        }
      }
    }
    for (int l = 0; l < nn; ++l) q_[u][l] = q_[l][u] = 0;
    for (auto& c : cons_) {
      long long cu = c[u];
      if (!cu) continue;
      for (int l = 0; l < nn; ++l)
        if (l != u) c[l] = floor_mod(c[l] + r[l] * cu, N_);
      c[u] = 0;
    }
    live_[u] = false;
  }

  // Drops trivial constraints; returns false if one is unsatisfiable.
  bool tidy_constraints() {
    const int nn = n();
    std::vector<Row> kept;
    for (auto& c : cons_) {
      for (auto& v : c) v = floor_mod(v, N_);
      bool nonconst = false;
      for (int v = 0; v < nn - 1; ++v)
        if (c[v]) nonconst = true;
      if (!nonconst) {
        if (c[nn - 1] != 0) return false;
        continue;
      }
      kept.push_back(c);
    }
    cons_ = std::move(kept);
    return true;
  }

  void reduce() {
    const int nn = n();
    const long long M = 2LL * N_;
    bool progress = true;
    while (progress && !zero_) {
      progress = false;
      if (!tidy_constraints()) {
        zero_ = true;
        return;
      }
      // solve a constraint for a summed variable with unit coefficient
      for (size_t ci = 0; ci < cons_.size() && !progress; ++ci) {
        for (int u = 0; u < m_; ++u) {
          if (!live_[u] || !cons_[ci][u] || std::gcd(cons_[ci][u], (long long)N_) != 1) continue;
          const long long inv = inverse_mod(cons_[ci][u], N_);
          Row r(nn, 0);
          for (int l = 0; l < nn; ++l)
            if (l != u) r[l] = floor_mod(-inv * cons_[ci][l], N_);
          cons_.erase(cons_.begin() + ci);
          substitute(u, r);
          progress = true;
          break;
        }
      }
      if (progress) continue;
      for (int k = 0; k < m_ && !progress; ++k) {
        if (!live_[k] || in_constraints(k)) continue;
        const long long a = q_[k][k];
        if (a % N_ == 0) {
          // linear in x_k
          factor_ = factor_.times_integer(N_);
          Row c(nn, 0);
          for (int l = 0; l < nn; ++l)
            if (l != k) c[l] = q_[k][l];
          c[nn - 1] = floor_mod(c[nn - 1] + a / 2, N_);
          for (int l = 0; l < nn; ++l) q_[k][l] = q_[l][k] = 0;
          live_[k] = false;
          cons_.push_back(c);
          progress = true;
        } else if (std::gcd(a, M) == 1) {
          // complete the square: a x^2 + 2 x B = a (x + a' B)^2 - a' B^2
          std::vector<long long> hist(M, 0);
          for (long long j = 0; j < N_; ++j) hist[floor_mod(a * j % M * j, M)]++;
          factor_ = factor_ * Scalar::from_t_histogram(N_, hist);
          const long long ai = inverse_mod(a, M);
          Row qk = q_[k];
          for (int l = 0; l < nn; ++l) {
            if (l == k || !qk[l]) continue;
            for (int mm = l; mm < nn; ++mm) {
              if (mm == k || !qk[mm]) continue;
              if (l == mm)
                q_[l][l] = floor_mod(q_[l][l] - ai * (qk[l] * qk[l] % M), M);
              else
                q_[l][mm] = q_[mm][l] = floor_mod(q_[l][mm] - ai % N_ * (qk[l] * qk[mm] % N_), N_);
            }
          }
          for (int l = 0; l < nn; ++l) q_[k][l] = q_[l][k] = 0;
          live_[k] = false;
          progress = true;
        }
      }
    }
    if (zero_) return;
    for (int k = 0; k < m_; ++k)
      if (live_[k]) residual_.push_back(k);
    if (factor_.is_zero()) zero_ = true;
  }

  int N_, m_, p_;
  std::vector<Row> q_;
  std::vector<Row> cons_;
  std::vector<bool> live_;
  std::vector<int> residual_;
  Scalar factor_;
  bool zero_ = false;
};

// Independent direct enumeration, used as a test oracle and for tiny sums.
inline Scalar quadratic_sum_bruteforce(int level, const IntMatrix& Q, int summed, const std::vector<long long>& e) {
  const int n = summed + static_cast<int>(e.size()) + 1;
  const long long M = 2LL * level;
  std::vector<long long> x(n, 0), counts(M, 0);
  for (size_t i = 0; i < e.size(); ++i) x[summed + i] = e[i];
  x[n - 1] = 1;
  std::vector<long long> idx(summed, 0);
  while (true) {
    for (int k = 0; k < summed; ++k) x[k] = idx[k];
    long long s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += Q(a, b) * x[a] * x[b];
    counts[floor_mod(s, M)]++;
    int k = 0;
    while (k < summed && idx[k] == level - 1) idx[k++] = 0;
    if (k == summed) break;
    ++idx[k];
  }
  return Scalar::from_t_histogram(level, counts);
}

}  // namespace thetatqft
