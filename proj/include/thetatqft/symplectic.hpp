#pragma once

// Symplectic linear algebra on H_1(Sigma_g) in coordinates (p_1..p_g, q_1..q_g),
// i.e. x = sum p_i a_i + q_i b_i with omega(a_i, b_j) = delta_ij.

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/matrix.hpp"

namespace thetatqft {

template <class T>
T omega(const std::vector<T>& x, const std::vector<T>& y) {
  const size_t g = x.size() / 2;
  T s = 0;
  for (size_t i = 0; i < g; ++i) s += x[i] * y[g + i] - x[g + i] * y[i];
  return s;
}

inline IntMatrix symplectic_form(int g) {
  IntMatrix J(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = -1;
  }
  return J;
}

inline bool is_symplectic(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2) return false;
  IntMatrix J = symplectic_form(m.rows() / 2);
  return m.transpose() * J * m == J;
}

inline IntMatrix symplectic_inverse(const IntMatrix& m) {
  IntMatrix J = symplectic_form(m.rows() / 2);
  return -(J * m.transpose() * J);
}

// Signature of a symmetric rational matrix by congruence diagonalization.
inline int signature(RatMatrix a) {
  if (!a.is_symmetric()) throw DomainError("signature: matrix is not symmetric");
  const int n = a.rows();
  int sig = 0;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (sgn(a(i, i)) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // all remaining diagonal entries vanish: fold a nonzero off-diagonal entry into the diagonal
      int bi = -1, bj = -1;
      for (int i = k; i < n && bi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      for (int j = 0; j < n; ++j) a(bi, j) += a(bj, j);
      for (int i = 0; i < n; ++i) a(i, bi) += a(i, bj);
      p = bi;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, p), a(i, k));
    }
    const mpq_class d = a(k, k);
    sig += sgn(d) > 0 ? 1 : -1;
    for (int i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      mpq_class f = a(i, k) / d;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      a(i, k) = 0;
    }
    for (int j = k + 1; j < n; ++j) a(k, j) = 0;
  }
  return sig;
}

inline int signature(const IntMatrix& a) { return signature(to_rational(a)); }

// Lagrangian subspaces are given by spanning columns in Q^{2g}.
inline bool is_isotropic(const RatMatrix& span) {
  for (int i = 0; i < span.cols(); ++i)
    for (int j = i + 1; j < span.cols(); ++j)
      if (sgn(omega(span.column(i), span.column(j))) != 0) return false;
  return true;
}

inline bool is_lagrangian(const RatMatrix& span) {
  if (span.rows() % 2) return false;
  return is_isotropic(span) && rank(span) == span.rows() / 2;
}

inline void require_lagrangian(const RatMatrix& span, const char* what) {
  if (!is_lagrangian(span)) throw DomainError(std::string(what) + ": not a Lagrangian subspace");
}

// Integer Lagrangian subgroup: isotropic, rank g, and a direct summand of Z^{2g}
// (gcd of the maximal minors of a basis is 1).
inline bool is_integer_lagrangian(const IntMatrix& span) {
  RatMatrix q = to_rational(span);
  if (!is_lagrangian(q)) return false;
  const int n = span.rows(), g = n / 2;
  mpz_class acc = 0;
  auto minor = [&](const std::vector<int>& r, const std::vector<int>& c) {
    RatMatrix m(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) m(i, j) = q(r[i], c[j]);
    return determinant(m);
  };
  std::vector<bool> rmask(n, false), cmask(span.cols(), false);
  std::fill(rmask.begin(), rmask.begin() + g, true);
  do {
    std::vector<int> r;
    for (int i = 0; i < n; ++i)
      if (rmask[i]) r.push_back(i);
    std::fill(cmask.begin(), cmask.end(), false);
    std::fill(cmask.begin(), cmask.begin() + g, true);
    do {
      std::vector<int> c;
      for (int j = 0; j < span.cols(); ++j)
        if (cmask[j]) c.push_back(j);
      mpq_class d = minor(r, c);
      mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), d.get_num_mpz_t());
      if (acc == 1) return true;
    } while (std::prev_permutation(cmask.begin(), cmask.end()));
  } while (std::prev_permutation(rmask.begin(), rmask.end()));
  return acc == 1;
}

// span(b_1..b_g), the standard Lagrangian.
inline RatMatrix standard_lagrangian(int g) {
  RatMatrix m(2 * g, g);
  for (int i = 0; i < g; ++i) m(g + i, i) = 1;
  return m;
}

// span(a_1..a_g).
inline RatMatrix meridian_lagrangian(int g) {
  RatMatrix m(2 * g, g);
  for (int i = 0; i < g; ++i) m(i, i) = 1;
  return m;
}

inline RatMatrix act(const IntMatrix& h, const RatMatrix& span) { return to_rational(h) * span; }

// Maslov index tau(L1, L2, L3): signature of (x1+x2, y3) |-> omega(x2, y3) on (L1+L2) cap L3.
// `reverse_solver` picks the kernel basis from the column order [L2 L1 -L3] instead,
// which yields different decompositions x3 = x1 + x2.
inline int maslov(const RatMatrix& l1, const RatMatrix& l2, const RatMatrix& l3, bool reverse_solver = false) {
  require_lagrangian(l1, "maslov L1");
  require_lagrangian(l2, "maslov L2");
  require_lagrangian(l3, "maslov L3");
  RatMatrix b1 = column_basis(l1), b2 = column_basis(l2), b3 = column_basis(l3);
  const int n = b1.rows(), g = b1.cols();
  RatMatrix sys = reverse_solver ? RatMatrix::hcat(RatMatrix::hcat(b2, b1), -b3)
                                 : RatMatrix::hcat(RatMatrix::hcat(b1, b2), -b3);
  RatMatrix ker = kernel(sys);
  const int k = ker.cols();
  std::vector<std::vector<mpq_class>> x2(k, std::vector<mpq_class>(n, 0)), x3 = x2;
  const int off2 = reverse_solver ? 0 : g;
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < g; ++j) {
        x2[c][i] += b2(i, j) * ker(off2 + j, c);
        x3[c][i] += b3(i, j) * ker(2 * g + j, c);
      }
  RatMatrix form(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) form(i, j) = omega(x2[i], x3[j]);
  if (!form.is_symmetric()) throw ConsistencyError("maslov: defining form is not symmetric");
  return signature(form);
}

inline IntMatrix transvection(const std::vector<long long>& cls, int sign) {
  if (cls.size() % 2) throw DomainError("transvection: class has odd length");
  if (sign != 1 && sign != -1) throw DomainError("transvection: sign must be +1 or -1");
  long long g = 0;
  for (long long c : cls) g = std::gcd(g, c);
  if (g != 1) throw DomainError("transvection: class is not primitive");
  const int n = static_cast<int>(cls.size()), h = n / 2;
  // x |-> x + sign * omega(x, c) c, with omega(x, c) = sum_i x_i c_{h+i} - x_{h+i} c_i
  IntMatrix m = IntMatrix::identity(n);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < h; ++i) {
      m(r, i) += sign * cls[r] * cls[h + i];
      m(r, h + i) -= sign * cls[r] * cls[i];
    }
  return m;
}

}  // namespace thetatqft
