#pragma once

// Floating-point evaluation of level-N theta series
//   theta_mu(z) = sum_{n in Z^g} exp(2 pi i N [ 1/2 v^T Pi v + v^T z ]),  v = mu/N + n,
// and of their Hermitian inner product, for genus <= 2.

#include <cmath>
#include <complex>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/operators.hpp"

namespace thetatqft {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

class PeriodMatrix {
 public:
  explicit PeriodMatrix(std::vector<std::vector<cplx>> pi) : pi_(std::move(pi)) {
    const int g = genus();
    if (g < 1) throw DomainError("period matrix must be at least 1x1");
    for (const auto& r : pi_)
      if (static_cast<int>(r.size()) != g) throw DomainError("period matrix must be square");
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (std::abs(pi_[i][j] - pi_[j][i]) > 1e-12) throw DomainError("period matrix must be symmetric");
    // Cholesky of the imaginary part
    chol_.assign(g, std::vector<double>(g, 0.0));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = pi_[i][j].imag();
        for (int k = 0; k < j; ++k) s -= chol_[i][k] * chol_[j][k];
        if (i == j) {
          if (s <= 0) throw DomainError("imaginary part of the period matrix is not positive definite");
          chol_[i][i] = std::sqrt(s);
        } else {
          chol_[i][j] = s / chol_[j][j];
        }
      }
    det_im_ = 1.0;
    for (int i = 0; i < g; ++i) det_im_ *= chol_[i][i] * chol_[i][i];
    if (g == 1) {
      min_eig_ = pi_[0][0].imag();
    } else {
      double a = pi_[0][0].imag(), b = pi_[0][1].imag(), d = pi_[1][1].imag();
      min_eig_ = 0.5 * (a + d - std::sqrt((a - d) * (a - d) + 4 * b * b));
    }
  }

  int genus() const { return static_cast<int>(pi_.size()); }
  const cplx& operator()(int i, int j) const { return pi_[i][j]; }
  double im(int i, int j) const { return pi_[i][j].imag(); }
  double det_im() const { return det_im_; }
  double min_eigenvalue_im() const { return min_eig_; }

  // Period lattice vector lambda_k: e_k for k < g, Pi e_{k-g} otherwise.
  CVec lattice_vector(int k) const {
    const int g = genus();
    CVec v(g, 0.0);
    if (k < g) {
      v[k] = 1.0;
    } else {
      for (int i = 0; i < g; ++i) v[i] = pi_[i][k - g];
    }
    return v;
  }

 private:
  std::vector<std::vector<cplx>> pi_;
  std::vector<std::vector<double>> chol_;
  double det_im_ = 1.0, min_eig_ = 1.0;
};

struct ThetaValue {
  cplx value;
  double tail_bound;
};

inline ThetaValue theta_eval(const std::vector<long long>& mu, const PeriodMatrix& P, const CVec& z, int N,
                             int R = 30) {
  const int g = P.genus();
  if (R < 1) throw DomainError("theta_eval: truncation radius must be >= 1");
  if (static_cast<int>(mu.size()) != g || static_cast<int>(z.size()) != g)
    throw DomainError("theta_eval: dimension mismatch");
  if (g > 2) throw GuardError("theta_eval: genus > 2 not supported");
  const cplx I(0.0, 1.0);
  cplx sum = 0.0;
  std::vector<long long> n(g, -R);
  while (true) {
    std::vector<double> v(g);
    for (int i = 0; i < g; ++i) v[i] = double(floor_mod(mu[i], N)) / N + double(n[i]);
    cplx e = 0.0;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) e += 0.5 * v[i] * P(i, j) * v[j];
      e += v[i] * z[i];
    }
    sum += std::exp(2.0 * M_PI * I * double(N) * e);
    int i = 0;
    while (i < g && n[i] == R) n[i++] = -R;
    if (i == g) break;
    ++n[i];
  }
  // terms with |v|_inf > R decay like exp(-pi N lambda_min |v|^2 + 2 pi N |v| |Im z|)
  double imz = 0.0;
  for (const auto& x : z) imz += std::abs(x.imag());
  double r = R;
  double envelope = std::exp(-M_PI * N * P.min_eigenvalue_im() * r * r + 2 * M_PI * N * r * imz);
  double tail = envelope * 4.0 * g * std::pow(2.0 * r + 3.0, g - 1);
  return {sum, tail};
}

// <<theta_mu, theta_nu>> by tensor-product trapezoid quadrature over z = x + Pi y, (x, y) in [0,1]^{2g}.
inline std::vector<CVec> theta_gram(const PeriodMatrix& P, int N, int grid, int R = 20) {
  const int g = P.genus();
  if (g > 2) throw GuardError("theta_gram: genus > 2 not supported");
  if (grid < 2) throw DomainError("theta_gram: grid must be >= 2");
  const long long dim = int_pow(N, g);
  const long long nodes = int_pow(grid, 2 * g);
  std::vector<CVec> gram(dim, CVec(dim, 0.0));
  std::vector<long long> idx(2 * g, 0);
  for (long long node = 0; node < nodes; ++node) {
    long long rest = node;
    for (int k = 0; k < 2 * g; ++k) {
      idx[k] = rest % grid;
      rest /= grid;
    }
    std::vector<double> x(g), y(g);
    for (int i = 0; i < g; ++i) {
      x[i] = double(idx[i]) / grid;
      y[i] = double(idx[g + i]) / grid;
    }
    CVec z(g);
    for (int i = 0; i < g; ++i) {
      z[i] = x[i];
      for (int j = 0; j < g; ++j) z[i] += P(i, j) * y[j];
    }
    double quad = 0.0;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) quad += y[i] * P.im(i, j) * y[j];
    double weight = std::exp(-2.0 * M_PI * N * quad);
    CVec vals(dim);
    for (long long m = 0; m < dim; ++m) vals[m] = theta_eval(multi_index(m, g, N), P, z, N, R).value;
    for (long long a = 0; a < dim; ++a)
      for (long long b = 0; b < dim; ++b) gram[a][b] += vals[a] * std::conj(vals[b]) * weight;
  }
  const double norm = std::pow(2.0 * N, g / 2.0) * std::sqrt(P.det_im()) / double(nodes);
  for (auto& row : gram)
    for (auto& v : row) v *= norm;
  return gram;
}

// Quasi-periodicity residual of theta_mu along lambda_k.
inline double quasi_periodicity_residual(const std::vector<long long>& mu, const PeriodMatrix& P, const CVec& z,
                                         int N, int k, int R = 30) {
  const int g = P.genus();
  const cplx I(0.0, 1.0);
  CVec shifted = z;
  auto lam = P.lattice_vector(k);
  for (int i = 0; i < g; ++i) shifted[i] += lam[i];
  cplx lhs = theta_eval(mu, P, shifted, N, R).value;
  cplx factor = 1.0;
  if (k >= g) {
    int j = k - g;
    factor = std::exp(-2.0 * M_PI * I * double(N) * z[j] - M_PI * I * double(N) * P(j, j));
  }
  cplx rhs = factor * theta_eval(mu, P, z, N, R).value;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

// The operator O_pq on coefficient vectors in the theta basis, as complex numbers.
inline CVec apply_O_numeric(const std::vector<long long>& p, const std::vector<long long>& q, long long k, int N,
                            const CVec& coeffs) {
  const int g = static_cast<int>(p.size());
  CVec out(coeffs.size(), 0.0);
  for (size_t j = 0; j < coeffs.size(); ++j) {
    auto mu = multi_index(static_cast<long long>(j), g, N);
    double ph = double(k);
    for (int i = 0; i < g; ++i) ph -= double(p[i] * q[i]) + 2.0 * double(mu[i] * q[i]);
    for (int i = 0; i < g; ++i) mu[i] += p[i];
    out[basis_index(mu, N)] += std::polar(1.0, M_PI * ph / N) * coeffs[j];
  }
  return out;
}

inline cplx evaluate_theta_combination(const CVec& coeffs, const PeriodMatrix& P, const CVec& z, int N, int R) {
  cplx s = 0.0;
  for (size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0.0) s += coeffs[j] * theta_eval(multi_index(j, P.genus(), N), P, z, N, R).value;
  return s;
}

// Group-law coherence of the O_pq action on theta values: O_x O_y f and O_{xy} f agree at z.
inline double action_coherence_residual(const PeriodMatrix& P, int N, const std::vector<long long>& p1,
                                        const std::vector<long long>& q1, long long k1,
                                        const std::vector<long long>& p2, const std::vector<long long>& q2,
                                        long long k2, const CVec& f, const CVec& z, int R = 30) {
  CVec lhs = apply_O_numeric(p1, q1, k1, N, apply_O_numeric(p2, q2, k2, N, f));
  std::vector<long long> p(p1.size()), q(q1.size());
  long long k = k1 + k2;
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = p1[i] + p2[i];
    q[i] = q1[i] + q2[i];
    k += p1[i] * q2[i] - p2[i] * q1[i];
  }
  CVec rhs = apply_O_numeric(p, q, k, N, f);
  cplx a = evaluate_theta_combination(lhs, P, z, N, R), b = evaluate_theta_combination(rhs, P, z, N, R);
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace thetatqft
