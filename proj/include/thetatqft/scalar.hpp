#pragma once

// Exact elements of Q(zeta)[N^{1/2}] with zeta = exp(pi i / (4N)), N even.
//
// A Scalar is stored as N^{h/2} / den * P(zeta) where h is 0 or 1, den is a
// positive integer and P is an integer polynomial reduced modulo the 8N-th
// cyclotomic polynomial. Phi_{8N} divides x^{4N} + 1, so intermediate results
// live in Z[x]/(x^{4N}+1) where multiplying by a root of unity is a rotation.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "thetatqft/errors.hpp"

namespace thetatqft {

inline long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

class CyclotomicContext {
 public:
  static const CyclotomicContext& get(int level) {
    if (level < 2 || level % 2 != 0)
      throw DomainError("level N must be an even integer >= 2, got " + std::to_string(level));
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[level];
    if (!slot) slot.reset(new CyclotomicContext(level));
    return *slot;
  }

  int level() const { return level_; }
  int order() const { return 8 * level_; }
  int half_order() const { return 4 * level_; }
  int degree() const { return degree_; }
  const std::vector<long>& phi() const { return phi_; }
  // x^k mod Phi_{8N}, for 0 <= k < 4N.
  const std::vector<long>& reduction(int k) const { return reduction_[k]; }
  // Reduced coefficients of sqrt(N) as an element of Z[zeta].
  const std::vector<mpz_class>& sqrt_level() const { return sqrt_level_; }
  std::complex<double> power(long long k) const { return powers_[floor_mod(k, order())]; }

  // Reduces a negacyclic buffer of length 4N to length degree().
  void reduce(std::vector<mpz_class>& buf) const {
    const int d = degree_;
    for (int j = half_order() - 1; j >= d; --j) {
      if (sgn(buf[j]) == 0) continue;
      const auto& r = reduction_[j];
      for (int i = 0; i < d; ++i)
        if (r[i] != 0) buf[i] += buf[j] * r[i];
      buf[j] = 0;
    }
    buf.resize(d);
  }

 private:
  using Poly = std::vector<long>;

  explicit CyclotomicContext(int level) : level_(level) {
    const int M = order();
    phi_ = cyclotomic(M);
    degree_ = static_cast<int>(phi_.size()) - 1;
    reduction_.resize(half_order());
    Poly cur(degree_, 0);
    cur[0] = 1;
    for (int k = 0; k < half_order(); ++k) {
      reduction_[k] = cur;
      // multiply by x and reduce by the monic Phi
      long top = cur[degree_ - 1];
      for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1] - top * phi_[i];
      cur[0] = -top * phi_[0];
    }
    powers_.resize(M);
    for (int k = 0; k < M; ++k) powers_[k] = std::polar(1.0, M_PI * k / (4.0 * level_));
    // sqrt(N) = zeta^{-N} * sum_{j in Z_N} zeta^{4 j^2}
    std::vector<mpz_class> buf(half_order());
    for (long long j = 0; j < level_; ++j) {
      long long e = floor_mod(4 * j * j - level_, M);
      if (e >= half_order())
        buf[e - half_order()] -= 1;
      else
        buf[e] += 1;
    }
    reduce(buf);
    sqrt_level_ = buf;
  }

  static Poly poly_divide_exact(Poly num, const Poly& den) {
    const int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    Poly q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
      long c = num[i] / den[dd];
      q[i - dd] = c;
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return q;
  }

  static Poly cyclotomic(int n) {
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) p = poly_divide_exact(p, cyclotomic(d));
    return p;
  }

  int level_;
  int degree_ = 0;
  Poly phi_;
  std::vector<Poly> reduction_;
  std::vector<mpz_class> sqrt_level_;
  std::vector<std::complex<double>> powers_;
};

struct CanonicalScalar {
  int level = 0;
  int half_n = 0;
  std::vector<mpq_class> coeffs;  // coefficient of zeta^k, k < phi(8N)
};

class Scalar {
 public:
  // The zero element, compatible with every level.
  Scalar() = default;
  explicit Scalar(int level) : ctx_(&CyclotomicContext::get(level)) {}

  static Scalar zero(int level) { return Scalar(level); }
  static Scalar integer(int level, const mpz_class& v) {
    Scalar s(level);
    if (sgn(v) == 0) return s;
    s.c_.assign(s.ctx_->degree(), 0);
    s.c_[0] = v;
    return s;
  }
  static Scalar one(int level) { return integer(level, 1); }
  static Scalar rational(int level, const mpq_class& v) {
    Scalar s = integer(level, v.get_num());
    s.den_ = v.get_den();
    s.normalize();
    return s;
  }
  // zeta^k with zeta = exp(pi i / (4N)).
  static Scalar zeta(int level, long long k) { return one(level).times_zeta(k); }
  // t^k with t = exp(pi i / N) = zeta^4.
  static Scalar t_power(int level, long long k) { return zeta(level, 4 * floor_mod(k, 2 * level)); }
  // exp(-n pi i / 4), the anomaly to the n-th power.
  static Scalar anomaly(int level, long long n) { return zeta(level, -n * level); }
  // N^{s/2}.
  static Scalar sqrt_n(int level, int s) { return one(level).times_sqrt_n(s); }

  // N^{s/2} * sum_k counts[k] t^k, with counts indexed by Z_{2N}.
  static Scalar from_t_histogram(int level, const std::vector<long long>& counts, int s = 0) {
    Scalar r(level);
    const auto& ctx = *r.ctx_;
    std::vector<mpz_class> buf(ctx.half_order());
    bool any = false;
    for (size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      any = true;
      long long e = floor_mod(4 * static_cast<long long>(k), ctx.order());
      if (e >= ctx.half_order())
        buf[e - ctx.half_order()] -= static_cast<long>(counts[k]);
      else
        buf[e] += static_cast<long>(counts[k]);
    }
    if (!any) return r;
    ctx.reduce(buf);
    r.c_ = std::move(buf);
    r.normalize();
    return r.times_sqrt_n(s);
  }

  // N^{-1/2} sum_{j in Z_N} t^{b j^2 + 2 c j}.
  static Scalar gauss_sum(long long b, long long c, int level) {
    std::vector<long long> counts(2 * level, 0);
    for (long long j = 0; j < level; ++j)
      counts[floor_mod(floor_mod(b, 2 * level) * j % (2 * level) * j + 2 * floor_mod(c, level) * j,
                       2 * level)]++;
    return from_t_histogram(level, counts, -1);
  }

  bool has_level() const { return ctx_ != nullptr; }
  int level() const { return ctx_ ? ctx_->level() : 0; }
  bool is_zero() const { return c_.empty(); }
  int half_n() const { return h_; }
  const mpz_class& denominator() const { return den_; }
  const std::vector<mpz_class>& raw_coeffs() const { return c_; }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.is_zero()) {
      if (!ctx_) ctx_ = o.ctx_;
      check_level(o);
      return *this;
    }
    if (is_zero()) {
      check_level(o);
      *this = o;
      return *this;
    }
    check_level(o);
    if (h_ == o.h_ && den_ == o.den_) {
      for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
      normalize();
      return *this;
    }
    Scalar a = *this, b = o;
    if (a.h_ != b.h_) {
      if (a.h_ == 1) a.drop_half(); else b.drop_half();
    }
    if (a.den_ != b.den_) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
      mpz_class fa = l / a.den_, fb = l / b.den_;
      for (auto& x : a.c_) x *= fa;
      for (auto& x : b.c_) x *= fb;
      a.den_ = l;
    }
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.normalize();
    *this = std::move(a);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_level(b);
    if (a.is_zero() || b.is_zero()) {
      Scalar z;
      z.ctx_ = a.ctx_ ? a.ctx_ : b.ctx_;
      return z;
    }
    const auto& ctx = *a.ctx_;
    const int d = ctx.degree(), H = ctx.half_order();
    std::vector<mpz_class> buf(H);
    for (int i = 0; i < d; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        int k = i + j;
        if (k >= H)
          mpz_submul(buf[k - H].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        else
          mpz_addmul(buf[k].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
      }
    }
    ctx.reduce(buf);
    Scalar r;
    r.ctx_ = a.ctx_;
    r.c_ = std::move(buf);
    r.den_ = a.den_ * b.den_;
    r.h_ = a.h_ + b.h_;
    if (r.h_ == 2) {
      for (auto& x : r.c_) x *= ctx.level();
      r.h_ = 0;
    }
    r.normalize();
    return r;
  }

  Scalar times_integer(const mpz_class& v) const {
    Scalar r = *this;
    if (sgn(v) == 0) return r - r;
    for (auto& x : r.c_) x *= v;
    r.normalize();
    return r;
  }

  Scalar times_zeta(long long k) const {
    if (is_zero()) return *this;
    const auto& ctx = *ctx_;
    const int H = ctx.half_order();
    long long e = floor_mod(k, ctx.order());
    bool flip = e >= H;
    if (flip) e -= H;
    if (e == 0) return flip ? -*this : *this;
    std::vector<mpz_class> buf(H);
    for (int i = 0; i < ctx.degree(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      long long j = i + e;
      bool neg = flip;
      if (j >= H) {
        j -= H;
        neg = !neg;
      }
      if (neg)
        buf[j] -= c_[i];
      else
        buf[j] += c_[i];
    }
    ctx.reduce(buf);
    Scalar r = *this;
    r.c_ = std::move(buf);
    return r;
  }

  Scalar times_t(long long k) const { return times_zeta(4 * k); }

  // Multiplies by N^{s/2}.
  Scalar times_sqrt_n(int s) const {
    if (is_zero()) return *this;
    Scalar r = *this;
    const int N = ctx_->level();
    for (; s > 0; --s) {
      if (r.h_ == 0) {
        r.h_ = 1;
      } else {
        r.h_ = 0;
        for (auto& x : r.c_) x *= N;
      }
    }
    for (; s < 0; ++s) {
      if (r.h_ == 0) {
        r.h_ = 1;
        r.den_ *= N;
      } else {
        r.h_ = 0;
      }
    }
    r.normalize();
    return r;
  }

  Scalar conj() const {
    if (is_zero()) return *this;
    const auto& ctx = *ctx_;
    const int H = ctx.half_order();
    std::vector<mpz_class> buf(H);
    buf[0] = c_[0];
    // zeta^{-i} = -zeta^{4N-i}
    for (int i = 1; i < ctx.degree(); ++i)
      if (sgn(c_[i]) != 0) buf[H - i] = -c_[i];
    ctx.reduce(buf);
    Scalar r = *this;
    r.c_ = std::move(buf);
    return r;
  }

  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) acc += c_[i].get_d() * ctx_->power(static_cast<long long>(i));
    acc /= den_.get_d();
    if (h_ == 1) acc *= std::sqrt(static_cast<double>(ctx_->level()));
    return acc;
  }

  CanonicalScalar canonical() const {
    CanonicalScalar out;
    out.level = level();
    out.half_n = h_;
    if (!ctx_) return out;
    out.coeffs.assign(ctx_->degree(), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      out.coeffs[i] = mpq_class(c_[i], den_);
      out.coeffs[i].canonicalize();
    }
    return out;
  }

  // Exact equality, guarded by a floating-point cross-check.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    bool exact = (a - b).is_zero();
    auto za = a.to_complex(), zb = b.to_complex();
    double scale = std::max({1.0, std::abs(za), std::abs(zb)});
    bool close = std::abs(za - zb) <= 1e-9 * scale;
    if (exact != close)
      throw ConsistencyError("scalar_eq: exact verdict contradicts floating-point evaluation");
    return exact;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const {
    auto z = to_complex();
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", z.real(), z.imag());
    return buf;
  }

 private:
  void check_level(const Scalar& o) const {
    if (ctx_ && o.ctx_ && ctx_ != o.ctx_)
      throw DomainError("scalar level mismatch: " + std::to_string(ctx_->level()) + " vs " +
                        std::to_string(o.ctx_->level()));
  }

  // Rewrites N^{1/2} P as (sqrt(N) P) with h = 0.
  void drop_half() {
    Scalar s;
    s.ctx_ = ctx_;
    s.c_ = ctx_->sqrt_level();
    Scalar core = *this;
    core.h_ = 0;
    *this = core * s;
  }

  void normalize() {
    bool all_zero = true;
    for (const auto& x : c_)
      if (sgn(x) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      c_.clear();
      h_ = 0;
      den_ = 1;
      return;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& x : c_) {
      if (g == 1) break;
      if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g != 1) {
      for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      den_ /= g;
    }
  }

  const CyclotomicContext* ctx_ = nullptr;
  int h_ = 0;
  mpz_class den_ = 1;
  std::vector<mpz_class> c_;
};

}  // namespace thetatqft
