#pragma once

// Extended mapping classes as words of twist curves, and the representation
//   F(h, n) = e^{-pi i (n + sigma_*(L))/4} Omega(L)
// for the stacked surgery presentation L of the word.
//
// A twist letter (c, s) is a curve of primitive class c = (p, q) pushed into the cylinder,
// with framing s relative to the surface framing. Its symplectic action is
// transvection(c, s); the sign relation is pinned by the Egorov test.
// Letters are listed outermost (closest to the top of the cylinder) first, so the word
// [g1, ..., gk] is g1 o ... o gk and F = Op(g1) ... Op(gk) up to the phase.

#include <string>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/heisenberg.hpp"
#include "thetatqft/link_data.hpp"
#include "thetatqft/skein.hpp"
#include "thetatqft/symplectic.hpp"

namespace thetatqft {

// framing of a twist curve = kTwistSign * (transvection sign)
constexpr int kTwistSign = 1;

struct TwistLetter {
  std::vector<long long> cls;  // (p_1..p_g, q_1..q_g)
  int sign = 1;

  friend bool operator==(const TwistLetter& a, const TwistLetter& b) { return a.cls == b.cls && a.sign == b.sign; }
};

struct ExtendedMappingClass {
  int genus = 0;
  std::vector<TwistLetter> curves;
  IntMatrix sp;
  long long weight = 0;

  static ExtendedMappingClass identity(int g, long long n = 0) {
    return ExtendedMappingClass{g, {}, IntMatrix::identity(2 * g), n};
  }
};

inline ExtendedMappingClass twist(int g, const std::vector<long long>& cls, int sign) {
  if (static_cast<int>(cls.size()) != 2 * g) throw DomainError("twist: class has the wrong length");
  return ExtendedMappingClass{g, {TwistLetter{cls, sign}}, transvection(cls, sign), 0};
}

inline std::vector<long long> class_a(int g, int i) {
  std::vector<long long> c(2 * g, 0);
  c[i] = 1;
  return c;
}
inline std::vector<long long> class_b(int g, int i) {
  std::vector<long long> c(2 * g, 0);
  c[g + i] = 1;
  return c;
}

// Word from a list of letters, weight n: the stacked presentation of g1 o ... o gk.
inline ExtendedMappingClass from_letters(int g, const std::vector<TwistLetter>& letters, long long n = 0) {
  ExtendedMappingClass x = ExtendedMappingClass::identity(g, n);
  for (const auto& l : letters) {
    if (static_cast<int>(l.cls.size()) != 2 * g) throw DomainError("letter class has the wrong length");
    x.sp = x.sp * transvection(l.cls, l.sign);
    x.curves.push_back(l);
  }
  return x;
}

// Named generators, 1-based handle index: Ta<i>, Tb<i>, Tc<i> (class a_i + a_{i+1}), phi<i>.
// phi = Ta^{-1} Tb^{-1} Ta^{-1} acts by a -> -b, b -> a; its token is the three stacked curves
// with weight 0.
inline std::vector<TwistLetter> generator_letters(int g, const std::string& name, int power) {
  if (power != 1 && power != -1) throw ParseError("generator power must be +1 or -1");
  auto index = [&](size_t prefix) {
    std::string rest = name.substr(prefix);
    if (rest.empty()) {
      if (g == 1) return 0;
      throw ParseError("generator '" + name + "' needs a handle index");
    }
    for (char ch : rest)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad generator '" + name + "'");
    int i = std::stoi(rest) - 1;
    if (i < 0 || i >= g) throw ParseError("generator '" + name + "' out of range for genus " + std::to_string(g));
    return i;
  };
  if (name.rfind("phi", 0) == 0) {
    int i = index(3);
    std::vector<TwistLetter> w{{class_a(g, i), -1}, {class_b(g, i), -1}, {class_a(g, i), -1}};
    if (power == -1)
      for (auto& l : w) l.sign = 1;
    return w;
  }
  if (name.size() >= 2 && name[0] == 'T') {
    int i = index(2);
    switch (name[1]) {
      case 'a': return {{class_a(g, i), power}};
      case 'b': return {{class_b(g, i), power}};
      case 'c': {
        if (i + 1 >= g) throw ParseError("generator '" + name + "' needs handle i+1");
        auto c = class_a(g, i);
        c[i + 1] = 1;
        return {{c, power}};
      }
      default: break;
    }
  }
  throw ParseError("unknown generator '" + name + "'");
}

inline ExtendedMappingClass generator(int g, const std::string& name, int power = 1) {
  return from_letters(g, generator_letters(g, name, power), 0);
}

// Maslov index with the empty space allowed.
inline int tau(const RatMatrix& l1, const RatMatrix& l2, const RatMatrix& l3) {
  if (l1.rows() == 0) return 0;
  return maslov(l1, l2, l3);
}

// (h', n')(h, n) = (h'h, n + n' + tau(h'h L, h' L, L))
inline ExtendedMappingClass emcg_compose(const ExtendedMappingClass& x, const ExtendedMappingClass& y) {
  if (x.genus != y.genus) throw DomainError("emcg_compose: genus mismatch");
  const RatMatrix L = standard_lagrangian(x.genus);
  ExtendedMappingClass r = x;
  r.sp = x.sp * y.sp;
  r.curves.insert(r.curves.end(), y.curves.begin(), y.curves.end());
  r.weight = x.weight + y.weight + (x.genus ? tau(act(r.sp, L), act(x.sp, L), L) : 0);
  return r;
}

inline ExtendedMappingClass inverse(const ExtendedMappingClass& x) {
  ExtendedMappingClass r = x;
  r.curves.assign(x.curves.rbegin(), x.curves.rend());
  for (auto& l : r.curves) l.sign = -l.sign;
  r.sp = symplectic_inverse(x.sp);
  r.weight = -x.weight;
  return r;
}

// Linking data of twist curves pushed off a bottom graph with cores `cores` (global handle order)
// in an existing presentation. A curve of class (p, q) is p parallels of the cores plus q meridians:
//   lk(gamma, X)   = sum_i p_i B[c_i, X]          for X not a bottom core,
//   lk(gamma, c_j) = sum_i p_i B[c_i, c_j] - q_j,
//   framing        = p^T B_cc p - p.q + (framing sign),
//   lk(outer, inner) = p_out^T B_cc p_in - q_out . p_in.
// Curves are appended in word order (outermost first).
inline std::vector<int> add_twist_curves(AbelianLinkData& d, const std::vector<int>& cores,
                                         const std::vector<TwistLetter>& letters) {
  const int G = static_cast<int>(cores.size());
  const int base = d.size();
  std::vector<int> added;
  for (size_t k = 0; k < letters.size(); ++k) {
    const auto& l = letters[k];
    if (static_cast<int>(l.cls.size()) != 2 * G) throw DomainError("twist curve class has the wrong length");
    const long long* p = l.cls.data();
    const long long* q = l.cls.data() + G;
    std::vector<long long> row(d.size(), 0);
    for (int X = 0; X < base; ++X) {
      long long v = 0;
      for (int i = 0; i < G; ++i) v += p[i] * d.B(cores[i], X);
      row[X] = v;
    }
    for (int j = 0; j < G; ++j) row[cores[j]] -= q[j];
    long long bcc = 0, pq = 0;
    for (int i = 0; i < G; ++i) {
      pq += p[i] * q[i];
      for (int j = 0; j < G; ++j) bcc += p[i] * d.B(cores[i], cores[j]) * p[j];
    }
    // earlier letters are outer
    for (size_t o = 0; o < k; ++o) {
      const auto& out = letters[o];
      long long v = 0;
      for (int i = 0; i < G; ++i) {
        v -= out.cls[G + i] * p[i];
        for (int j = 0; j < G; ++j) v += out.cls[i] * d.B(cores[i], cores[j]) * p[j];
      }
      row[added[o]] = v;
    }
    added.push_back(d.add(Component{Role::Surgery}, row, bcc - pq + kTwistSign * l.sign));
  }
  return added;
}

// L_*: the g annuli of the cylinder together with the curves. Returned without the cores.
inline AbelianLinkData sigma_star_link(int g, const std::vector<TwistLetter>& letters) {
  AbelianLinkData cyl = identity_cylinder_link({g});
  std::vector<int> cores;
  for (int i = 0; i < g; ++i) cores.push_back(i);
  add_twist_curves(cyl, cores, letters);
  AbelianLinkData r;
  std::vector<int> keep;
  for (int i = 0; i < cyl.size(); ++i)
    if (cyl.comps[i].role == Role::Surgery) keep.push_back(i);
  r.B = cyl.submatrix(keep);
  for (int i : keep) r.comps.push_back(cyl.comps[i]);
  return r;
}

inline int sigma_star(int g, const std::vector<TwistLetter>& letters) {
  return signature(sigma_star_link(g, letters).B);
}

// Omega(gamma) as an operator: N^{-1/2} sum_j t^{eps j^2} O_{j c}; returns Op * m.
inline ScalarMatrix omega_curve_times(const TwistLetter& l, int N, const ScalarMatrix& m) {
  const int g = static_cast<int>(l.cls.size()) / 2;
  ScalarMatrix out(m.rows(), m.cols(), N);
  const long long eps = kTwistSign * l.sign;
  for (long long j = 0; j < N; ++j) {
    std::vector<long long> p(g), q(g);
    for (int i = 0; i < g; ++i) {
      p[i] = j * l.cls[i];
      q[i] = j * l.cls[g + i];
    }
    MonomialOp o = O_pq(p, q, N);
    const long long ph = eps * j * j;
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (!m(r, c).is_zero()) out(o.target[r], c) += m(r, c).times_t(o.phase[r] + ph);
  }
  return Scalar::sqrt_n(N, -1) * out;
}

inline ScalarMatrix rep_F(const ExtendedMappingClass& x, int N) {
  const int n = static_cast<int>(int_pow(N, x.genus));
  ScalarMatrix m = ScalarMatrix::identity(n, N);
  for (auto it = x.curves.rbegin(); it != x.curves.rend(); ++it) m = omega_curve_times(*it, N, m);
  const int s = x.genus ? sigma_star(x.genus, x.curves) : 0;
  return Scalar::anomaly(N, x.weight + s) * m;
}

// The same element of the cylinder skein algebra, built with cyl_mul.
inline CylSkein rep_F_skein(const ExtendedMappingClass& x, int N) {
  const int g = x.genus;
  CylSkein acc = CylSkein::unit(g, N);
  for (const auto& l : x.curves) {
    CylSkein om(g, N);
    const long long eps = kTwistSign * l.sign;
    long long pq = 0;
    for (int i = 0; i < g; ++i) pq += l.cls[i] * l.cls[g + i];
    for (long long j = 0; j < N; ++j) {
      std::vector<long long> p(g), q(g);
      for (int i = 0; i < g; ++i) {
        p[i] = j * l.cls[i];
        q[i] = j * l.cls[g + i];
      }
      // the curve j c with surface framing is t^{-j^2 p.q} a^{jp} b^{jq}
      om.add(p, q, Scalar::t_power(N, eps * j * j - j * j * pq).times_sqrt_n(-1));
    }
    acc = cyl_mul(acc, om);
  }
  const int s = g ? sigma_star(g, x.curves) : 0;
  return acc.scaled(Scalar::anomaly(N, x.weight + s));
}

inline std::vector<long long> apply_sp(const IntMatrix& h, const std::vector<long long>& v) { return h.apply(v); }

// O_{h_*(p,q)} F(x) == F(x) O_{pq}
inline bool egorov_check(const ExtendedMappingClass& x, const ScalarMatrix& F, const std::vector<long long>& p,
                         const std::vector<long long>& q, int N) {
  const int g = x.genus;
  std::vector<long long> v(p);
  v.insert(v.end(), q.begin(), q.end());
  auto hv = apply_sp(x.sp, v);
  std::vector<long long> hp(hv.begin(), hv.begin() + g), hq(hv.begin() + g, hv.end());
  return O_pq(hp, hq, N).times(F) == O_pq(p, q, N).times_right(F);
}

inline bool egorov_check(const ExtendedMappingClass& x, const std::vector<long long>& p,
                         const std::vector<long long>& q, int N) {
  return egorov_check(x, rep_F(x, N), p, q, N);
}

// Genus-1 factorization of an SL(2,Z) matrix into Ta^{+-1}, Tb^{+-1} and phi^2 = -I.
inline std::vector<TwistLetter> factor_genus1(const IntMatrix& A) {
  if (A.rows() != 2 || A.cols() != 2 || A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) != 1)
    throw DomainError("factor_genus1: not in SL(2,Z)");
  // left-multiply by twists until upper triangular, recording the inverses
  IntMatrix M = A;
  std::vector<TwistLetter> applied;  // M = applied^{-1} ... A  (applied in order)
  auto apply = [&](const std::vector<long long>& c, long long k) {
    int s = k > 0 ? 1 : -1;
    for (long long r = 0; r < (k > 0 ? k : -k); ++r) {
      M = transvection(c, s) * M;
      applied.push_back({c, s});
    }
  };
  const std::vector<long long> a{1, 0}, b{0, 1};
  while (M(1, 0) != 0) {
    if (M(0, 0) == 0) {
      apply(a, -1);
    } else if (std::llabs(M(0, 0)) > std::llabs(M(1, 0))) {
      // Ta^k: row0 -= k row1
      apply(a, M(0, 0) / M(1, 0));
    } else {
      // Tb^k: row1 += k row0
      apply(b, -(M(1, 0) / M(0, 0)));
    }
  }
  std::vector<TwistLetter> rest;
  if (M(0, 0) == -1) {
    // -I = phi^2
    for (int r = 0; r < 2; ++r)
      for (auto l : generator_letters(1, "phi", 1)) rest.push_back(l);
    M = -M;
  }
  // M = [[1, m], [0, 1]] = Ta^{-m}
  long long m = M(0, 1);
  for (long long r = 0; r < (m > 0 ? m : -m); ++r) rest.push_back({a, m > 0 ? -1 : 1});
  // A = applied_1^{-1} ... applied_k^{-1} (-I)^e M
  std::vector<TwistLetter> word;
  for (const auto& l : applied) word.push_back({l.cls, -l.sign});
  word.insert(word.end(), rest.begin(), rest.end());
  return word;
}

}  // namespace thetatqft
