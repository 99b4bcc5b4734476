#pragma once

// Reduced linking-number skein modules.
//  - handlebody: C[Z_N^g] with basis a^mu (ThetaVector);
//  - cylinder algebra: basis a^p b^q, realized as operators by a^p b^q |-> t^{p.q} O_pq;
//  - evaluation in S^3 of a link with linking matrix B and multiplicities x: t^{x^T B x}.

#include <map>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/gauss_sum.hpp"
#include "thetatqft/heisenberg.hpp"
#include "thetatqft/link_data.hpp"
#include "thetatqft/operators.hpp"

namespace thetatqft {

// Sparse combination of monomials a^p b^q, keyed by (p mod N, q mod N).
class CylSkein {
 public:
  using Key = std::pair<std::vector<long long>, std::vector<long long>>;

  CylSkein(int g, int N) : g_(g), N_(N) {}

  static CylSkein unit(int g, int N) {
    CylSkein s(g, N);
    s.add(std::vector<long long>(g, 0), std::vector<long long>(g, 0), Scalar::one(N));
    return s;
  }
  static CylSkein monomial(const std::vector<long long>& p, const std::vector<long long>& q, int N) {
    CylSkein s(static_cast<int>(p.size()), N);
    s.add(p, q, Scalar::one(N));
    return s;
  }

  int genus() const { return g_; }
  int level() const { return N_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }

  void add(std::vector<long long> p, std::vector<long long> q, const Scalar& c) {
    if (static_cast<int>(p.size()) != g_ || static_cast<int>(q.size()) != g_)
      throw DomainError("CylSkein: genus mismatch");
    for (auto& v : p) v = floor_mod(v, N_);
    for (auto& v : q) v = floor_mod(v, N_);
    auto it = terms_.find({p, q});
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(Key{p, q}, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  CylSkein scaled(const Scalar& s) const {
    CylSkein r(g_, N_);
    for (const auto& [k, c] : terms_) r.add(k.first, k.second, s * c);
    return r;
  }

 private:
  int g_, N_;
  std::map<Key, Scalar> terms_;
};

// a^p b^q . a^p' b^q' = t^{-2 p'.q} a^{p+p'} b^{q+q'}
inline CylSkein cyl_mul(const CylSkein& x, const CylSkein& y) {
  if (x.genus() != y.genus() || x.level() != y.level()) throw DomainError("cyl_mul: shape mismatch");
  CylSkein r(x.genus(), x.level());
  const int g = x.genus();
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      std::vector<long long> p(g), q(g);
      for (int i = 0; i < g; ++i) {
        p[i] = kx.first[i] + ky.first[i];
        q[i] = kx.second[i] + ky.second[i];
      }
      r.add(p, q, (cx * cy).times_t(-2 * dot(ky.first, kx.second)));
    }
  return r;
}

inline MonomialOp monomial_operator(const std::vector<long long>& p, const std::vector<long long>& q, int N) {
  return schrodinger(HeisElement{p, q, dot(p, q)}, N);
}

inline ScalarMatrix to_operator(const CylSkein& x) {
  const int n = static_cast<int>(int_pow(x.level(), x.genus()));
  ScalarMatrix m(n, n, x.level());
  for (const auto& [k, c] : x.terms()) {
    MonomialOp o = monomial_operator(k.first, k.second, x.level());
    for (int j = 0; j < n; ++j) m(o.target[j], j) += c.times_t(o.phase[j]);
  }
  return m;
}

inline ThetaVector act(const CylSkein& x, const ThetaVector& v) {
  if (v.genus != x.genus() || v.level != x.level()) throw DomainError("act: shape mismatch");
  ThetaVector out(v.genus, v.level);
  for (const auto& [k, c] : x.terms()) {
    MonomialOp o = monomial_operator(k.first, k.second, x.level());
    for (int j = 0; j < v.dim(); ++j)
      if (!v[j].is_zero()) out[o.target[j]] += (c * v[j]).times_t(o.phase[j]);
  }
  return out;
}

// <a^i, a^j> = N^{g/2} delta_ij
inline Scalar pairing(const ThetaVector& x, const ThetaVector& y) {
  if (x.genus != y.genus || x.level != y.level) throw DomainError("pairing: shape mismatch");
  Scalar s(x.level);
  for (int i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  if (x.genus == 0 && x.dim() == 1) return s;
  return s.times_sqrt_n(x.genus);
}

inline Scalar evaluate_s3(int N, const AbelianLinkData& cfg, const std::vector<long long>& mult) {
  for (const auto& c : cfg.comps)
    if (c.role == Role::CoreBottom || c.role == Role::CoreTop)
      throw DomainError("evaluate_s3: configuration has core components");
  if (static_cast<int>(mult.size()) != cfg.size()) throw DomainError("evaluate_s3: multiplicity vector length");
  long long e = 0;
  const long long M = 2LL * N;
  for (int i = 0; i < cfg.size(); ++i)
    for (int j = 0; j < cfg.size(); ++j) e = floor_mod(e + floor_mod(cfg.B(i, j) * mult[i], M) * mult[j], M);
  return Scalar::t_power(N, e);
}

// Omega decoration of the target components: N^{-m/2} sum over their multiplicities.
struct OmegaSum {
  AbelianLinkData cfg;
  std::vector<int> targets;
  std::vector<long long> base;  // multiplicities of the other components

  // Direct enumeration over Z_N^m.
  Scalar evaluate(int N) const {
    std::vector<long long> mult = base;
    const int m = static_cast<int>(targets.size());
    std::vector<long long> idx(m, 0);
    Scalar acc(N);
    while (true) {
      for (int k = 0; k < m; ++k) mult[targets[k]] = idx[k];
      acc += evaluate_s3(N, cfg, mult);
      int k = 0;
      while (k < m && idx[k] == N - 1) idx[k++] = 0;
      if (k == m) break;
      ++idx[k];
    }
    return acc.times_sqrt_n(-m);
  }
};

inline OmegaSum omega_decorate(const AbelianLinkData& cfg, const std::vector<int>& targets) {
  for (int t : targets)
    if (t < 0 || t >= cfg.size() || cfg.comps[t].role != Role::Surgery)
      throw DomainError("omega_decorate: targets must be surgery components");
  OmegaSum o{cfg, targets, std::vector<long long>(cfg.size(), 0)};
  for (int i = 0; i < cfg.size(); ++i)
    if (cfg.comps[i].role == Role::Embedded) o.base[i] = cfg.comps[i].multiplicity;
  return o;
}

// Surgery presentation of Sigma_g x [0,1] with identity parameterizations:
// bottom cores c_i, top cores d_i, one 0-framed annulus s_i per handle with
// lk(c_i, s_i) = +1 and lk(d_i, s_i) = -1 (top cores inserted by translation).
inline AbelianLinkData identity_cylinder_link(const std::vector<int>& genera) {
  AbelianLinkData d;
  int G = 0;
  for (int g : genera) G += g;
  std::vector<int> bottom, top;
  for (size_t gr = 0; gr < genera.size(); ++gr)
    for (int h = 0; h < genera[gr]; ++h)
      bottom.push_back(d.add(Component{Role::CoreBottom, int(gr), h}, std::vector<long long>(d.size(), 0), 0));
  for (size_t gr = 0; gr < genera.size(); ++gr)
    for (int h = 0; h < genera[gr]; ++h)
      top.push_back(d.add(Component{Role::CoreTop, int(gr), h}, std::vector<long long>(d.size(), 0), 0));
  for (int i = 0; i < G; ++i) {
    std::vector<long long> row(d.size(), 0);
    row[bottom[i]] = 1;
    row[top[i]] = -1;
    d.add(Component{Role::Surgery}, row, 0);
  }
  return d;
}

// <a^mu, a^nu> recomputed from the cylinder presentation: cores at multiplicities mu and nu,
// annuli decorated with Omega, evaluated in S^3.
inline Scalar pairing_via_surgery(int g, int N, const std::vector<long long>& mu, const std::vector<long long>& nu) {
  AbelianLinkData cyl = identity_cylinder_link({g});
  // cores become embedded components at the given multiplicities
  for (int i = 0; i < g; ++i) {
    cyl.comps[i] = Component{Role::Embedded, 0, 0, mu[i]};
    cyl.comps[g + i] = Component{Role::Embedded, 0, 0, nu[i]};
  }
  std::vector<int> targets;
  for (int i = 0; i < g; ++i) targets.push_back(2 * g + i);
  return omega_decorate(cyl, targets).evaluate(N);
}

}  // namespace thetatqft
