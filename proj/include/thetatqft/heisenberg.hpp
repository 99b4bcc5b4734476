#pragma once

// The Heisenberg group H(Z^g) with product
//   (p,q,k)(p',q',k') = (p+p', q+q', k+k' + p.q' - p'.q),
// its finite quotient by the central subgroup {(N a, N b, 2N c)}, and the
// Schroedinger representation (p,q,k) |-> e^{k pi i/N} O_pq on C[Z_N^g].

#include <numeric>
#include <string>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/operators.hpp"

namespace thetatqft {

struct HeisElement {
  std::vector<long long> p, q;
  long long k = 0;

  int genus() const { return static_cast<int>(p.size()); }
  friend bool operator==(const HeisElement& a, const HeisElement& b) {
    return a.p == b.p && a.q == b.q && a.k == b.k;
  }
};

inline long long dot(const std::vector<long long>& x, const std::vector<long long>& y) {
  long long s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Product in the infinite group H(Z^g).
inline HeisElement heis_mul_raw(const HeisElement& x, const HeisElement& y) {
  if (x.p.size() != y.p.size() || x.q.size() != x.p.size() || y.q.size() != y.p.size())
    throw DomainError("heisenberg: genus mismatch");
  HeisElement r;
  r.p.resize(x.p.size());
  r.q.resize(x.p.size());
  for (size_t i = 0; i < x.p.size(); ++i) {
    r.p[i] = x.p[i] + y.p[i];
    r.q[i] = x.q[i] + y.q[i];
  }
  r.k = x.k + y.k + dot(x.p, y.q) - dot(y.p, x.q);
  return r;
}

// Normal form in the finite quotient: write p = N alpha + pbar, q = N beta + qbar
// with pbar, qbar in [0, N). Then x = (N alpha, N beta, 2N c)(pbar, qbar, k') with
// k' = k - N(alpha.qbar - beta.pbar) mod 2N.
inline HeisElement heis_normalize(const HeisElement& x, int N) {
  HeisElement r = x;
  long long corr = 0;
  for (size_t i = 0; i < x.p.size(); ++i) {
    long long pb = floor_mod(x.p[i], N), qb = floor_mod(x.q[i], N);
    long long alpha = (x.p[i] - pb) / N, beta = (x.q[i] - qb) / N;
    corr += alpha * qb - beta * pb;
    r.p[i] = pb;
    r.q[i] = qb;
  }
  r.k = floor_mod(x.k - N * floor_mod(corr, 2), 2 * N);
  return r;
}

inline HeisElement heis_mul(const HeisElement& x, const HeisElement& y, int N) {
  return heis_normalize(heis_mul_raw(x, y), N);
}

// e^{k pi i/N} O_pq, where O_pq a^mu = e^{-pi i p.q/N - 2 pi i mu.q/N} a^{mu+p}.
// The integer lifts of p and q matter: shifting p by N e_i multiplies by (-1)^{q_i}.
inline MonomialOp schrodinger(const HeisElement& x, int N) {
  const int g = x.genus();
  const long long n = int_pow(N, g);
  MonomialOp op;
  op.level = N;
  op.target.resize(n);
  op.phase.resize(n);
  const long long base = x.k - dot(x.p, x.q);
  for (long long j = 0; j < n; ++j) {
    auto mu = multi_index(j, g, N);
    long long ph = base - 2 * dot(mu, x.q);
    for (int i = 0; i < g; ++i) mu[i] += x.p[i];
    op.target[j] = basis_index(mu, N);
    op.phase[j] = floor_mod(ph, 2 * N);
  }
  return op;
}

inline MonomialOp O_pq(const std::vector<long long>& p, const std::vector<long long>& q, int N) {
  return schrodinger(HeisElement{p, q, 0}, N);
}

// Dimension of the commutant of {O_pq}: union-find over matrix positions (a, b)
// with t-power potentials; a component contributes 1 iff its phase constraints are consistent.
inline long long commutant_dimension(const std::vector<MonomialOp>& ops) {
  if (ops.empty()) throw DomainError("commutant_dimension: no operators");
  const long long n = ops[0].dim();
  const int N = ops[0].level;
  const long long nodes = n * n;
  std::vector<long long> parent(nodes), pot(nodes, 0);  // X_node = t^{pot} X_parent
  std::vector<bool> bad(nodes, false);
  std::iota(parent.begin(), parent.end(), 0);
  const long long M = 2 * N;
  auto find = [&](long long v) {
    long long acc = 0, r = v;
    while (parent[r] != r) {
      acc += pot[r];
      r = parent[r];
    }
    // path compression
    long long cur = v, cur_acc = acc;
    while (parent[cur] != cur) {
      long long next = parent[cur], step = pot[cur];
      parent[cur] = r;
      pot[cur] = floor_mod(cur_acc, M);
      cur_acc -= step;
      cur = next;
    }
    return std::pair<long long, long long>(r, floor_mod(acc, M));
  };
  // X_{u} = t^{e} X_{v}
  auto unite = [&](long long u, long long v, long long e) {
    auto [ru, pu] = find(u);
    auto [rv, pv] = find(v);
    // X_u = t^{pu} X_ru, X_v = t^{pv} X_rv, so X_ru = t^{e + pv - pu} X_rv
    long long d = floor_mod(e + pv - pu, M);
    if (ru == rv) {
      if (d != 0) bad[ru] = true;
      return;
    }
    parent[ru] = rv;
    pot[ru] = d;
    if (bad[ru]) bad[rv] = true;
  };
  for (const MonomialOp& o : ops)
    // O X = X O  <=>  X_{s(a), s(b)} = t^{ph_a - ph_b} X_{a,b}
    for (long long a = 0; a < n; ++a)
      for (long long b = 0; b < n; ++b)
        unite(o.target[a] * n + o.target[b], a * n + b, o.phase[a] - o.phase[b]);
  long long dim = 0;
  for (long long v = 0; v < nodes; ++v)
    if (find(v).first == v && !bad[v]) ++dim;
  return dim;
}

// Commutant of the Schroedinger representation; 1 iff irreducible.
inline long long commutant_dimension(int g, int N) {
  const long long n = int_pow(N, g);
  if (n * n > 10000) throw GuardError("commutant_dimension: N^{2g} exceeds 10^4");
  std::vector<MonomialOp> ops;
  for (int i = 0; i < g; ++i)
    for (int which = 0; which < 2; ++which) {
      std::vector<long long> p(g, 0), q(g, 0);
      (which ? q : p)[i] = 1;
      ops.push_back(O_pq(p, q, N));
    }
  return commutant_dimension(ops);
}

}  // namespace thetatqft
