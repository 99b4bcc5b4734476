#pragma once

// Framed 3-cobordisms given by abelian surgery presentations, the TQFT map Z,
// Turaev gluing with the Maslov weight corrections, and closed invariants.
//
// Conventions of a presentation (standard parameterizations):
//  - bottom cores c_i and top cores d_i are the graph circles, both oriented by translation;
//  - Z(M, L)[nu][mu] = N^{k_+/2} B(mu, nu) / N^{G_+/2}, with
//    B(mu, nu) = N^{-1/2} e^{-pi i sigma(B_surg)/4} N^{-m/2} sum_j t^{x^T B x},
//    x = (mu on c, nu on d, j on surgery, multiplicity on embedded);
//  - H_1(M) is generated by meridians of cores and surgery components, with the surgery
//    rows as relations; boundary classes map by
//      bottom: a_i -> row(c_i), b_i -> -m(c_i);   top: a_i -> -row(d_i), b_i -> -m(d_i).

#include <algorithm>
#include <thread>
#include <vector>

#include "thetatqft/errors.hpp"
#include "thetatqft/gauss_sum.hpp"
#include "thetatqft/link_data.hpp"
#include "thetatqft/mcg.hpp"
#include "thetatqft/skein.hpp"
#include "thetatqft/symplectic.hpp"

namespace thetatqft {

struct ExtendedSurface {
  std::vector<int> genera;
  std::vector<RatMatrix> lagrangians;  // one 2g x g span per component

  static ExtendedSurface standard(const std::vector<int>& genera) {
    ExtendedSurface s{genera, {}};
    for (int g : genera) s.lagrangians.push_back(standard_lagrangian(g));
    return s;
  }

  int total_genus() const {
    int G = 0;
    for (int g : genera) G += g;
    return G;
  }

  void validate() const {
    if (lagrangians.size() != genera.size()) throw DomainError("extended surface: one Lagrangian per component");
    for (size_t i = 0; i < genera.size(); ++i) {
      if (genera[i] < 0) throw DomainError("extended surface: negative genus");
      if (lagrangians[i].rows() != 2 * genera[i]) throw DomainError("extended surface: Lagrangian has wrong size");
      if (genera[i] > 0) require_lagrangian(lagrangians[i], "extended surface marking");
    }
  }

  // Direct sum in global coordinates (a_1..a_G, b_1..b_G).
  RatMatrix lagrangian() const {
    const int G = total_genus();
    std::vector<std::vector<mpq_class>> cols;
    int off = 0;
    for (size_t c = 0; c < genera.size(); ++c) {
      const int g = genera[c];
      RatMatrix basis = column_basis(lagrangians[c]);
      for (int k = 0; k < basis.cols(); ++k) {
        std::vector<mpq_class> v(2 * G, 0);
        for (int i = 0; i < g; ++i) {
          v[off + i] = basis(i, k);
          v[G + off + i] = basis(g + i, k);
        }
        cols.push_back(v);
      }
      off += g;
    }
    return RatMatrix::from_columns(2 * G, cols);
  }

  friend bool operator==(const ExtendedSurface& a, const ExtendedSurface& b) { return a.genera == b.genera; }
};

inline RatMatrix global_standard_lagrangian(int G) { return standard_lagrangian(G); }

struct FramedCobordism {
  AbelianLinkData link;
  ExtendedSurface bottom, top;
  long long weight = 0;
  int pieces = 1;  // connected components of the underlying manifold
};

// Core components in global handle order (graph-major).
inline std::vector<int> core_indices(const AbelianLinkData& d, Role role, const std::vector<int>& genera) {
  std::vector<int> offset(genera.size() + 1, 0);
  for (size_t i = 0; i < genera.size(); ++i) offset[i + 1] = offset[i] + genera[i];
  std::vector<int> idx(offset.back(), -1);
  for (int i = 0; i < d.size(); ++i) {
    const auto& c = d.comps[i];
    if (c.role != role) continue;
    if (c.graph >= static_cast<int>(genera.size()) || c.handle >= genera[c.graph])
      throw DomainError(std::string("core (graph, handle) out of range for ") + role_name(role));
    int k = offset[c.graph] + c.handle;
    if (idx[k] != -1) throw DomainError(std::string("duplicate ") + role_name(role) + " core");
    idx[k] = i;
  }
  for (int v : idx)
    if (v == -1) throw DomainError(std::string("core-count mismatch: missing ") + role_name(role) + " core");
  return idx;
}

inline void validate(const FramedCobordism& M) {
  M.link.validate();
  M.bottom.validate();
  M.top.validate();
  core_indices(M.link, Role::CoreBottom, M.bottom.genera);
  core_indices(M.link, Role::CoreTop, M.top.genera);
  if (M.pieces < 0) throw DomainError("negative number of pieces");
}

// ---------------------------------------------------------------- homology

struct PresentationHomology {
  RatMatrix iota_minus;  // generators x 2G_-
  RatMatrix iota_plus;   // generators x 2G_+
  RatMatrix relations;   // generators x m
};

inline PresentationHomology homology(const FramedCobordism& M) {
  const auto& d = M.link;
  auto cb = core_indices(d, Role::CoreBottom, M.bottom.genera);
  auto ct = core_indices(d, Role::CoreTop, M.top.genera);
  std::vector<int> gens, surg = d.indices(Role::Surgery);
  for (int i = 0; i < d.size(); ++i)
    if (d.comps[i].role != Role::Embedded) gens.push_back(i);
  const int n = static_cast<int>(gens.size());
  const int Gm = static_cast<int>(cb.size()), Gp = static_cast<int>(ct.size());
  auto pos = [&](int comp) { return static_cast<int>(std::find(gens.begin(), gens.end(), comp) - gens.begin()); };
  PresentationHomology h{RatMatrix(n, 2 * Gm), RatMatrix(n, 2 * Gp), RatMatrix(n, static_cast<int>(surg.size()))};
  for (int i = 0; i < Gm; ++i) {
    for (int r = 0; r < n; ++r) h.iota_minus(r, i) = static_cast<long>(d.B(cb[i], gens[r]));
    h.iota_minus(pos(cb[i]), Gm + i) = -1;
  }
  for (int i = 0; i < Gp; ++i) {
    for (int r = 0; r < n; ++r) h.iota_plus(r, i) = static_cast<long>(-d.B(ct[i], gens[r]));
    h.iota_plus(pos(ct[i]), Gp + i) = -1;
  }
  for (size_t k = 0; k < surg.size(); ++k)
    for (int r = 0; r < n; ++r) h.relations(r, static_cast<int>(k)) = static_cast<long>(d.B(surg[k], gens[r]));
  return h;
}

enum class Side { Forward, Backward };

// Forward: N_M(L) in H_1(top) for L in H_1(bottom); Backward: N^M(L) in H_1(bottom) for L in H_1(top).
// y is in the result iff iota(y) - iota'(x) lies in the relation span for some x in L.
inline RatMatrix boundary_image_lagrangian(const FramedCobordism& M, Side side, const RatMatrix& L) {
  PresentationHomology h = homology(M);
  const RatMatrix& to = side == Side::Forward ? h.iota_plus : h.iota_minus;
  const RatMatrix& from = side == Side::Forward ? h.iota_minus : h.iota_plus;
  if (L.rows() != from.cols()) throw DomainError("boundary_image_lagrangian: Lagrangian has the wrong size");
  const int ny = to.cols();
  if (ny == 0) return RatMatrix(0, 0);
  RatMatrix sys = RatMatrix::hcat(RatMatrix::hcat(to, -(from * L)), -h.relations);
  RatMatrix ker = kernel(sys);
  RatMatrix y(ny, ker.cols());
  for (int i = 0; i < ny; ++i)
    for (int c = 0; c < ker.cols(); ++c) y(i, c) = ker(i, c);
  return column_basis(y);
}

// ---------------------------------------------------------------- Z

// Integer weight n with Z(M) = e^{-n pi i/4} Z(M, L_M) for the standard parameterizations.
inline long long effective_weight(const FramedCobordism& M) {
  const int Gm = M.bottom.total_genus(), Gp = M.top.total_genus();
  const RatMatrix Lm = M.bottom.lagrangian(), Lp = M.top.lagrangian();
  const RatMatrix Sm = standard_lagrangian(Gm), Sp = standard_lagrangian(Gp);
  long long n = M.weight;
  if (Gm > 0) n += tau(Sm, Lm, boundary_image_lagrangian(M, Side::Backward, Lp));
  if (Gp > 0) n += tau(boundary_image_lagrangian(M, Side::Forward, Sm), Lp, Sp);
  return n;
}

// Z(M, L_M): the parameterized map, without the weight.
inline ScalarMatrix z_param(const FramedCobordism& M, int N, int threads = 1) {
  validate(M);
  const auto& d = M.link;
  auto cb = core_indices(d, Role::CoreBottom, M.bottom.genera);
  auto ct = core_indices(d, Role::CoreTop, M.top.genera);
  auto surg = d.indices(Role::Surgery);
  const int Gm = static_cast<int>(cb.size()), Gp = static_cast<int>(ct.size()), m = static_cast<int>(surg.size());
  const long long rows = int_pow(N, Gp), cols = int_pow(N, Gm);
  if (rows * cols > 4'000'000) throw GuardError("z_matrix: N^{G_- + G_+} exceeds 4e6 entries");
  // variables: surgery, bottom cores, top cores, constant
  const int nv = m + Gm + Gp + 1;
  IntMatrix T(d.size(), nv);
  for (int k = 0; k < m; ++k) T(surg[k], k) = 1;
  for (int i = 0; i < Gm; ++i) T(cb[i], m + i) = 1;
  for (int i = 0; i < Gp; ++i) T(ct[i], m + Gm + i) = 1;
  for (int i = 0; i < d.size(); ++i)
    if (d.comps[i].role == Role::Embedded) T(i, nv - 1) = d.comps[i].multiplicity;
  IntMatrix Q = T.transpose() * d.B * T;
  QuadraticSum qs(N, Q, m, Gm + Gp);
  const int kplus = static_cast<int>(M.top.genera.size());
  const int sigma = m ? signature(d.submatrix(surg)) : 0;
  const Scalar pref = Scalar::anomaly(N, sigma).times_sqrt_n(kplus - Gp - M.pieces - m);
  ScalarMatrix Z(static_cast<int>(rows), static_cast<int>(cols), N);
  if (qs.is_zero()) return Z;
  auto work = [&](long long c0, long long c1) {
    std::vector<long long> e(Gm + Gp);
    for (long long c = c0; c < c1; ++c) {
      auto mu = multi_index(c, Gm, N);
      for (int i = 0; i < Gm; ++i) e[i] = mu[i];
      for (long long r = 0; r < rows; ++r) {
        auto nu = multi_index(r, Gp, N);
        for (int i = 0; i < Gp; ++i) e[Gm + i] = nu[i];
        Z(static_cast<int>(r), static_cast<int>(c)) = pref * qs.evaluate(e);
      }
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(cols)));
  if (threads == 1) {
    work(0, cols);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, cols * t / threads, cols * (t + 1) / threads);
    for (auto& th : pool) th.join();
  }
  return Z;
}

inline ScalarMatrix z_matrix(const FramedCobordism& M, int N, int threads = 1) {
  return Scalar::anomaly(N, effective_weight(M)) * z_param(M, N, threads);
}

// N^{-1/2} e^{-(n + sigma) pi i/4} N^{-m/2} sum_j t^{x^T B x}, embedded components at their multiplicities.
inline Scalar closed_invariant(const AbelianLinkData& link, long long n, int N) {
  for (const auto& c : link.comps)
    if (c.role == Role::CoreBottom || c.role == Role::CoreTop) throw DomainError("closed_invariant: link has cores");
  FramedCobordism M{link, ExtendedSurface::standard({}), ExtendedSurface::standard({}), n, 1};
  return z_matrix(M, N)(0, 0);
}

// ---------------------------------------------------------------- constructors

inline FramedCobordism cylinder(const std::vector<int>& genera, long long n = 0) {
  // one piece per boundary component
  return FramedCobordism{identity_cylinder_link(genera), ExtendedSurface::standard(genera),
                         ExtendedSurface::standard(genera), n, static_cast<int>(genera.size())};
}

// Handlebody H_g as a cobordism from the empty surface, with embedded curves given by their
// classes in H_1(H_g) = span(a); the curves are parallels of the cores.
inline FramedCobordism handlebody(int g, const std::vector<std::vector<long long>>& curves = {}, long long n = 0) {
  AbelianLinkData d;
  std::vector<int> top;
  for (int h = 0; h < g; ++h) top.push_back(d.add(Component{Role::CoreTop, 0, h}, std::vector<long long>(d.size(), 0), 0));
  std::vector<int> emb;
  for (const auto& p : curves) {
    if (static_cast<int>(p.size()) != g) throw DomainError("handlebody: curve class has the wrong length");
    emb.push_back(d.add(Component{Role::Embedded, 0, 0, 1}, std::vector<long long>(d.size(), 0), 0));
  }
  for (int i = 0; i < g; ++i) {
    std::vector<long long> row(d.size(), 0);
    row[top[i]] = -1;
    for (size_t k = 0; k < curves.size(); ++k) row[emb[k]] = curves[k][i];
    d.add(Component{Role::Surgery}, row, 0);
  }
  return FramedCobordism{d, ExtendedSurface::standard({}), ExtendedSurface::standard({g}), n, 1};
}

// Closed manifold from surgery on a framed link (plus embedded components).
inline FramedCobordism closed_manifold(const AbelianLinkData& link, long long n = 0) {
  return FramedCobordism{link, ExtendedSurface::standard({}), ExtendedSurface::standard({}), n, 1};
}

// L(p, 1): surgery on the p-framed unknot.
inline AbelianLinkData lens_space_link(long long p) {
  AbelianLinkData d;
  d.add(Component{Role::Surgery}, {}, p);
  return d;
}

// Twist curves pushed off the bottom graph: M o I_h for the word's mapping class h.
inline FramedCobordism precompose_bottom(const FramedCobordism& M, const std::vector<TwistLetter>& letters) {
  FramedCobordism r = M;
  auto cb = core_indices(M.link, Role::CoreBottom, M.bottom.genera);
  const int G = static_cast<int>(cb.size());
  // each curve lives on one boundary component
  std::vector<int> owner(G);
  for (int i = 0, off = 0; i < static_cast<int>(M.bottom.genera.size()); off += M.bottom.genera[i], ++i)
    for (int k = 0; k < M.bottom.genera[i]; ++k) owner[off + k] = i;
  for (const auto& l : letters) {
    if (static_cast<int>(l.cls.size()) != 2 * G) throw DomainError("precompose_bottom: class has the wrong length");
    int who = -1;
    for (int i = 0; i < G; ++i)
      if (l.cls[i] || l.cls[G + i]) {
        if (who != -1 && owner[i] != who) throw DomainError("precompose_bottom: curve spans two boundary components");
        who = owner[i];
      }
  }
  add_twist_curves(r.link, cb, letters);
  return r;
}

inline FramedCobordism mapping_cylinder(const ExtendedMappingClass& x) {
  FramedCobordism c = cylinder({x.genus}, x.weight);
  return precompose_bottom(c, x.curves);
}

// Disjoint union: tensor product of the state spaces, bottom (and top) components of M first.
inline FramedCobordism disjoint_union(const FramedCobordism& M, const FramedCobordism& Mp) {
  FramedCobordism r;
  r.link = link_union(M.link, Mp.link, static_cast<int>(M.bottom.genera.size()),
                      static_cast<int>(M.top.genera.size()));
  r.bottom = M.bottom;
  r.top = M.top;
  for (size_t i = 0; i < Mp.bottom.genera.size(); ++i) {
    r.bottom.genera.push_back(Mp.bottom.genera[i]);
    r.bottom.lagrangians.push_back(Mp.bottom.lagrangians[i]);
  }
  for (size_t i = 0; i < Mp.top.genera.size(); ++i) {
    r.top.genera.push_back(Mp.top.genera[i]);
    r.top.lagrangians.push_back(Mp.top.lagrangians[i]);
  }
  r.weight = M.weight + Mp.weight;
  r.pieces = M.pieces + Mp.pieces;
  return r;
}

// Turaev composition of parameterized cobordisms along the identity: the overlapping graph
// circles d_i = c'_i become surgery components, and a 0-framed horizontal circle (linking
// number zero with everything) is placed around every interface component but the first.
// The weight of the result is n_M + n_M'; see glue() for the framed weight.
inline FramedCobordism turaev_compose(const FramedCobordism& M, const FramedCobordism& Mp) {
  if (M.top.genera != Mp.bottom.genera) throw DomainError("glue: interface mismatch");
  if (M.pieces != 1 || Mp.pieces != 1) throw DomainError("glue: cobordisms must be connected");
  const auto& A = M.link;
  const auto& Bp = Mp.link;
  auto dt = core_indices(A, Role::CoreTop, M.top.genera);
  auto cb = core_indices(Bp, Role::CoreBottom, Mp.bottom.genera);
  const int G = static_cast<int>(dt.size());
  std::vector<int> keepA, keepB;
  for (int i = 0; i < A.size(); ++i)
    if (A.comps[i].role != Role::CoreTop) keepA.push_back(i);
  for (int i = 0; i < Bp.size(); ++i)
    if (Bp.comps[i].role != Role::CoreBottom) keepB.push_back(i);
  const int na = static_cast<int>(keepA.size()), nb = static_cast<int>(keepB.size());
  const int kint = static_cast<int>(M.top.genera.size());
  const int nh = std::max(0, kint - 1);
  const int n = na + nb + G + nh;
  AbelianLinkData r;
  r.B = IntMatrix(n, n);
  for (int i = 0; i < na; ++i) {
    r.comps.push_back(A.comps[keepA[i]]);
    for (int j = 0; j < na; ++j) r.B(i, j) = A.B(keepA[i], keepA[j]);
  }
  for (int i = 0; i < nb; ++i) {
    r.comps.push_back(Bp.comps[keepB[i]]);
    for (int j = 0; j < nb; ++j) r.B(na + i, na + j) = Bp.B(keepB[i], keepB[j]);
  }
  for (int k = 0; k < G; ++k) {
    const int u = na + nb + k;
    r.comps.push_back(Component{Role::Surgery});
    for (int i = 0; i < na; ++i) r.B(u, i) = r.B(i, u) = A.B(dt[k], keepA[i]);
    for (int i = 0; i < nb; ++i) r.B(u, na + i) = r.B(na + i, u) = Bp.B(cb[k], keepB[i]);
    for (int l = 0; l < G; ++l) r.B(u, na + nb + l) = A.B(dt[k], dt[l]) + Bp.B(cb[k], cb[l]);
  }
  for (int k = 0; k < nh; ++k) r.comps.push_back(Component{Role::Surgery});
  FramedCobordism out{r, M.bottom, Mp.top, M.weight + Mp.weight, 1};
  return out;
}

// Framed gluing of M and M' along the extended homeomorphism h: top(M) -> bottom(M').
// n'' = n_M + n_M' + n_h + tau(h N_M(L_-), h L_+, N^{M'}(L'_+)) + tau(h L_+, L'_-, N^{M'}(L'_+)).
inline FramedCobordism glue(const FramedCobordism& M, const FramedCobordism& Mp, const ExtendedMappingClass& h) {
  if (M.top.genera != Mp.bottom.genera) throw DomainError("glue: interface mismatch");
  const int G = M.top.total_genus();
  if (h.genus != G) throw DomainError("glue: mapping class genus does not match the interface");
  FramedCobordism Mh = precompose_bottom(Mp, h.curves);
  FramedCobordism r = turaev_compose(M, Mh);
  long long n = M.weight + Mp.weight + h.weight;
  if (G > 0) {
    const RatMatrix Lm = M.bottom.lagrangian(), Lp = M.top.lagrangian();
    const RatMatrix Lpm = Mp.bottom.lagrangian(), Lpp = Mp.top.lagrangian();
    const RatMatrix hN = act(h.sp, boundary_image_lagrangian(M, Side::Forward, Lm));
    const RatMatrix hLp = act(h.sp, Lp);
    const RatMatrix Nup = boundary_image_lagrangian(Mp, Side::Backward, Lpp);
    n += tau(hN, hLp, Nup) + tau(hLp, Lpm, Nup);
  }
  r.weight = n;
  return r;
}

// Weight of the map V(h) in standard coordinates: F(h, n_k) represents h: (Sigma, L) -> (Sigma', L').
inline long long state_map_weight(const ExtendedMappingClass& h, const RatMatrix& L, const RatMatrix& Lp) {
  if (h.genus == 0) return h.weight;
  const RatMatrix S = standard_lagrangian(h.genus);
  return h.weight + tau(act(h.sp, S), act(h.sp, L), Lp) - tau(act(h.sp, S), S, Lp);
}

}  // namespace thetatqft
