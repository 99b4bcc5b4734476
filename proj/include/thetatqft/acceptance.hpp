#pragma once

// The twelve acceptance checks, shared by the acceptance binary and `thetatqft selftest`.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "thetatqft/cobordism.hpp"
#include "thetatqft/heisenberg.hpp"
#include "thetatqft/mcg.hpp"
#include "thetatqft/sampling.hpp"
#include "thetatqft/skein.hpp"
#include "thetatqft/theta_numeric.hpp"

namespace thetatqft {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance_detail {

inline std::vector<std::string> generator_names(int g) {
  std::vector<std::string> out;
  for (int i = 1; i <= g; ++i) {
    out.push_back("Ta" + std::to_string(i));
    out.push_back("Tb" + std::to_string(i));
    out.push_back("phi" + std::to_string(i));
    if (i < g) out.push_back("Tc" + std::to_string(i));
  }
  return out;
}

inline ScalarMatrix identity_of_genus(int G, int N) { return ScalarMatrix::identity(static_cast<int>(int_pow(N, G)), N); }

inline std::string fail_at(const std::string& what) { return "failed at " + what; }

// 1
inline std::string closed_examples(std::mt19937_64&, int) {
  for (int N : {2, 4, 6, 8, 10}) {
    if (closed_invariant(AbelianLinkData{}, 0, N) != Scalar::sqrt_n(N, -1)) return fail_at("S^3 N=" + std::to_string(N));
    if (closed_invariant(lens_space_link(0), 0, N) != Scalar::one(N)) return fail_at("S^2xS^1 N=" + std::to_string(N));
  }
  return "S^3 = N^{-1/2}, S^2xS^1 = 1 for N = 2..10";
}

// 2
inline std::string kirby(std::mt19937_64& rng, int) {
  std::uniform_int_distribution<int> size(1, 5), emb(0, 2), sgn(0, 1);
  int k2 = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + 2 * (trial % 3);
    AbelianLinkData d = random_closed_link(size(rng), emb(rng), rng, 3);
    const Scalar z = closed_invariant(d, 0, N);
    for (int s : {1, -1})
      if (closed_invariant(kirby_k1(d, s), 0, N) != z) return fail_at("k1 trial " + std::to_string(trial));
    auto surg = d.indices(Role::Surgery);
    if (surg.size() >= 2) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(surg.size()) - 1);
      int i = pick(rng), j = pick(rng);
      if (i == j) j = (j + 1) % static_cast<int>(surg.size());
      if (closed_invariant(kirby_k2(d, surg[i], surg[j], sgn(rng) ? 1 : -1), 0, N) != z)
        return fail_at("k2 trial " + std::to_string(trial));
      ++k2;
    }
  }
  return "100 random links, k1 both signs, " + std::to_string(k2) + " k2 slides";
}

// 3
inline std::string cylinders(std::mt19937_64&, int threads) {
  for (int g : {1, 2, 3})
    for (int N : {2, 4})
      for (int n = -2; n <= 2; ++n)
        if (z_matrix(cylinder({g}, n), N, threads) != Scalar::anomaly(N, n) * identity_of_genus(g, N))
          return fail_at("g=" + std::to_string(g) + " N=" + std::to_string(N) + " n=" + std::to_string(n));
  return "g in {1,2,3}, n in -2..2, N in {2,4}";
}

// 4
inline std::string dual_basis(std::mt19937_64&, int) {
  long long via_surgery = 0;
  for (int g : {1, 2, 3})
    for (int N : {2, 4, 6}) {
      const int n = static_cast<int>(int_pow(N, g));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          auto mi = multi_index(i, g, N), mj = multi_index(j, g, N);
          const Scalar expect = i == j ? Scalar::sqrt_n(N, g) : Scalar::zero(N);
          if (pairing(ThetaVector::basis(g, N, mi), ThetaVector::basis(g, N, mj)) != expect)
            return fail_at("Gram g=" + std::to_string(g) + " N=" + std::to_string(N));
          // the same entry through the cylinder presentation
          if (pairing_via_surgery(g, N, mi, mj) != expect)
            return fail_at("surgery pin g=" + std::to_string(g) + " N=" + std::to_string(N));
          ++via_surgery;
        }
    }
  return "Gram = N^{g/2} I for g<=3, N<=6; " + std::to_string(via_surgery) + " entries recomputed by surgery";
}

// 5
inline std::string gluing(std::mt19937_64& rng, int threads) {
  int glued = 0, composed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int N = trial % 2 ? 4 : 2;
    std::vector<int> mid{1 + trial % 2};
    if (trial % 7 == 3) mid = {1, 1};
    std::vector<int> bottom{trial % 3 == 0 ? 0 : 1}, top{1};
    FramedCobordism M = random_cobordism(bottom, mid, trial % 4, trial % 2, rng, true);
    FramedCobordism Mp = random_cobordism(mid, top, (trial / 2) % 4, 1, rng, true);
    int G = 0;
    for (int g : mid) G += g;
    ExtendedMappingClass h =
        mid.size() == 1 ? random_mapping_class(G, rng, 3) : ExtendedMappingClass::identity(G, trial % 3);
    ExtendedMappingClass hk = h;
    hk.weight = state_map_weight(h, M.top.lagrangian(), Mp.bottom.lagrangian());
    if (z_matrix(glue(M, Mp, h), N, threads) != z_matrix(Mp, N) * rep_F(hk, N) * z_matrix(M, N))
      return fail_at("gluing trial " + std::to_string(trial));
    ++glued;
    // parameterized composition along the identity
    FramedCobordism P = M, Pp = Mp;
    P.bottom = ExtendedSurface::standard(P.bottom.genera);
    P.top = ExtendedSurface::standard(P.top.genera);
    Pp.bottom = ExtendedSurface::standard(Pp.bottom.genera);
    Pp.top = ExtendedSurface::standard(Pp.top.genera);
    const int gm = P.bottom.total_genus(), gp = Pp.top.total_genus();
    const int t = tau(boundary_image_lagrangian(P, Side::Forward, standard_lagrangian(gm)), standard_lagrangian(G),
                      boundary_image_lagrangian(Pp, Side::Backward, standard_lagrangian(gp)));
    if (z_param(turaev_compose(P, Pp), N, threads) != Scalar::anomaly(N, -t) * (z_param(Pp, N) * z_param(P, N)))
      return fail_at("composition identity trial " + std::to_string(trial));
    ++composed;
  }
  return std::to_string(glued) + " gluing-axiom pairs, " + std::to_string(composed) + " parameterized compositions";
}

inline ExtendedMappingClass random_word(int g, int maxlen, std::mt19937_64& rng) {
  auto names = generator_names(g);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1), len(1, maxlen), sgn(0, 1), w(-3, 3);
  ExtendedMappingClass x = ExtendedMappingClass::identity(g, w(rng));
  const int L = len(rng);
  for (int k = 0; k < L; ++k) x = emcg_compose(x, generator(g, names[pick(rng)], sgn(rng) ? 1 : -1));
  return x;
}

// 6
inline std::string multiplicativity(std::mt19937_64& rng, int) {
  int count = 0;
  for (int k = 0; k < 120; ++k) {
    const int g = 1 + k % 2;
    const int N = 2 + 2 * ((k / 2) % 3);
    auto x = random_word(g, 6, rng), y = random_word(g, 6, rng);
    if (rep_F(emcg_compose(x, y), N) != rep_F(x, N) * rep_F(y, N))
      return fail_at("word pair " + std::to_string(k));
    ++count;
  }
  return std::to_string(count) + " random word pairs, lengths <= 6, g in {1,2}, N in {2,4,6}";
}

// 7
inline std::string egorov(std::mt19937_64&, int) {
  long long checks = 0;
  for (int g : {1, 2})
    for (int N : {2, 4})
      for (const auto& name : generator_names(g))
        for (int s : {1, -1}) {
          auto x = generator(g, name, s);
          auto F = rep_F(x, N);
          const long long total = int_pow(N, 2 * g);
          for (long long i = 0; i < total; ++i) {
            auto v = multi_index(i, 2 * g, N);
            std::vector<long long> p(v.begin(), v.begin() + g), q(v.begin() + g, v.end());
            if (!egorov_check(x, F, p, q, N)) return fail_at(name + " N=" + std::to_string(N));
            ++checks;
          }
        }
  return std::to_string(checks) + " generator/(p,q) identities";
}

// 8
inline std::string phi_transform(std::mt19937_64&, int) {
  for (int N : {2, 4, 6}) {
    auto F = rep_F(generator(1, "phi"), N);
    ThetaVector v = F.apply(ThetaVector::basis(1, N, {0}));
    for (int j = 0; j < N; ++j)
      if (v[j] != Scalar::sqrt_n(N, -1)) return fail_at("F(phi) vacuum N=" + std::to_string(N));
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if (std::abs(std::abs(F(r, c).to_complex()) - 1.0 / std::sqrt(double(N))) > 1e-12)
          return fail_at("modulus N=" + std::to_string(N));
  }
  return "F(phi,0) vacuum = N^{-1/2} sum a^j and |entries| = N^{-1/2}, N in {2,4,6}";
}

// 9
inline std::string heisenberg(std::mt19937_64& rng, int) {
  std::uniform_int_distribution<int> d(-9, 9);
  for (int k = 0; k < 500; ++k) {
    const int g = 1 + k % 2, N = 2 + 2 * (k % 3);
    HeisElement x{std::vector<long long>(g), std::vector<long long>(g), d(rng)};
    HeisElement y{std::vector<long long>(g), std::vector<long long>(g), d(rng)};
    for (int i = 0; i < g; ++i) {
      x.p[i] = d(rng);
      x.q[i] = d(rng);
      y.p[i] = d(rng);
      y.q[i] = d(rng);
    }
    if (!(schrodinger(heis_mul(x, y, N), N) == schrodinger(x, N) * schrodinger(y, N)))
      return fail_at("homomorphism triple " + std::to_string(k));
  }
  for (int N : {2, 4, 6})
    for (int g : {1, 2}) {
      MonomialOp c = schrodinger(HeisElement{std::vector<long long>(g, 0), std::vector<long long>(g, 0), 1}, N);
      for (int j = 0; j < c.dim(); ++j)
        if (c.target[j] != j || floor_mod(c.phase[j], 2 * N) != 1) return fail_at("center N=" + std::to_string(N));
    }
  for (auto [g, N] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {1, 6}, {2, 2}})
    if (commutant_dimension(g, N) != 1) return fail_at("commutant g=" + std::to_string(g) + " N=" + std::to_string(N));
  return "500 products, center acts by e^{pi i/N}, commutant dimension 1";
}

// 10
inline std::string maslov_machinery(std::mt19937_64& rng, int) {
  int configs = 0;
  for (int k = 0; k < 210; ++k) {
    const int g = 1 + k % 3;
    const RatMatrix S = standard_lagrangian(g);
    RatMatrix L[4];
    for (auto& l : L) l = act(random_symplectic(g, rng, 8), S);
    const int t = maslov(L[0], L[1], L[2]);
    if (maslov(L[1], L[0], L[2]) != -t || maslov(L[0], L[2], L[1]) != -t) return fail_at("antisymmetry");
    IntMatrix h = random_symplectic(g, rng, 8);
    if (maslov(act(h, L[0]), act(h, L[1]), act(h, L[2])) != t) return fail_at("Sp invariance");
    if (maslov(L[0], L[1], L[2]) - maslov(L[0], L[1], L[3]) + maslov(L[0], L[2], L[3]) - maslov(L[1], L[2], L[3]) != 0)
      return fail_at("cocycle");
    ++configs;
  }
  int pairs = 0;
  for (int g : {1, 2}) {
    const RatMatrix S = standard_lagrangian(g);
    for (const auto& a : generator_names(g))
      for (const auto& b : generator_names(g))
        for (int sa : {1, -1})
          for (int sb : {1, -1}) {
            auto x = generator(g, a, sa), y = generator(g, b, sb);
            std::vector<TwistLetter> both = x.curves;
            both.insert(both.end(), y.curves.begin(), y.curves.end());
            if (sigma_star(g, both) != sigma_star(g, x.curves) + sigma_star(g, y.curves) - tau(act(x.sp * y.sp, S), act(x.sp, S), S))
              return fail_at("sigma_* bookkeeping " + a + " " + b);
            ++pairs;
          }
  }
  return std::to_string(configs) + " Lagrangian configurations, " + std::to_string(pairs) + " generator pairs";
}

// 11
inline std::string theta_numerics(std::mt19937_64& rng, int) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst_q = 0, worst_g = 0;
  for (double tau_im : {1.0, 2.0})
    for (int N : {2, 4}) {
      PeriodMatrix P({{cplx(0, tau_im)}});
      for (int k = 0; k < 5; ++k) {
        CVec z{cplx(u(rng), u(rng))};
        for (int mu = 0; mu < N; ++mu)
          for (int lk = 0; lk < 2; ++lk) worst_q = std::max(worst_q, quasi_periodicity_residual({mu}, P, z, N, lk, 30));
      }
      auto G = theta_gram(P, N, 200, 20);
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) worst_g = std::max(worst_g, std::abs(G[a][b] - (a == b ? 1.0 : 0.0)));
    }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max quasi-periodicity residual %.2e, max |Gram - I| %.2e", worst_q, worst_g);
  if (worst_q >= 1e-10 || worst_g >= 1e-6) return fail_at(buf);
  return buf;
}

// naive independent sum for L(p,1)
inline Scalar lens_naive(long long p, int N) {
  Scalar s(N);
  for (long long j = 0; j < N; ++j) s += Scalar::zeta(N, 4 * floor_mod(p * j * j, 2LL * N));
  const int sg = p > 0 ? 1 : (p < 0 ? -1 : 0);
  return Scalar::zeta(N, -sg * N) * s.times_sqrt_n(-2);
}

// 12
inline std::string lens_spaces(std::mt19937_64&, int) {
  int count = 0;
  for (int N = 2; N <= 10; N += 2)
    for (long long p = -12; p <= 12; ++p) {
      if (closed_invariant(lens_space_link(p), 0, N) != lens_naive(p, N))
        return fail_at("p=" + std::to_string(p) + " N=" + std::to_string(N));
      ++count;
    }
  return std::to_string(count) + " lens spaces, |p| <= 12, N <= 10";
}

}  // namespace acceptance_detail

// Runs all criteria; `report` is called after each one.
inline std::vector<CriterionResult> run_acceptance(unsigned long long seed, int threads,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  using namespace acceptance_detail;
  using Fn = std::string (*)(std::mt19937_64&, int);
  const std::vector<std::pair<std::string, Fn>> list{
      {"closed invariants S^3 and S^2xS^1", closed_examples},
      {"Kirby invariance k1/k2", kirby},
      {"identity and weighted cylinders", cylinders},
      {"dual basis and surgery pin", dual_basis},
      {"gluing axiom and composition identity", gluing},
      {"mapping class multiplicativity", multiplicativity},
      {"Egorov identity", egorov},
      {"genus-1 phi transform", phi_transform},
      {"Heisenberg representation", heisenberg},
      {"Maslov index and sigma_* bookkeeping", maslov_machinery},
      {"theta numerics", theta_numerics},
      {"lens spaces against naive sum", lens_spaces},
  };
  std::vector<CriterionResult> out;
  for (size_t i = 0; i < list.size(); ++i) {
    std::mt19937_64 rng(seed + i);
    CriterionResult r{static_cast<int>(i + 1), list[i].first, false, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = list[i].second(rng, threads);
      r.pass = r.detail.rfind("failed", 0) != 0;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (report) report(r);
    out.push_back(r);
  }
  return out;
}

}  // namespace thetatqft
