#include <gtest/gtest.h>

#include <random>

#include "thetatqft/theta_numeric.hpp"

using namespace thetatqft;

namespace {
const cplx I(0.0, 1.0);
}

TEST(ThetaNumeric, GenusOneValueAtOrigin) {
  PeriodMatrix P({{I}});
  // N = 2, Pi = i, mu = 0: sum_n exp(-2 pi n^2)
  double oracle = 0.0;
  for (int n = -60; n <= 60; ++n) oracle += std::exp(-2.0 * M_PI * n * n);
  auto v = theta_eval({0}, P, {0.0}, 2, 5);
  EXPECT_NEAR(v.value.real(), oracle, 1e-14);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-14);
  EXPECT_NEAR(oracle, 1.0037348855, 1e-9);
  EXPECT_LT(v.tail_bound, 1e-30);
}

TEST(ThetaNumeric, ReflectionSymmetry) {
  PeriodMatrix P({{0.3 + 1.1 * I}});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int N : {2, 4}) {
    for (int t = 0; t < 10; ++t) {
      cplx z(u(rng), u(rng));
      for (long long mu = 0; mu < N; ++mu) {
        cplx a = theta_eval({mu}, P, {-z}, N, 30).value;
        cplx b = theta_eval({floor_mod(-mu, N)}, P, {z}, N, 30).value;
        EXPECT_LT(std::abs(a - b), 1e-12);
      }
    }
  }
}

TEST(ThetaNumeric, QuasiPeriodicity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PeriodMatrix> mats{PeriodMatrix({{I}}), PeriodMatrix({{0.25 + 1.3 * I}}),
                                 PeriodMatrix({{1.0 * I, 0.2 + 0.3 * I}, {0.2 + 0.3 * I, 1.5 * I}})};
  for (const auto& P : mats) {
    const int g = P.genus();
    for (int N : {2, 4}) {
      for (int t = 0; t < 20; ++t) {
        // z = x + Pi y in a fundamental domain
        std::vector<double> x(g), y(g);
        for (int i = 0; i < g; ++i) {
          x[i] = u(rng);
          y[i] = u(rng);
        }
        CVec z(g);
        for (int i = 0; i < g; ++i) {
          z[i] = x[i];
          for (int j = 0; j < g; ++j) z[i] += P(i, j) * y[j];
        }
        std::vector<long long> mu(g);
        for (auto& m : mu) m = rng() % N;
        for (int k = 0; k < 2 * g; ++k) EXPECT_LT(quasi_periodicity_residual(mu, P, z, N, k, 30), 1e-10);
      }
    }
  }
}

TEST(ThetaNumeric, GramIsIdentity) {
  for (auto [N, tau] : std::vector<std::pair<int, double>>{{2, 1.0}, {4, 2.0}, {4, 1.0}, {2, 2.0}}) {
    PeriodMatrix P({{tau * I}});
    auto G = theta_gram(P, N, 200, 20);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        EXPECT_LT(std::abs(G[a][b] - (a == b ? 1.0 : 0.0)), 1e-6) << N << " " << a << " " << b;
        EXPECT_LT(std::abs(G[a][b] - std::conj(G[b][a])), 1e-12);
      }
  }
}

TEST(ThetaNumeric, GramGenusTwoCoarse) {
  PeriodMatrix P({{1.0 * I, 0.25 * I}, {0.25 * I, 1.2 * I}});
  auto G = theta_gram(P, 2, 14, 6);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_LT(std::abs(G[a][b] - (a == b ? 1.0 : 0.0)), 1e-6);
}

TEST(ThetaNumeric, ActionCoherence) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-5, 5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  PeriodMatrix P({{0.1 + 1.2 * I}});
  for (int N : {2, 4, 6}) {
    for (int t = 0; t < 20; ++t) {
      CVec f(N);
      for (auto& c : f) c = cplx(u(rng), u(rng));
      double r = action_coherence_residual(P, N, {d(rng)}, {d(rng)}, d(rng), {d(rng)}, {d(rng)}, d(rng), f,
                                           {cplx(u(rng), u(rng))}, 30);
      EXPECT_LT(r, 1e-9);
    }
  }
}

TEST(ThetaNumeric, Guards) {
  EXPECT_THROW(PeriodMatrix({{-1.0 * I}}), DomainError);
  EXPECT_THROW(PeriodMatrix({{1.0 * I, 0.0}, {1.0, 1.0 * I}}), DomainError);
  PeriodMatrix P3({{I, 0, 0}, {0, I, 0}, {0, 0, I}});
  EXPECT_THROW(theta_gram(P3, 2, 4), GuardError);
}
