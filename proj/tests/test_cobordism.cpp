#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "thetatqft/cobordism.hpp"
#include "thetatqft/sampling.hpp"

using namespace thetatqft;

namespace {

ScalarMatrix identity_on(const std::vector<int>& genera, int N) {
  int G = 0;
  for (int g : genera) G += g;
  return ScalarMatrix::identity(static_cast<int>(int_pow(N, G)), N);
}

// Lens space L(p, 1) by a naive loop: N^{-1} e^{-pi i sign(p)/4} sum_j t^{p j^2}, accumulated term by term.
Scalar lens_oracle(long long p, int N) {
  Scalar s(N);
  for (long long j = 0; j < N; ++j) s += Scalar::t_power(N, p * j * j);
  const int sg = p > 0 ? 1 : (p < 0 ? -1 : 0);
  return Scalar::anomaly(N, sg) * s.times_sqrt_n(-2);
}

std::complex<double> lens_float(long long p, int N) {
  std::complex<double> s = 0;
  for (long long j = 0; j < N; ++j) s += std::polar(1.0, M_PI * double(p * j * j) / N);
  const int sg = p > 0 ? 1 : (p < 0 ? -1 : 0);
  return std::polar(1.0, -M_PI * sg / 4) * s / double(N);
}

bool is_lagrangian_span(const RatMatrix& L, int g) { return L.cols() == g && is_lagrangian(L); }

}  // namespace

TEST(Cylinder, IdentityAndWeights) {
  for (int g : {0, 1, 2, 3})
    for (int N : {2, 4}) {
      if (int_pow(N, 2 * g) > 4096) continue;
      for (int n = -2; n <= 2; ++n)
        EXPECT_EQ(z_matrix(cylinder({g}, n), N), Scalar::anomaly(N, n) * identity_on({g}, N)) << g << " " << N;
    }
  // several boundary components
  EXPECT_EQ(z_matrix(cylinder({1, 1}), 2), identity_on({1, 1}, 2));
  EXPECT_EQ(z_matrix(cylinder({1, 0, 2}), 2), identity_on({1, 0, 2}, 2));
  EXPECT_EQ(z_matrix(cylinder({}), 4), identity_on({}, 4));
}

TEST(Cylinder, MarkingsDoNotChangeIdentity) {
  // the same Lagrangian on both ends: the Maslov corrections cancel
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    FramedCobordism C = cylinder({2});
    C.bottom = random_marking({2}, rng);
    C.top = C.bottom;
    EXPECT_EQ(effective_weight(C), 0);
    EXPECT_EQ(z_matrix(C, 2), identity_on({2}, 2));
  }
}

TEST(Handlebody, EmbeddedCurveGivesItsSkein) {
  for (int N : {2, 4, 6}) {
    for (long long p = 0; p < N; ++p) {
      auto Z = z_matrix(handlebody(1, {{p}}), N);
      ASSERT_EQ(Z.cols(), 1);
      for (int r = 0; r < N; ++r) EXPECT_EQ(Z(r, 0), r == p ? Scalar::one(N) : Scalar::zero(N));
    }
    // empty skein: the vacuum
    auto Z0 = z_matrix(handlebody(2), N);
    for (int r = 0; r < Z0.rows(); ++r) EXPECT_EQ(Z0(r, 0), r == 0 ? Scalar::one(N) : Scalar::zero(N));
  }
  // genus 2 with two curves: a_1 a_2^3 a_1
  auto Z = z_matrix(handlebody(2, {{1, 0}, {1, 3}}), 4);
  for (int r = 0; r < Z.rows(); ++r) EXPECT_EQ(Z(r, 0), r == basis_index({2, 3}, 4) ? Scalar::one(4) : Scalar::zero(4));
}

TEST(Closed, Examples) {
  for (int N : {2, 4, 6, 8, 10}) {
    EXPECT_EQ(closed_invariant(AbelianLinkData{}, 0, N), Scalar::sqrt_n(N, -1));
    EXPECT_EQ(closed_invariant(lens_space_link(0), 0, N), Scalar::one(N));
  }
  auto l41 = closed_invariant(lens_space_link(4), 0, 2);
  EXPECT_EQ(l41, Scalar::anomaly(2, 1));
  EXPECT_NEAR(std::abs(l41.to_complex() - std::polar(1.0, -M_PI / 4)), 0.0, 1e-12);
  EXPECT_NEAR(closed_invariant(AbelianLinkData{}, 0, 4).to_complex().real(), 0.5, 1e-15);
  // weight multiplies by the anomaly
  EXPECT_EQ(closed_invariant(lens_space_link(3), 2, 4), Scalar::anomaly(4, 2) * closed_invariant(lens_space_link(3), 0, 4));
  AbelianLinkData withcore;
  withcore.add(Component{Role::CoreTop}, {}, 0);
  EXPECT_THROW(closed_invariant(withcore, 0, 2), DomainError);
}

TEST(Closed, LensSpacesAgainstNaiveSum) {
  for (int N = 2; N <= 10; N += 2)
    for (long long p = -12; p <= 12; ++p) {
      auto v = closed_invariant(lens_space_link(p), 0, N);
      ASSERT_EQ(v, lens_oracle(p, N)) << "p=" << p << " N=" << N;
      ASSERT_NEAR(std::abs(v.to_complex() - lens_float(p, N)), 0.0, 1e-10);
    }
}

TEST(Closed, KirbyInvariance) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> size(1, 5), emb(0, 2), sgn(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + 2 * (trial % 3);
    const int m = size(rng);
    AbelianLinkData d = random_closed_link(m, emb(rng), rng);
    const Scalar z = closed_invariant(d, 0, N);
    ASSERT_EQ(closed_invariant(kirby_k1(d, 1), 0, N), z);
    ASSERT_EQ(closed_invariant(kirby_k1(d, -1), 0, N), z);
    auto surg = d.indices(Role::Surgery);
    if (surg.size() >= 2) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(surg.size()) - 1);
      int i = pick(rng), j = pick(rng);
      if (i == j) j = (j + 1) % surg.size();
      ASSERT_EQ(closed_invariant(kirby_k2(d, surg[i], surg[j], sgn(rng) ? 1 : -1), 0, N), z);
    }
    ASSERT_EQ(closed_invariant(reverse_orientation(d, surg[0]), 0, N), z);
    // removing the added unknot again
    ASSERT_EQ(kirby_k1_remove(kirby_k1(d, 1), d.size()), d);
  }
}

TEST(Closed, EmbeddedSlidesOverSurgery) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    AbelianLinkData d = random_closed_link(2, 1, rng);
    auto e = d.indices(Role::Embedded)[0];
    auto s = d.indices(Role::Surgery)[trial % 2];
    EXPECT_EQ(closed_invariant(slide_edge(d, e, s, trial % 3 ? 1 : -1), 0, 4), closed_invariant(d, 0, 4));
  }
}

TEST(KirbyMoves, Errors) {
  AbelianLinkData d = lens_space_link(2);
  d.add(Component{Role::Embedded}, {1}, 0);
  EXPECT_THROW(kirby_k1(d, 2), DomainError);
  EXPECT_THROW(kirby_k2(d, 1, 0, 1), DomainError);
  EXPECT_THROW(slide(d, 0, 1, 1), DomainError);
  EXPECT_THROW(slide(d, 0, 0, 1), DomainError);
  EXPECT_THROW(slide_edge(d, 0, 0, 1), DomainError);
  EXPECT_THROW(kirby_k1_remove(d, 0), DomainError);
  EXPECT_THROW(reverse_orientation(d, 5), DomainError);
}

TEST(Cobordism, CoreSlidesPreserveZ) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    FramedCobordism M = random_cobordism({1}, {1}, 2, 1, rng);
    auto cores = M.link.indices(trial % 2 ? Role::CoreBottom : Role::CoreTop);
    auto s = M.link.indices(Role::Surgery);
    FramedCobordism M2 = M;
    M2.link = slide_edge(M.link, cores[0], s[trial % 2], trial % 3 ? 1 : -1);
    EXPECT_EQ(z_param(M2, 4), z_param(M, 4));
    EXPECT_EQ(z_matrix(M2, 4), z_matrix(M, 4));
  }
}

TEST(Cobordism, Validation) {
  FramedCobordism M = cylinder({1});
  M.top = ExtendedSurface::standard({2});
  EXPECT_THROW(z_matrix(M, 2), DomainError);
  FramedCobordism M2 = cylinder({1});
  M2.link.B(0, 2) = 5;
  EXPECT_THROW(z_matrix(M2, 2), DomainError);
  FramedCobordism big = cylinder({6});
  EXPECT_THROW(z_matrix(big, 10), GuardError);
}

TEST(BoundaryImage, Examples) {
  for (int g : {1, 2, 3}) {
    FramedCobordism C = cylinder({g});
    RatMatrix S = standard_lagrangian(g);
    RatMatrix A = meridian_lagrangian(g);
    EXPECT_TRUE(is_lagrangian_span(boundary_image_lagrangian(C, Side::Forward, S), g));
    EXPECT_EQ(rank(RatMatrix::hcat(boundary_image_lagrangian(C, Side::Forward, S), S)), g);
    EXPECT_EQ(rank(RatMatrix::hcat(boundary_image_lagrangian(C, Side::Forward, A), A)), g);
    EXPECT_EQ(rank(RatMatrix::hcat(boundary_image_lagrangian(C, Side::Backward, A), A)), g);
    // handlebody: the kernel Lagrangian is span(b)
    FramedCobordism H = handlebody(g);
    RatMatrix NH = boundary_image_lagrangian(H, Side::Forward, RatMatrix(0, 0));
    EXPECT_EQ(NH.cols(), g);
    EXPECT_EQ(rank(RatMatrix::hcat(NH, S)), g);
  }
  // a lone top core and no surgery: the complement of an unknotted solid torus, kernel span(a)
  AbelianLinkData d;
  d.add(Component{Role::CoreTop}, {}, 0);
  FramedCobordism T{d, ExtendedSurface::standard({}), ExtendedSurface::standard({1}), 0, 1};
  RatMatrix NT = boundary_image_lagrangian(T, Side::Forward, RatMatrix(0, 0));
  EXPECT_EQ(rank(RatMatrix::hcat(NT, meridian_lagrangian(1))), 1);
}

TEST(BoundaryImage, RandomCobordismsGiveLagrangians) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> bottom{1 + trial % 2}, top{1 + (trial / 2) % 2};
    if (trial % 5 == 0) top = {1, 1};
    FramedCobordism M = random_cobordism(bottom, top, trial % 4, trial % 2, rng, true);
    const int gm = M.bottom.total_genus(), gp = M.top.total_genus();
    EXPECT_TRUE(is_lagrangian_span(boundary_image_lagrangian(M, Side::Forward, M.bottom.lagrangian()), gp));
    EXPECT_TRUE(is_lagrangian_span(boundary_image_lagrangian(M, Side::Backward, M.top.lagrangian()), gm));
  }
}

TEST(MappingCylinder, EqualsRepresentation) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const int g = 1 + trial % 2, N = trial % 3 ? 2 : 4;
    auto x = random_mapping_class(g, rng, 4);
    EXPECT_EQ(z_matrix(mapping_cylinder(x), N), rep_F(x, N)) << trial;
  }
}

TEST(Axioms, DisjointUnionTensors) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 15; ++trial) {
    FramedCobordism M = random_cobordism({1}, {trial % 2}, 1 + trial % 3, trial % 2, rng, true);
    FramedCobordism Mp = random_cobordism({trial % 2}, {1}, 1 + trial % 2, 1, rng, true);
    const int N = 2 + 2 * (trial % 2);
    EXPECT_EQ(z_matrix(disjoint_union(M, Mp), N), ScalarMatrix::kron(z_matrix(M, N), z_matrix(Mp, N)));
  }
  // union with the empty cobordism
  FramedCobordism M = random_cobordism({1}, {1}, 2, 0, rng);
  EXPECT_EQ(z_matrix(disjoint_union(M, cylinder({})), 4), z_matrix(M, 4));
}

TEST(Axioms, CylinderCompositionIsAdditive) {
  for (int g : {1, 2}) {
    auto C = glue(cylinder({g}, 1), cylinder({g}, 2), ExtendedMappingClass::identity(g));
    EXPECT_EQ(C.weight, 3);
    EXPECT_EQ(z_matrix(C, 2), Scalar::anomaly(2, 3) * identity_on({g}, 2));
  }
}

TEST(Axioms, GluingAxiom) {
  std::mt19937_64 rng(28);
  int count = 0, nonzero = 0, sensitive = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int N = trial % 2 ? 4 : 2;
    std::vector<int> mid{1 + trial % 2};
    if (trial % 7 == 3) mid = {1, 1};
    std::vector<int> bottom{trial % 3 == 0 ? 0 : 1}, top{1};
    FramedCobordism M = random_cobordism(bottom, mid, trial % 4, trial % 2, rng, true);
    FramedCobordism Mp = random_cobordism(mid, top, (trial / 2) % 3, 1, rng, true);
    int G = 0;
    for (int g : mid) G += g;
    ExtendedMappingClass h = mid.size() == 1 ? random_mapping_class(G, rng, 3) : ExtendedMappingClass::identity(G, trial % 3);
    FramedCobordism glued = glue(M, Mp, h);
    const long long nk = state_map_weight(h, M.top.lagrangian(), Mp.bottom.lagrangian());
    ExtendedMappingClass hk = h;
    hk.weight = nk;
    ScalarMatrix lhs = z_matrix(glued, N);
    ScalarMatrix rhs = z_matrix(Mp, N) * rep_F(hk, N) * z_matrix(M, N);
    ASSERT_EQ(lhs, rhs) << "trial " << trial;
    ++count;
    bool nz = false;
    for (int r = 0; r < lhs.rows(); ++r)
      for (int c = 0; c < lhs.cols(); ++c) nz = nz || !lhs(r, c).is_zero();
    nonzero += nz;
    FramedCobordism naive = glued;
    naive.weight = M.weight + Mp.weight + h.weight;
    sensitive += z_matrix(naive, N) != lhs;
  }
  EXPECT_GE(count, 40);
  // the check is not vacuous and the Maslov terms matter
  EXPECT_GE(nonzero, 20);
  EXPECT_GE(sensitive, 5);
}

TEST(Axioms, ParameterizedComposition) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = trial % 2 ? 4 : 2;
    std::vector<int> mid{1 + trial % 2};
    FramedCobordism M = random_cobordism({1}, mid, trial % 4, 0, rng);
    FramedCobordism Mp = random_cobordism(mid, {1}, (trial / 2) % 4, 1, rng);
    const RatMatrix L = standard_lagrangian(mid[0]);
    const int t = tau(boundary_image_lagrangian(M, Side::Forward, standard_lagrangian(1)), L,
                      boundary_image_lagrangian(Mp, Side::Backward, standard_lagrangian(1)));
    ScalarMatrix lhs = z_param(turaev_compose(M, Mp), N);
    ScalarMatrix rhs = Scalar::anomaly(N, -t) * (z_param(Mp, N) * z_param(M, N));
    ASSERT_EQ(lhs, rhs) << "trial " << trial;
  }
}

TEST(Axioms, GluingIsAssociative) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 15; ++trial) {
    FramedCobordism A = random_cobordism({1}, {1}, 1 + trial % 2, 0, rng, true);
    FramedCobordism B = random_cobordism({1}, {1}, 1, 1, rng, true);
    FramedCobordism C = random_cobordism({1}, {1}, trial % 3, 0, rng, true);
    auto h1 = random_mapping_class(1, rng, 3), h2 = random_mapping_class(1, rng, 3);
    auto left = glue(glue(A, B, h1), C, h2);
    auto right = glue(A, glue(B, C, h2), h1);
    EXPECT_EQ(effective_weight(left), effective_weight(right));
    EXPECT_EQ(z_matrix(left, 2), z_matrix(right, 2));
  }
}

TEST(Axioms, ClosedFromGluedHandlebodies) {
  // H_1 glued to its mirror along phi: S^3; along the identity: S^2 x S^1
  for (int N : {2, 4, 6}) {
    FramedCobordism H = handlebody(1);
    // the dual handlebody as a cobordism to the empty surface
    AbelianLinkData d;
    int c = d.add(Component{Role::CoreBottom, 0, 0}, {}, 0);
    std::vector<long long> row(d.size(), 0);
    row[c] = 1;
    d.add(Component{Role::Surgery}, row, 0);
    FramedCobordism Hd{d, ExtendedSurface::standard({1}), ExtendedSurface::standard({}), 0, 1};
    ScalarMatrix s2s1 = z_matrix(glue(H, Hd, ExtendedMappingClass::identity(1)), N);
    ScalarMatrix direct = z_matrix(Hd, N) * z_matrix(H, N);
    EXPECT_EQ(s2s1, direct);
    EXPECT_EQ(s2s1(0, 0), Scalar::one(N));
    ScalarMatrix s3 = z_matrix(glue(H, Hd, generator(1, "phi")), N);
    EXPECT_EQ(s3(0, 0), Scalar::sqrt_n(N, -1));
  }
}
