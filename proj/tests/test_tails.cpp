#include <gtest/gtest.h>

#include "polarium/polarium.hpp"

using namespace polarium;

namespace {

Covector cov(std::initializer_list<int> xs) {
  Covector c;
  for (int x : xs) c.emplace_back(Rational(x));
  return c;
}

// Trace-zero diagonal (mu_1, ..., mu_n) of sl_n written in fundamental weights.
Covector from_diagonal(const std::vector<int>& mu) {
  Covector c;
  for (std::size_t k = 0; k + 1 < mu.size(); ++k) c.emplace_back(Rational(mu[k] - mu[k + 1]));
  return c;
}

}  // namespace

TEST(PairCoroot, A1FundamentalWeight) {
  auto rd = RootDatum::build("A1");
  auto lam = Tail::single(Rational(1), cov({1}), 1);
  auto s = pair_coroot(rd, lam, 0);
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.terms().begin()->first, Rational(1));
  EXPECT_EQ(s.terms().begin()->second, CycloNumber(1));
  EXPECT_EQ(*depth(s), Rational(1));
  EXPECT_TRUE(pair_coroot(rd, Tail(1, 1), 0).empty());
}

TEST(PairCoroot, A2CartanOracle) {
  auto rd = RootDatum::build("A2");
  auto lam = Tail::single(Rational(1), cov({1, 0}), 1);
  // <alpha_i^vee, varpi_j> = delta_ij
  EXPECT_TRUE(pair_coroot(rd, lam, 1).empty());
  EXPECT_FALSE(pair_coroot(rd, lam, 0).empty());
}

TEST(PairCoroot, DiagonalDifferences) {
  auto rd = RootDatum::build("A2");
  std::vector<int> mu2{2, -1, -1}, mu1{0, 1, -1};
  Tail lam(2, 1);
  lam.add(Rational(2), from_diagonal(mu2));
  lam.add(Rational(1), from_diagonal(mu1));
  // positive roots e_i - e_j in enumeration order: (0,1), (1,2), (0,2)
  std::vector<std::pair<int, int>> ij{{0, 1}, {1, 2}, {0, 2}};
  for (int a = 0; a < 3; ++a) {
    auto s = pair_coroot(rd, lam, a);
    auto [i, j] = ij[static_cast<std::size_t>(a)];
    ScalarTail expect;
    expect.add(Rational(2), CycloNumber(Rational(mu2[i] - mu2[j])));
    expect.add(Rational(1), CycloNumber(Rational(mu1[i] - mu1[j])));
    EXPECT_EQ(s, expect);
  }
}

TEST(Depth, Support) {
  ScalarTail s(2);
  EXPECT_FALSE(depth(s).has_value());
  s.add(Rational(0), CycloNumber(1));
  s.add(Rational(3, 2), CycloNumber(5));
  EXPECT_EQ(*depth(s), Rational(3, 2));
}

TEST(TailArith, NegationCancels) {
  Tail lam(2, 3);
  lam.add(Rational(1, 3), Covector{zeta(3, 1), CycloNumber(2)});
  lam.add(Rational(2), cov({1, -1}));
  EXPECT_TRUE((lam + lam.scaled(CycloNumber(-1))).is_zero());
  EXPECT_TRUE((lam - lam).is_zero());
}

TEST(TailArith, ReflectionNegatesInA1) {
  auto rd = RootDatum::build("A1");
  auto W = WeylGroup::generate(rd);
  auto lam = Tail::single(Rational(1), cov({1}), 1);
  EXPECT_EQ(weyl_act(W[1], lam), Tail::single(Rational(1), cov({-1}), 1));
  EXPECT_EQ(weyl_act(W[0], lam), lam);
}

TEST(TailArith, ConductorMixing) {
  auto a = Tail::single(Rational(1, 2), cov({1}), 2);
  auto b = Tail::single(Rational(1, 3), cov({1}), 3);
  auto c = a + b;
  EXPECT_EQ(c.m(), 6);
  EXPECT_EQ(c.terms().size(), 2u);
  EXPECT_THROW(Tail::single(Rational(1, 3), cov({1}), 2), Error);
  EXPECT_THROW(Tail::single(Rational(-1), cov({1}), 1), Error);
}

TEST(TailArith, ZeroTermsDropped) {
  Tail lam(1, 1);
  lam.add(Rational(1), cov({0}));
  EXPECT_TRUE(lam.is_zero());
}

TEST(Equivariance, EigenvectorTailsAreFixedPoints) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  for (const auto& tc : list_torus_classes(W))
    for (std::int64_t k = 0; k <= 2 * tc.m; ++k)
      for (const auto& v : tc.eigenspace(k)) {
        auto lam = Tail::single(Rational(k, tc.m), v, tc.m);
        EXPECT_TRUE(is_equivariant(lam, tc.element, tc.m));
        // weyl_act equals the termwise zeta rescaling
        EXPECT_EQ(weyl_act(tc.element, lam), lam.scaled(zeta(tc.m, k)));
      }
}

TEST(Equivariance, PairingIsLinearAndDepthBounded) {
  auto rd = RootDatum::build("B2");
  Tail a(2, 1), b(2, 1);
  a.add(Rational(3), cov({1, 2}));
  a.add(Rational(1), cov({0, 1}));
  b.add(Rational(3), cov({-1, 1}));
  b.add(Rational(2), cov({4, 0}));
  for (int r = 0; r < rd.num_roots(); ++r) {
    auto lhs = pair_coroot(rd, a + b.scaled(CycloNumber(3)), r);
    ScalarTail rhs;
    auto pa = pair_coroot(rd, a, r), pb = pair_coroot(rd, b, r);
    for (auto& [q, c] : pa.terms()) rhs.add(q, c);
    for (auto& [q, c] : pb.terms()) rhs.add(q, c * CycloNumber(3));
    EXPECT_EQ(lhs, rhs);
    auto dp = pair_coroot(rd, a, r).depth();
    if (dp) EXPECT_LE(*dp, *a.depth());
  }
}
