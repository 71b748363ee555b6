#include <gtest/gtest.h>

#include "polarium/polarium.hpp"

using namespace polarium;

namespace {

Covector cov(std::initializer_list<int> xs) {
  Covector c;
  for (int x : xs) c.emplace_back(Rational(x));
  return c;
}

Tail sl3_example() {
  Tail lam(2, 1);
  lam.add(Rational(2), cov({3, 0}));
  lam.add(Rational(1), cov({-1, 2}));
  return lam;
}

}  // namespace

TEST(YuLadder, Sl3WorkedExample) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  auto d = classify(W, split_torus(W), sl3_example());
  auto y = yu_ladder(W, d);
  EXPECT_EQ(y.breaks, (std::vector<Rational>{1, 2}));
  ASSERT_EQ(y.levels.size(), 3u);
  EXPECT_TRUE(y.levels[0].empty());
  EXPECT_EQ(y.levels[1], (RootSet{1, 4}));
  EXPECT_EQ(y.levels[2], rd.all_roots());
  EXPECT_EQ(y.components[0], Tail::single(Rational(1), cov({-1, 2}), 1));
  EXPECT_EQ(y.components[1], Tail::single(Rational(2), cov({3, 0}), 1));
  EXPECT_TRUE(y.components[2].is_zero());
  EXPECT_EQ(y.half_depths, (std::vector<Rational>{Rational(1, 2), 1}));
}

TEST(YuLadder, GZero) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  auto y = yu_ladder(W, classify(W, split_torus(W), Tail(2, 1)));
  EXPECT_TRUE(y.breaks.empty());
  ASSERT_EQ(y.levels.size(), 1u);
  EXPECT_EQ(y.levels[0], rd.all_roots());
  ASSERT_EQ(y.components.size(), 1u);
  EXPECT_TRUE(y.components[0].is_zero());
}

TEST(YuLadder, A1Epipelagic) {
  auto rd = RootDatum::build("A1");
  auto W = WeylGroup::generate(rd);
  auto y = yu_ladder(W, epipelagic_datum(W, 2));
  EXPECT_EQ(y.breaks, (std::vector<Rational>{Rational(1, 2)}));
  ASSERT_EQ(y.levels.size(), 2u);
  EXPECT_TRUE(y.levels[0].empty());
}

TEST(YuLadder, A1DepthOneToral) {
  auto rd = RootDatum::build("A1");
  auto W = WeylGroup::generate(rd);
  auto d = classify(W, split_torus(W), Tail::single(Rational(1), cov({1}), 1));
  auto y = yu_ladder(W, d);
  EXPECT_EQ(y.d(), 1u);
  EXPECT_EQ(y.components[0], d.lambda);
  EXPECT_TRUE(y.components[1].is_zero());
}

TEST(YuLadder, ComponentsBelowFirstBreakAreAbsorbed) {
  // a q = 1/2 term below r_0 = 1 that every coroot sees at a higher depth
  auto rd = RootDatum::build("A1");
  auto W = WeylGroup::generate(rd);
  Tail lam(1, 1);
  lam.add(Rational(0), cov({1}));
  lam.add(Rational(1), cov({2}));
  auto y = yu_ladder(W, classify(W, split_torus(W), lam));
  EXPECT_EQ(y.breaks, (std::vector<Rational>{1}));
  EXPECT_EQ(y.components[0], lam);
}

TEST(YuLadder, SublevelSetsOnSamples) {
  for (auto t : {"A2", "B2", "G2"}) {
    auto rd = RootDatum::build(t);
    auto W = WeylGroup::generate(rd);
    auto classes = list_torus_classes(W);
    PartitionConfig cfg;
    for (std::size_t s = 0; s < 60; ++s) {
      auto rng = sample_rng(5, s);
      auto d = draw_sample(W, classes, rng, cfg);
      auto y = yu_ladder(W, d);
      EXPECT_EQ(y.levels.size(), y.breaks.size() + 1);
      for (int a = 0; a < rd.num_roots(); ++a) {
        if (std::binary_search(d.levi.begin(), d.levi.end(), a)) continue;
        auto r = *pair_coroot(rd, d.lambda, a).depth();
        std::size_t first = 0;
        while (!std::binary_search(y.levels[first].begin(), y.levels[first].end(), a)) ++first;
        std::size_t expect = 1;
        while (expect < y.breaks.size() && y.breaks[expect - 1] < r) ++expect;
        EXPECT_EQ(first, expect);
      }
    }
  }
}
