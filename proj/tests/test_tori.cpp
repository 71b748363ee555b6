#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace polarium;

namespace {

int coxeter_index(const WeylGroup& W) {
  // product of the simple reflections in order
  int c = 0;
  for (int s : W.simple_reflections()) c = W.compose(c, s);
  return c;
}

void expect_eigen_decomposition(const RootDatum& rd, const TorusClass& tc) {
  std::size_t total = 0;
  linalg::SpanTracker<CycloNumber> all(static_cast<std::size_t>(rd.rank()));
  for (std::int64_t i = 0; i < tc.m; ++i)
    for (const auto& v : tc.eigenspace(i)) {
      ++total;
      EXPECT_TRUE(all.insert(v));
      auto wv = act(tc.element.matrix, v);
      for (std::size_t k = 0; k < v.size(); ++k) EXPECT_EQ(wv[k], zeta(tc.m, i) * v[k]);
    }
  EXPECT_EQ(total, static_cast<std::size_t>(rd.rank()));
}

}  // namespace

TEST(TorusClass, A1Reflection) {
  auto rd = RootDatum::build("A1");
  auto W = WeylGroup::generate(rd);
  auto tc = make_torus_class(W, 1, 2);
  EXPECT_EQ(tc.eigenspace(1).size(), 1u);
  EXPECT_TRUE(tc.eigenspace(0).empty());
  expect_eigen_decomposition(rd, tc);
  EXPECT_TRUE(is_springer_regular(rd, tc));
}

TEST(TorusClass, IdentityPeriodOne) {
  for (auto t : {"A2", "B2", "G2"}) {
    auto rd = RootDatum::build(t);
    auto W = WeylGroup::generate(rd);
    auto tc = make_torus_class(W, 0, 1);
    EXPECT_EQ(tc.eigenspace(0).size(), static_cast<std::size_t>(rd.rank()));
    EXPECT_TRUE(is_springer_regular(rd, tc));
  }
}

TEST(TorusClass, A2CoxeterEigenspaces) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  auto tc = make_torus_class(W, coxeter_index(W), 3);
  EXPECT_EQ(tc.eigenspace(0).size(), 0u);
  EXPECT_EQ(tc.eigenspace(1).size(), 1u);
  EXPECT_EQ(tc.eigenspace(2).size(), 1u);
  expect_eigen_decomposition(rd, tc);
}

TEST(TorusClass, RejectsWrongPeriod) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  try {
    make_torus_class(W, coxeter_index(W), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(TorusClass, A2SimpleReflectionMatchesOracle) {
  auto rd = RootDatum::build("A2");
  auto W = WeylGroup::generate(rd);
  auto tc = make_torus_class(W, W.simple_reflections()[0], 2);
  EXPECT_EQ(is_springer_regular(rd, tc), oracle::random_vector_regular(rd, tc));
}

TEST(ListTorusClasses, CountsMatchFullConjugation) {
  for (auto [t, expect] : std::vector<std::pair<const char*, std::size_t>>{{"A1", 2}, {"A2", 3}, {"B2", 5}, {"G2", 6}, {"A3", 5}}) {
    auto rd = RootDatum::build(t);
    auto W = WeylGroup::generate(rd);
    auto classes = list_torus_classes(W);
    EXPECT_EQ(classes.size(), oracle::conjugacy_class_count(W)) << t;
    EXPECT_EQ(classes.size(), expect) << t;
    for (const auto& tc : classes) {
      EXPECT_EQ(tc.m, W.order_of(tc.w));
      expect_eigen_decomposition(rd, tc);
    }
  }
}

TEST(RegularNumbers, AgreeWithRandomVectorOracle) {
  for (auto t : {"A1", "A2", "A3", "B2", "G2"}) {
    auto rd = RootDatum::build(t);
    auto W = WeylGroup::generate(rd);
    std::set<std::int64_t> from_oracle;
    for (const auto& tc : list_torus_classes(W)) {
      bool r = oracle::random_vector_regular(rd, tc);
      EXPECT_EQ(is_springer_regular(rd, tc), r) << t << " class of order " << tc.m;
      if (r) from_oracle.insert(tc.m);
    }
    auto rn = regular_numbers(W);
    EXPECT_EQ(rn.regular, from_oracle) << t;
    EXPECT_TRUE(rn.regular.count(coxeter_number(rd))) << t;
    EXPECT_TRUE(rn.elliptic.count(coxeter_number(rd))) << t;
  }
}

TEST(RegularNumbers, Examples) {
  auto a1 = regular_numbers(WeylGroup::generate(RootDatum::build("A1")));
  EXPECT_EQ(a1.regular, (std::set<std::int64_t>{1, 2}));
  EXPECT_EQ(a1.elliptic, (std::set<std::int64_t>{2}));
  auto a2 = regular_numbers(WeylGroup::generate(RootDatum::build("A2")));
  EXPECT_TRUE(a2.regular.count(3));
  EXPECT_FALSE(a2.regular.count(5));
  auto g2 = regular_numbers(WeylGroup::generate(RootDatum::build("G2")));
  EXPECT_TRUE(g2.regular.count(6));
}

TEST(Elliptic, NoFixedCovectorIffNoTrivialEigenspace) {
  auto rd = RootDatum::build("B2");
  auto W = WeylGroup::generate(rd);
  for (const auto& tc : list_torus_classes(W)) {
    auto a = linalg::zeros<Rational>(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) a[r][c] = Rational(tc.element.matrix(r, c) - (r == c ? 1 : 0));
    EXPECT_EQ(tc.is_elliptic(), linalg::determinant(a) != 0);
  }
}
