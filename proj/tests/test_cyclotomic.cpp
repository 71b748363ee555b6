#include <random>

#include <gtest/gtest.h>

#include "polarium/cyclotomic.hpp"

using namespace polarium;

namespace {

CycloNumber random_element(std::mt19937& rng, std::int64_t conductor) {
  std::uniform_int_distribution<int> coef(-4, 4), dn(1, 3);
  std::vector<Rational> c(static_cast<std::size_t>(euler_phi(conductor)));
  for (auto& x : c) x = Rational(coef(rng), dn(rng));
  return CycloNumber::from_coeffs(conductor, c);
}

}  // namespace

TEST(CyclotomicPolynomial, KnownSmallCases) {
  auto p12 = *detail::cyclotomic_poly(12);  // x^4 - x^2 + 1
  ASSERT_EQ(p12.size(), 5u);
  EXPECT_EQ(p12[0], 1);
  EXPECT_EQ(p12[2], -1);
  EXPECT_EQ(p12[4], 1);
  EXPECT_EQ(euler_phi(12), 4);
  EXPECT_EQ(euler_phi(7), 6);
  EXPECT_EQ(detail::cyclotomic_poly(7)->size(), 7u);
}

TEST(CycloNumber, Make) {
  EXPECT_EQ(zeta(4, 2), CycloNumber(-1));
  EXPECT_TRUE((zeta(3, 0) + zeta(3, 1) + zeta(3, 2)).is_zero());
  EXPECT_EQ(zeta(1, 0), CycloNumber(1));
  EXPECT_EQ(zeta(5, 7), zeta(5, 2));
  EXPECT_EQ(zeta(5, -1), zeta(5, 4));
  EXPECT_THROW(zeta(0, 1), Error);
  try {
    zeta(-3, 0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(CycloNumber, Arithmetic) {
  EXPECT_EQ(CycloNumber(1) / zeta(5, 1), zeta(5, 4));
  EXPECT_EQ(zeta(6, 1) * zeta(6, 1), zeta(6, 2));
  EXPECT_EQ(zeta(6, 2), zeta(3, 1));
  auto s = zeta(3, 1) + zeta(4, 1);
  EXPECT_EQ(s.conductor(), 12);
  EXPECT_EQ(s, zeta(12, 4) + zeta(12, 3));
  try {
    (void)(zeta(7, 2) / CycloNumber());
    FAIL() << "expected division by zero";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArithmeticError);
  }
}

TEST(CycloNumber, LiftConductor) {
  EXPECT_EQ(CycloNumber(-1).lift(2).lift(4), zeta(4, 2));
  EXPECT_TRUE(CycloNumber().lift(9).is_zero());
  EXPECT_EQ(zeta(3, 1).lift(12).coeffs(), zeta(12, 4).coeffs());
  EXPECT_THROW(zeta(3, 1).lift(4), Error);
}

TEST(CycloNumber, RetractInvertsLift) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_element(rng, 5);
    auto back = a.lift(20).retract(5);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->coeffs(), a.coeffs());
  }
  EXPECT_FALSE(zeta(4, 1).lift(8).retract(2).has_value());
}

TEST(CycloNumber, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(2024);
  for (std::int64_t L : {3, 4, 5, 8, 9, 12}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto a = random_element(rng, L), b = random_element(rng, L), c = random_element(rng, L);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
    }
  }
}

TEST(CycloNumber, MixedConductorEqualityIsStable) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_element(rng, 3), b = random_element(rng, 4);
    EXPECT_EQ((a + b).lift(24), a.lift(24) + b.lift(24));
    EXPECT_EQ(a * b, a.lift(12) * b.lift(12));
  }
}

TEST(CycloNumber, ScaledRootOfUnityDetection) {
  auto x = zeta(8, 3) * CycloNumber(Rational(-2, 3));
  auto r = x.as_scaled_root_of_unity();
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(CycloNumber(r->first) * zeta(8, r->second), x);
  EXPECT_FALSE((zeta(8, 0) + zeta(8, 1)).as_scaled_root_of_unity().has_value());
}

TEST(SqrtRational, SquaresBack) {
  for (auto q : {Rational(2), Rational(-1), Rational(-2), Rational(3), Rational(-3), Rational(5),
                 Rational(6), Rational(12), Rational(-7, 4), Rational(9, 2), Rational(30)}) {
    auto s = sqrt_rational(q);
    EXPECT_EQ(s * s, CycloNumber(q)) << to_string(q);
  }
  EXPECT_EQ(sqrt_rational(Rational(4)), CycloNumber(2));
  EXPECT_TRUE(sqrt_rational(Rational(-2)).retract(8).has_value());
}
