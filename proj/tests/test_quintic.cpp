#include <gtest/gtest.h>

#include <orbgw/mirror.hpp>
#include <orbgw/quintic.hpp>

using namespace orbgw;

namespace {

Exponent tq(int t, int q) {
  Exponent e{};
  e[0] = static_cast<std::uint8_t>(t);
  e[1] = static_cast<std::uint8_t>(q);
  return e;
}

RatFunc l1() { return RatFunc::lambda(1); }

}  // namespace

TEST(Quintic, LeadingTerms) {
  int D = 4;
  auto I = quintic_i_function(D);
  auto v = I.vars();
  EXPECT_EQ(I.get(0, 1), Series<RatFunc>::constant(v, D, RatFunc(1)));
  for (int b = 1; b < 6; ++b) EXPECT_TRUE(I.get(b, 1).is_zero()) << b;
  EXPECT_EQ(I.get(1, 0).coeff(tq(1, 0)), RatFunc(1));
  EXPECT_EQ(I.get(0, 0).coeff(tq(0, 2)), RatFunc(60));
  EXPECT_EQ(I.get(5, 0).coeff(tq(0, 1)), RatFunc(0));
}

TEST(Quintic, BracketZMinusTwo) {
  int D = 4;
  auto I = quintic_i_function(D);
  auto v = I.vars();
  auto B = quintic_times_exp_tp(string_shift(I, Series<RatFunc>::monomial(v, D, tq(0, 2), RatFunc(60))), -1);
  for (auto& [k, s] : B.entries())
    for (auto& [e, c] : s.terms()) EXPECT_EQ(e[0], 0) << k.first << " " << k.second;
  EXPECT_EQ(B.get(5, -1).coeff(tq(0, 1)), RatFunc(30));
  EXPECT_EQ(B.get(0, -1).coeff(tq(0, 2)), l1() * RatFunc(137));
  EXPECT_EQ(B.get(1, -1).coeff(tq(0, 2)), RatFunc(265));
  EXPECT_EQ(B.get(0, -1).coeff(tq(0, 4)), RatFunc(7650));
}

TEST(Quintic, GenericFactorMatchesDirect) {
  auto m = model_quintic_ambient();
  for (int d2 = 0; d2 <= 5; ++d2) EXPECT_EQ(quintic_factor_generic(m, d2, -10), quintic_factor(d2, -10)) << d2;
}

TEST(Quintic, FactorExamples) {
  auto A1 = quintic_factor(1, -6);
  // (l + z/2)(l + 3z/2)(l + 5z/2) / ((z/2)^4 z)
  EXPECT_EQ(A1.terms().size(), 4u);
  EXPECT_EQ(A1.terms().at({0, -2}), RatFunc(30));
  EXPECT_EQ(A1.terms().at({0, -3}), RatFunc(92) * l1());
  EXPECT_EQ(A1.terms().at({0, -4}), RatFunc(72) * l1() * l1());
  EXPECT_EQ(A1.terms().at({0, -5}), RatFunc(16) * l1() * l1() * l1());
}

TEST(Quintic, WindowOverflow) {
  EXPECT_THROW(quintic_i_function(2, ZWindow{-4, 0}), std::out_of_range);
}
