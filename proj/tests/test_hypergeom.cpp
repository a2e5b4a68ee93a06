#include <gtest/gtest.h>

#include <orbgw/hypergeom.hpp>

using namespace orbgw;

namespace {

Exponent ex(std::initializer_list<int> v) {
  Exponent e{};
  int i = 0;
  for (int x : v) e[i++] = static_cast<std::uint8_t>(x);
  return e;
}

// prod_{l<floor a}(l1 - (<a>+l) z) prod_{m<floor b}(l2 - (<b>+m) z), expanded by hand-style recursion
LaurentPoly c2zn_factor_oracle(int n, const std::vector<int>& k) {
  Rational a(0), b(0);
  for (int i = 1; i < n; ++i) {
    a += make_rational((n - i) * k[i], n);
    b += make_rational(i * k[i], n);
  }
  std::map<int, RatFunc> p{{0, RatFunc(1)}};
  auto mul = [&](const RatFunc& lam, const Rational& c) {
    std::map<int, RatFunc> q;
    for (auto& [zp, v] : p) {
      q[zp] += v * lam;
      q[zp + 1] += v * RatFunc(-c);
    }
    p.clear();
    for (auto& [zp, v] : q)
      if (!v.is_zero()) p[zp] = v;
  };
  for (long l = 0; l < floor_long(a); ++l) mul(RatFunc::lambda(1), frac(a) + l);
  for (long m = 0; m < floor_long(b); ++m) mul(RatFunc::lambda(2), frac(b) + m);
  return p;
}

}  // namespace

TEST(JUntwisted, Examples) {
  auto J = j_un_bzn(3, 4);
  EXPECT_EQ(J.get(0, 1).coeff(Exponent{}), 1);
  EXPECT_EQ(J.get(0, -1).coeff(ex({0, 1, 1})), 1);
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(J.get(0, 1 - m).coeff(ex({m, 0, 0})), RatFunc(Rational(1) / factorial(m)));
  EXPECT_TRUE(J.get(1, 1 - 2).coeff(ex({0, 0, 2})) == RatFunc(make_rational(1, 2)));
}

TEST(TopTypes, Enumeration) {
  auto m2 = model_c2_zn(2);
  EXPECT_EQ(enumerate_toptypes(m2, 0).size(), 1u);
  auto t = enumerate_toptypes(m2, 2);
  EXPECT_EQ(t.size(), 6u);
  auto m3 = model_c2_zn(3);
  for (auto& e : enumerate_toptypes(m3, 2))
    if (e.k == std::vector<int>{0, 1, 1}) {
      EXPECT_EQ(e.outComponent, 0);
      EXPECT_EQ(e.lastMarking, 0);
    }
}

TEST(ModificationFactor, C2ZnExamples) {
  auto m = model_c2_zn(2);
  ZWindow w = default_window(4);
  TopTypeEntry t;
  t.k = {0, 1};
  t.outComponent = 1;
  EXPECT_EQ(modification_factor(m, t, w), (LaurentPoly{{0, RatFunc(1)}}));
  t.k = {0, 2};
  t.outComponent = 0;
  auto M = modification_factor(m, t, w);
  EXPECT_EQ(M.size(), 1u);
  EXPECT_EQ(M[0], RatFunc::lambda(1) * RatFunc::lambda(2));
}

TEST(ModificationFactor, C2ZnMatchesClosedForm) {
  for (int n = 2; n <= 5; ++n) {
    auto m = model_c2_zn(n);
    for (auto& t : enumerate_toptypes(m, 6)) {
      auto M = modification_factor(m, t, default_window(6));
      EXPECT_EQ(M, c2zn_factor_oracle(n, t.k)) << n;
      for (auto N : n_theta(m, t)) EXPECT_LE(N, 0);
    }
  }
}

TEST(ModificationFactor, C3Z3) {
  auto m = model_c3_z3();
  TopTypeEntry t;
  t.k = {0, 4, 0};
  t.outComponent = 1;
  auto M = modification_factor(m, t, default_window(6));
  // alpha = 4/3: prod_j (l_j - z/3)
  EXPECT_EQ(M.size(), 4u);
  EXPECT_EQ(M[3], RatFunc(make_rational(-1, 27)));
  EXPECT_EQ(M[0], RatFunc::parse("l1*l2*l3"));
}

TEST(ModificationFactor, NonIntegralThrows) {
  auto m = model_c2_zn(3);
  m.fWeights[1][0] = make_rational(1, 2);
  TopTypeEntry t;
  t.k = {0, 2, 0};
  t.outComponent = 2;
  EXPECT_THROW(n_theta(m, t), std::domain_error);
}

TEST(ITwisted, ShapeAndSpecialTerms) {
  for (int n = 2; n <= 4; ++n) {
    int D = 6;
    auto I = i_twisted(model_c2_zn(n), D);
    // z coefficient is exactly 1_0
    for (int b = 0; b < n; ++b) {
      auto s = I.get(b, 1);
      if (b == 0)
        EXPECT_EQ(s, Series<RatFunc>::constant(I.vars(), D, RatFunc(1)));
      else
        EXPECT_TRUE(s.is_zero());
    }
    EXPECT_EQ(I.max_zpow(), 1);
  }
  auto I2 = i_twisted(model_c2_zn(2), 4);
  EXPECT_EQ(I2.get(0, -1).coeff(ex({0, 2})), RatFunc::parse("1/2*l1*l2"));
}

TEST(ITwisted, UntwistedLimit) {
  for (int n = 2; n <= 4; ++n) {
    int D = 5;
    IOptions o;
    o.untwisted = true;
    o.window = ZWindow{1 - D, 1};
    EXPECT_EQ(i_twisted(model_c2_zn(n), D, o), j_un_bzn(n, D));
  }
}

TEST(ITwisted, WindowTooSmall) {
  IOptions o;
  EXPECT_THROW(i_twisted(model_c3_z3(), 6, o), std::out_of_range);
  o.zeroVars = {false, false, true};
  EXPECT_NO_THROW(i_twisted(model_c3_z3(), 6, o));
}

TEST(PicardFuchs, ResidualsVanish) {
  int D = 8;
  auto I2 = i_twisted(model_c2_zn(2), D);
  EXPECT_TRUE(pf_residual(2, {0}, I2).is_zero());
  EXPECT_TRUE(pf_residual(2, {2}, I2).is_zero());
  EXPECT_TRUE(pf_residual(2, {-2}, I2).is_zero());
  EXPECT_TRUE(pf_residual(2, {4}, I2).is_zero());
  auto I3 = i_twisted(model_c2_zn(3), D);
  for (auto k : std::vector<std::vector<int>>{{3, 0}, {1, 1}, {0, 3}, {2, -1}, {-1, 2}, {2, 2}})
    EXPECT_TRUE(pf_residual(3, k, I3).is_zero()) << k[0] << "," << k[1];
  EXPECT_TRUE(string_residual(I2).is_zero());
  EXPECT_TRUE(string_residual(I3).is_zero());
  // a deliberately wrong relation is detected
  auto bad = I2;
  bad.add_term(0, -1, ex({0, 2}), RatFunc(1));
  EXPECT_FALSE(pf_residual(2, {2}, bad).is_zero());
  EXPECT_THROW(pf_residual(3, {1, 0}, I3), std::invalid_argument);
}
