#include <gtest/gtest.h>

#include <orbgw/invariants.hpp>

using namespace orbgw;

namespace {

RatFunc l1() { return RatFunc::lambda(1); }

const Correlator* find(const std::vector<Correlator>& cs, int basis, int psi, const Rational& d) {
  for (auto& c : cs)
    if (c.insertions[0].basis == basis && c.insertions[0].psi == psi && c.degree == d) return &c;
  return nullptr;
}

// h = tan(t/2)/2 from h' = 1/4 + h^2
std::vector<Rational> half_tan_half(int D) {
  std::vector<Rational> h(D + 1, Rational(0));
  for (int k = 0; k < D; ++k) {
    Rational s = k == 0 ? make_rational(1, 4) : Rational(0);
    for (int i = 0; i <= k; ++i) s += h[i] * h[k - i];
    h[k + 1] = s / (k + 1);
  }
  return h;
}

Series<RatFunc> swap_lambda(const Series<RatFunc>& s) {
  std::array<int, kMaxLambda> perm{};
  for (int j = 0; j < kMaxLambda; ++j) perm[j] = j;
  std::swap(perm[0], perm[1]);
  return s.map_coeffs([&](const RatFunc& c) { return c.permute(perm); });
}

Series<RatFunc> swap_tau(const Series<RatFunc>& s, int n) {
  Series<RatFunc> r(s.vars(), s.truncation());
  for (auto& [e, c] : s.terms()) {
    Exponent f = e;
    for (int i = 1; i < n; ++i) f[i] = e[n - i];
    r.add_term(f, c);
  }
  return r;
}

}  // namespace

TEST(Invariants, QuinticSix) {
  auto cs = quintic_invariants(2);
  auto half = make_rational(1, 2);
  ASSERT_TRUE(find(cs, 5, 0, half));
  EXPECT_EQ(find(cs, 5, 0, half)->value, RatFunc(15));
  EXPECT_EQ(find(cs, 2, 0, 1)->value, RatFunc(make_rational(1325, 2)));
  EXPECT_EQ(find(cs, 3, 0, 1)->value, l1() * RatFunc(475));
  EXPECT_EQ(find(cs, 4, 0, 1)->value, l1() * l1() * RatFunc(make_rational(137, 2)));
  EXPECT_EQ(find(cs, 3, 0, 2)->value, RatFunc(19125));
  EXPECT_EQ(find(cs, 4, 0, 2)->value, l1() * RatFunc(3825));
  EXPECT_TRUE(quintic_invariants(0).empty());
}

TEST(Invariants, QuinticDivisorByRing) {
  int D = 4;
  auto I = quintic_i_function(D);
  EXPECT_EQ(times_exp_divisor(I, model_quintic_ambient(), 1, -1), quintic_times_exp_tp(I, -1));
  auto J = quintic_j_function(D);
  EXPECT_EQ(J.get(0, 0), Series<RatFunc>(J.vars(), D));
}

TEST(Invariants, NonEquivariantLimit) {
  auto cs = quintic_invariants(1);
  auto m = model_quintic_ambient();
  EXPECT_EQ(non_equivariant_limit(*find(cs, 5, 0, make_rational(1, 2)), m).value, RatFunc(15));
  EXPECT_EQ(non_equivariant_limit(*find(cs, 3, 0, 1), m).value, RatFunc(0));
  Correlator pole{"quintic", {{0, 0}}, 1, RatFunc(1) / l1()};
  EXPECT_THROW(non_equivariant_limit(pole, m), std::domain_error);
  Correlator c{"c2z2", {{0, 0}}, 0, RatFunc(1)};
  EXPECT_THROW(non_equivariant_limit(c, model_c2_zn(2)), std::domain_error);
}

TEST(Invariants, RoutesAgree) {
  for (int n = 2; n <= 4; ++n) {
    int D = 6;
    auto a = potential_derivatives_c2zn(n, D, Route::A);
    auto b = potential_derivatives_c2zn(n, D, Route::B);
    for (int r = 0; r < n; ++r) EXPECT_EQ(a[r], b[r]) << n << " " << r;
  }
}

TEST(Invariants, RouteBWithSeriesInverse) {
  int n = 3, D = 6;
  auto x = invert_series(mirror_map_c2zn(n, D), tau_vars(n));
  auto a = potential_derivatives_c2zn(n, D, Route::B, &x);
  auto b = potential_derivatives_c2zn(n, D, Route::A);
  for (int r = 0; r < n; ++r) EXPECT_EQ(a[r], b[r]);
}

TEST(Invariants, MixedPartialsAndPairing) {
  for (int n = 2; n <= 4; ++n) {
    int D = 6;
    auto g = potential_derivatives_c2zn(n, D, Route::B);
    auto m = model_c2_zn(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(g[i].diff(j), g[j].diff(i));
        EXPECT_EQ(g[i].diff(j).diff(0).constant_term(), m.pairing[i][j]) << n << " " << i << " " << j;
      }
  }
}

TEST(Invariants, LambdaSwapCovariance) {
  for (int n = 2; n <= 4; ++n) {
    auto g = potential_derivatives_c2zn(n, 6, Route::A);
    EXPECT_EQ(swap_tau(swap_lambda(g[0]), n), g[0]);
    for (int r = 1; r < n; ++r) EXPECT_EQ(swap_tau(swap_lambda(g[r]), n), g[n - r]);
  }
}

TEST(Invariants, A1HalfTan) {
  int D = 12;
  auto x = closed_form_inverse_an(2, D);
  auto tv = tau_vars(2);
  auto dG = compose(dg_c2zn(2, 1, D), x, tv, D);
  EXPECT_GE(dG.min_degree(), 3);
  auto third = dG.diff(1).diff(1);
  auto h = half_tan_half(D);
  for (int k = 0; k <= D - 2; ++k) {
    Exponent e{};
    e[1] = static_cast<std::uint8_t>(k);
    EXPECT_EQ(third.coeff(e), h[k]) << k;
  }
  EXPECT_EQ(h[1], make_rational(1, 4));
  EXPECT_EQ(h[3], make_rational(1, 48));
  EXPECT_EQ(h[5], make_rational(1, 480));
}

TEST(Invariants, GPartVanishesToOrderThree) {
  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r < n; ++r) EXPECT_GE(dg_c2zn(n, r, 7).min_degree(), 2) << n << " " << r;
}

TEST(Invariants, C3Z3Table) {
  auto N = invariants_c3z3(6, 18);
  std::vector<Rational> expect{make_rational(1, 3),       make_rational(-1, 27),
                               make_rational(1, 9),       make_rational(-1093, 729),
                               make_rational(119401, 2187), make_rational(-27428707, 6561)};
  EXPECT_EQ(N, expect);
  EXPECT_THROW(invariants_c3z3(3, 7), std::invalid_argument);
}

TEST(Invariants, C3Z3AgainstIFunction) {
  int D = 10;
  IOptions o;
  o.zeroVars = {true, false, true};
  o.window = ZWindow{-1, 1};
  auto I = i_twisted(model_c3_z3(), D, o);
  auto one = make_vars({"x1"});
  auto rebind1 = [&](const Series<RatFunc>& s) {
    Series<RatFunc> r(one, D);
    for (auto& [e, c] : s.terms()) {
      Exponent f{};
      f[0] = e[1];
      r.add_term(f, c);
    }
    return r;
  };
  EXPECT_EQ(rebind1(I.get(2, -1)), to_ratfunc_series(c3z3_df1_x(D)).scaled(RatFunc(3)));
  EXPECT_EQ(rebind1(I.get(1, -1)), c3z3_df2_lambda_part(D));
  Exponent e4{};
  e4[0] = 4;
  RatFunc lsum = RatFunc::lambda(1) + RatFunc::lambda(2) + RatFunc::lambda(3);
  EXPECT_EQ(c3z3_df2_lambda_part(D).coeff(e4), lsum * RatFunc(make_rational(1, 216)));
}
