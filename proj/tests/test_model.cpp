#include <gtest/gtest.h>

#include <orbgw/model_io.hpp>

using namespace orbgw;

namespace {

Matrix<RatFunc> product(const Matrix<RatFunc>& a, const Matrix<RatFunc>& b) {
  std::size_t n = a.size();
  Matrix<RatFunc> c(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool is_identity(const Matrix<RatFunc>& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != RatFunc(i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST(Model, C2ZnData) {
  auto m2 = model_c2_zn(2);
  EXPECT_EQ(m2.pairing[1][1], RatFunc(make_rational(1, 2)));
  EXPECT_EQ(m2.pairing[0][0], RatFunc::parse("1/(2*l1*l2)"));
  auto m3 = model_c2_zn(3);
  EXPECT_EQ(m3.fWeights[1], (std::vector<Rational>{make_rational(2, 3), make_rational(1, 3)}));
  for (int n = 2; n <= 8; ++n) {
    auto m = model_c2_zn(n);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(m.involution[i], (n - i) % n);
      EXPECT_EQ(m.ages[i], i == 0 ? 0 : 1);
    }
    EXPECT_NO_THROW(validate_model(m));
  }
  EXPECT_THROW(model_c2_zn(1), std::invalid_argument);
}

TEST(Model, C3Z3Data) {
  auto m = model_c3_z3();
  EXPECT_EQ(m.pairing[1][2], RatFunc(make_rational(1, 3)));
  EXPECT_EQ(m.pairing[0][0], RatFunc::parse("1/(3*l1*l2*l3)"));
  EXPECT_EQ(m.ages, (std::vector<Rational>{0, 1, 2}));
  auto d = dual_basis(m);
  // duals 3 l1 l2 l3 1_0, 3 1_{2/3}, 3 1_{1/3}
  EXPECT_EQ(d[0][0], RatFunc::parse("3*l1*l2*l3"));
  EXPECT_EQ(d[2][1], RatFunc(3));
  EXPECT_EQ(d[1][2], RatFunc(3));
}

TEST(Model, DualBasisIsInverse) {
  for (auto m : {model_c2_zn(2), model_c2_zn(5), model_c3_z3(), model_quintic_ambient()})
    EXPECT_TRUE(is_identity(product(m.pairing, dual_basis(m)))) << m.name;
}

TEST(Model, QuinticDualsFromGeometricSeries) {
  auto m = model_quintic_ambient();
  auto d = dual_basis(m);
  RatFunc l1 = RatFunc::lambda(1);
  // phi^i = 2 p^{4-i} / (l1 + 5p) = 2 sum_k (-5)^k p^{4-i+k} / l1^{k+1}
  for (int i = 0; i < 5; ++i)
    for (int a = 0; a < 5; ++a) {
      int k = a - (4 - i);
      RatFunc expect(0);
      if (k >= 0) {
        RatFunc lp(1);
        for (int t = 0; t <= k; ++t) lp *= l1;
        expect = RatFunc(2 * pow(Rational(-5), k)) / lp;
      }
      EXPECT_EQ(d[a][i], expect) << a << " " << i;
    }
  EXPECT_EQ(d[5][5], RatFunc(2));
  EXPECT_EQ(d[0][4], RatFunc(2) / l1);
  EXPECT_EQ(m.ring->at(1).at(4).at(0), 0);
  EXPECT_EQ(m.ring->at(1).at(5).at(5), 0);
}

TEST(Model, JsonRoundTrip) {
  for (auto m : {model_c2_zn(4), model_c3_z3(), model_quintic_ambient()}) {
    auto j = model_to_json(m);
    auto back = load_model(json::parse(j.dump()));
    EXPECT_EQ(back, m) << m.name;
  }
}

TEST(Model, CustomWeightVector) {
  json j = {{"name", "bz5"}, {"twist", "inverseEuler"}, {"cyclicOrder", 5}, {"weights", {2, 3}}};
  auto m = load_model(j);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(m.fWeights[i][0], frac(make_rational(2 * i, 5)));
    EXPECT_EQ(m.fWeights[i][1], frac(make_rational(3 * i, 5)));
  }
}

TEST(Model, ValidationErrors) {
  auto j = model_to_json(model_c2_zn(3));
  auto bad_age = j;
  bad_age["inertia"][1]["age"] = "p/q";
  EXPECT_THROW(load_model(bad_age), std::invalid_argument);
  auto bad_f = j;
  bad_f["inertia"][1]["fWeights"][0] = "4/3";
  EXPECT_THROW(load_model(bad_f), std::invalid_argument);
  auto bad_inv = j;
  bad_inv["involution"] = {0, 1, 1};
  EXPECT_THROW(load_model(bad_inv), std::invalid_argument);
  auto bad_pair = j;
  bad_pair["pairing"][1][2] = "1/5";
  EXPECT_THROW(load_model(bad_pair), std::invalid_argument);
  auto singular = j;
  singular["pairing"][0][0] = "0";
  EXPECT_THROW(load_model(singular), std::invalid_argument);
  auto missing = j;
  missing.erase("involution");
  EXPECT_THROW(load_model(missing), std::invalid_argument);
}

TEST(Model, IntegralityOfN) {
  // a(k) + b(k) is an integer iff n | sum i k_i
  for (int n = 2; n <= 5; ++n) {
    auto m = model_c2_zn(n);
    std::vector<int> k(n, 0);
    for (int t = 0; t < 200; ++t) {
      int s = 0;
      for (int i = 1; i < n; ++i) {
        k[i] = (t * (i + 3) + i * i) % 4;
        s += i * k[i];
      }
      auto a = cyclic_alpha(m, k);
      EXPECT_EQ(is_integer(a[0] + a[1]), true);
      EXPECT_EQ(is_integer(a[1]), s % n == 0);
    }
  }
}
