#include <gtest/gtest.h>

#include <orbgw/crepant.hpp>

using namespace orbgw;

TEST(Crepant, LMatrixA1) {
  auto L = l_matrix(2);
  EXPECT_EQ(L[1][1], Cyc::zeta_pow(4, 1));
  EXPECT_EQ((L[1][1] * L[1][1].conj()).to_rational(), 1);
  EXPECT_EQ(L[0][0], Cyc(1L));
  EXPECT_TRUE(L[0][1].is_zero());
  EXPECT_TRUE(L[1][0].is_zero());
}

TEST(Crepant, LMatrixNumeric) {
  for (int n = 2; n <= 6; ++n) {
    auto L = l_matrix(n);
    std::complex<double> z = std::polar(1.0, std::numbers::pi / n);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        auto want = std::pow(z, 2 * i * j) * (std::pow(z, -j) - std::pow(z, j)) / double(n);
        EXPECT_LT(std::abs(L[i][j].to_complex() - want), 1e-12);
      }
  }
}

TEST(Crepant, LInvertible) {
  for (int n = 2; n <= 8; ++n) EXPECT_FALSE(determinant(l_matrix(n)).is_zero()) << n;
}

TEST(Crepant, PairingPreserved) {
  for (int n = 2; n <= 8; ++n) {
    auto r = pairing_preservation(n);
    EXPECT_TRUE(r.ok) << n;
    EXPECT_EQ(r.gram[0][0], RatFunc(1) / (RatFunc(n) * RatFunc::lambda(1) * RatFunc::lambda(2)));
    if (n > 2) {
      EXPECT_EQ(r.gram[1][2], RatFunc(1));
    }
    EXPECT_EQ(r.gram[1][1], RatFunc(-2));
  }
}

TEST(Crepant, AffineChangeAtOrigin) {
  for (int n = 2; n <= 5; ++n) {
    auto t = affine_change(n, std::vector<cplx>(n, 0));
    EXPECT_EQ(t[0], cplx(0));
    for (int i = 1; i < n; ++i) EXPECT_LT(std::abs(t[i] - cplx(0, -2 * std::numbers::pi / n)), 1e-15);
  }
}

TEST(Crepant, PolyRoots) {
  std::vector<cplx> r{cplx(1, 2), cplx(-0.5, 0), cplx(0, -1)};
  auto c = poly_from_roots(r);
  auto got = poly_roots(c);
  for (auto& a : r) {
    double best = 1;
    for (auto& b : got) best = std::min(best, std::abs(a - b));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Crepant, RootIdentityAtOrigin) {
  for (int n = 2; n <= 5; ++n) {
    auto f = mirror_map_c2zn(n, 6);
    EXPECT_LT(root_identity_residual(n, f, std::vector<cplx>(n, 0)), 1e-14);
  }
}

TEST(Crepant, RootIdentityA1) {
  std::vector<cplx> x{0, 0.1};
  EXPECT_LT(root_identity_residual(2, mirror_map_c2zn(2, 12), x), 1e-10);
}

TEST(Crepant, RootIdentityImprovesWithDegree) {
  for (int n = 2; n <= 4; ++n) {
    auto pts = sample_points(n, 5, 0.3);
    double prev = INFINITY;
    for (int D : {6, 10, 14}) {
      double r = root_identity_check(n, pts, D).maxResidual;
      EXPECT_LE(r, prev) << n << " " << D;
      prev = r;
    }
  }
}

TEST(Crepant, RootIdentitySamples) {
  for (int n = 2; n <= 4; ++n) {
    auto r = root_identity_check(n, sample_points(n, 10, 0.1), 14);
    EXPECT_TRUE(r.pass) << n << " " << r.maxResidual;
  }
}

TEST(Crepant, CoordinateRoundTrip) {
  for (int n = 2; n <= 6; ++n)
    for (auto& x : sample_points(n, 4, 0.7, 11)) {
      auto back = y_to_x(x_to_y(x), x);
      for (int i = 1; i < n; ++i) EXPECT_LT(std::abs(back[i] - x[i]), 1e-12);
    }
}

TEST(Crepant, ContinuationSmallN) {
  for (int n = 2; n <= 5; ++n) {
    auto r = continuation_check(n, sample_points(n, 10, 0.1), 14);
    EXPECT_TRUE(r.pass) << n << " " << r.maxResidual;
    EXPECT_LT(r.extra[0], 1e-10);
  }
}

TEST(Crepant, ContinuationBranchShiftFromSix) {
  auto p = continue_two_stage(6);
  cplx g1 = p.logKappa[0] - p.logKappa[1];
  EXPECT_LT(std::abs(g1 - cplx(0, -2 * std::numbers::pi / 6 - 2 * std::numbers::pi)), 1e-10);
  for (int i = 2; i < 6; ++i)
    EXPECT_LT(std::abs(p.logKappa[i - 1] - p.logKappa[i] - cplx(0, -2 * std::numbers::pi / 6)), 1e-10);
  EXPECT_FALSE(continuation_check(6, sample_points(6, 2, 0.1), 8).pass);
}

TEST(Crepant, ReportJson) {
  auto r = root_identity_check(2, sample_points(2, 3, 0.1), 10);
  auto j = report_json(r);
  EXPECT_EQ(j["check"], "roots");
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["D"], 10);
  EXPECT_EQ(j["samples"], 3);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j.contains("maxResidual"));
}
