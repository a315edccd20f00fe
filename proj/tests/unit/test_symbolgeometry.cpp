#include <gtest/gtest.h>

#include <random>

#include "counterexample.hpp"
#include "oracles.hpp"
#include "symbolgeometry.hpp"

using namespace stokeskit;

TEST(SymbolGeometry, RootsMatchBisection) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = d(gen), xi = d(gen), b = 0.9 * d(gen);
    const CubicRoots r = cubic_roots(x, xi, b);
    const double rr = x * x + xi * xi;
    auto ref = oracle::cubic_bisection(0.0, -3.0 * rr, -2.0 * b * x * x * x);
    ASSERT_EQ(ref.size(), 3u);
    std::sort(ref.rbegin(), ref.rend());
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.roots[k], ref[k], 1e-12) << x << " " << xi << " " << b;
  }
}

TEST(SymbolGeometry, VietaAndSymbol) {
  const CubicRoots r = cubic_roots(0.3, -0.7, 0.4);
  for (double v : vieta_residuals(r, 0.3, -0.7, 0.4)) EXPECT_LT(v, 1e-12);
  for (double t : r.roots) EXPECT_LT(std::abs(cubic_symbol(t, 0.3, -0.7, 0.4)), 1e-14);
}

TEST(SymbolGeometry, VanishingBranchOnTheXiAxis) {
  const CubicRoots r = cubic_roots(0.0, 1.0, 0.2);
  EXPECT_NEAR(r.vanishing_root(), 0.0, 1e-15);
  EXPECT_NEAR(r.roots[0], std::sqrt(3.0), 1e-15);
}

TEST(SymbolGeometry, OriginIsSingular) {
  try {
    cubic_roots(0.0, 0.0, 0.3);
    FAIL() << "expected OriginSingular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOriginSingular);
  }
}

TEST(SymbolGeometry, DiscriminantIsNonnegativeForSmallB) {
  EXPECT_GE(min_normalized_discriminant(0.1, 10000, 1), 0.0);
  EXPECT_GE(min_normalized_discriminant(0.9, 10000, 1), 0.0);
  EXPECT_NEAR(discriminant(1.0, 0.0, 1.0), 0.0, 1e-13);
}

TEST(SymbolGeometry, ArcsinSeries) {
  for (double u : {-0.8, -0.3, 0.0, 0.25, 0.5, 0.9}) {
    const int n = g_series_terms(u, 1e-14);
    EXPECT_NEAR(g_series(u, n), std::asin(u), 1e-13) << u;
  }
  EXPECT_GT(g_series_terms(0.99, 1e-8), g_series_terms(0.5, 1e-8));
  EXPECT_THROW(g_series(1.0, 10), Error);
}

TEST(SymbolGeometry, DirectionalLimitIsNotLinear) {
  const std::vector<double> eps = {1e-2, 1e-4, 1e-6};
  std::vector<double> phi;
  for (int j = 0; j < 16; ++j) phi.push_back(2.0 * kPi * j / 16);
  for (double b : {0.05, 0.1}) {
    const NonsmoothnessWitness w = nonsmoothness_witness(b, eps, phi);
    EXPECT_LT(w.max_first_order_gap, b * b * b + 1e-6);
    EXPECT_TRUE(w.certified());
    for (const auto& d : w.table) EXPECT_NEAR(d.first_order, -(2.0 / 3.0) * b * std::pow(std::cos(d.phi), 3), 1e-15);
  }
}

TEST(SymbolGeometry, SigmaIsAntisymmetric) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> d;
  const int n = 3;
  for (int i = 0; i < 20; ++i) {
    TangentVector X(8), Y(8);
    for (auto& v : X) v = d(gen);
    for (auto& v : Y) v = d(gen);
    EXPECT_NEAR(sigma(X, Y, n), -sigma(Y, X, n), 1e-14);
    EXPECT_EQ(sigma(X, X, n), 0.0);
  }
}

TEST(SymbolGeometry, SigmaAgainstTimeDirection) {
  TangentVector dv(8, 0.0);
  dv[0] = -1.0;
  TangentVector Y(8, 0.0);
  Y[4] = 0.7;
  EXPECT_DOUBLE_EQ(sigma(dv, Y, 3), -0.7);
}

TEST(SymbolGeometry, GammaMembershipAgrees) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> d;
  int inside = 0;
  for (int i = 0; i < 500; ++i) {
    TangentVector v(8);
    for (auto& c : v) c = d(gen);
    const bool exact = in_gamma_exact(v, kCriticalB0, 3);
    double margin = 0.0;
    const bool sampled = in_gamma_sampled(v, kCriticalB0, 3, 64, &margin);
    if (std::abs(margin) > 1e-6) EXPECT_EQ(exact, sampled);
    inside += exact;
  }
  EXPECT_GT(inside, 0);
  EXPECT_LT(inside, 500);
}

TEST(SymbolGeometry, TimeDirectionIsInGamma) {
  TangentVector N(8, 0.0);
  N[4] = 1.0;
  EXPECT_TRUE(in_gamma_exact(N, kCriticalB0, 3));
  EXPECT_GT(localization(N, kCriticalB0, 3), 0.0);
}

TEST(SymbolGeometry, ConeCertificates) {
  ConeOptions o;
  o.n_samples = 2000;
  const ConeReport r = cone_analysis(kCriticalB0, o);
  EXPECT_EQ(r.gamma_samples, 2000);
  EXPECT_TRUE(r.delta_v_certified());
  EXPECT_LE(r.off_tangent_max_sigma, 0.0);
  EXPECT_TRUE(r.hamilton_not_contained());
  EXPECT_EQ(r.oracle_disagreements, 0);
  const ConeReport again = cone_analysis(kCriticalB0, o);
  EXPECT_EQ(again.attempts, r.attempts);
  EXPECT_EQ(again.min_margin, r.min_margin);
}
