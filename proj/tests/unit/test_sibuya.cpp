#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sibuya.hpp"

using namespace stokeskit;

namespace {

double bessel_form(double y) { return std::sqrt(y) * oracle::bessel_k(0.2, 0.4 * std::pow(y, 2.5)); }

}  // namespace

TEST(Sibuya, ZeroZetaIsABesselFunction) {
  const CanonicalSolution sol(0.0, 0);
  const double c = sol.evaluate(1.0, {}).w.real() / bessel_form(1.0);
  for (double y = 1.0; y <= 5.0; y += 0.25) {
    const cplx w = sol.evaluate(y, {}).w;
    EXPECT_LT(std::abs(w - c * bessel_form(y)) / std::abs(w), 1e-9) << y;
  }
  // K_nu(z) ~ sqrt(pi / 2z) e^{-z} fixes c = (5 pi / 4)^{-1/2}.
  EXPECT_NEAR(c, 1.0 / std::sqrt(1.25 * kPi), 1e-9);
}

TEST(Sibuya, MatchesTruncatedAsymptoticsAtTen) {
  const std::vector<cplx> zetas = {{0.0, 0.0}, {2.0, 0.0}, {-2.0, 0.0}, {0.0, 2.0}, {1.4, -1.4}};
  for (cplx z : zetas) {
    const cplx w = CanonicalSolution(z, 0).evaluate(10.0, {}).w;
    const cplx normalized = w * std::pow(10.0, 0.75) * std::exp(exponent_E(10.0, z));
    const AsymptoticCoeffs co = asymptotic_coeffs(z, 30);
    cplx sum = 1.0;
    for (int n = 1; n <= 30; ++n) sum += co.B[n - 1] * std::pow(10.0, -0.5 * n);
    EXPECT_LT(std::abs(normalized - sum), 1e-10) << z;
    EXPECT_LT(std::abs(normalized - 1.0), 0.05) << z;
  }
}

TEST(Sibuya, FirstCoefficientsAtZeroZeta) {
  // With zeta = 0 only powers y^{-5m/2} survive, and B_5 is the first Hankel
  // correction (4 nu^2 - 1) / (8 * 2/5) of K_{1/5}.
  const AsymptoticCoeffs co = asymptotic_coeffs(0.0, 10);
  for (int n = 1; n <= 4; ++n) EXPECT_LT(std::abs(co.B[n - 1]), 1e-15) << n;
  EXPECT_NEAR(co.B[4].real(), (4.0 * 0.04 - 1.0) / 3.2, 1e-15);
}

TEST(Sibuya, RotatedSolutionsSolveTheSameEquation) {
  const cplx zeta{0.7, -0.4};
  const cplx y{0.6, 0.3};
  const double h = 1e-3;
  for (int k = 0; k < 5; ++k) {
    const CanonicalSolution sol(zeta, k);
    const cplx wm = sol.evaluate(y - h, {}).w;
    const cplx w0 = sol.evaluate(y, {}).w;
    const cplx wp = sol.evaluate(y + h, {}).w;
    const cplx second = (wp - 2.0 * w0 + wm) / (h * h);
    EXPECT_LT(std::abs(second - (y * y * y + zeta * y) * w0), 1e-5 * std::max(1.0, std::abs(w0))) << k;
  }
}

TEST(Sibuya, DerivativeMatchesDifferenceQuotient) {
  const CanonicalSolution sol({-1.0, 0.5}, 2);
  const cplx y{0.4, -0.2};
  const double h = 1e-4;
  const cplx fd = (sol.evaluate(y + h, {}).w - sol.evaluate(y - h, {}).w) / (2.0 * h);
  EXPECT_LT(std::abs(fd - sol.evaluate(y, {}).wp), 1e-7 * std::abs(fd));
}

TEST(Sibuya, SolutionDecaysInsideItsSector) {
  for (int k = 0; k < 5; ++k) {
    const CanonicalSolution sol({0.3, 0.2}, k);
    const cplx dir = omega_pow(k);
    EXPECT_LT(std::abs(sol.evaluate(6.0 * dir, {}).w), 1e-10) << k;
  }
}

TEST(Sibuya, TraceStartsAtTheSeed) {
  const CanonicalSolution sol(0.0, 0);
  AsymptoticSeed seed;
  const SolutionTrace tr = sol.trace(1.0, {}, &seed);
  EXPECT_GE(seed.n_terms, 8);
  EXPECT_NEAR(seed.rho_far, 12.0, 1e-12);
  EXPECT_LT(std::abs(tr.points.front().y - 12.0), 1e-12);
  EXPECT_LT(std::abs(tr.points.back().y - 1.0), 1e-15);
}

TEST(Sibuya, TurningPointsAreZerosOfTheCubic) {
  const cplx zeta{-2.0, 1.0};
  for (cplx t : turning_points(zeta)) EXPECT_LT(std::abs(t * t * t + zeta * t), 1e-14);
}

TEST(Sibuya, ExponentRejectsTheCutWhenAsked) {
  EXPECT_THROW(exponent_E(-2.0, 0.0, true), Error);
  EXPECT_NO_THROW(exponent_E({-2.0, 0.1}, 0.0, true));
}

TEST(Sibuya, SectorIndexIsPeriodic) {
  const cplx zeta{0.4, 0.1};
  const cplx y{0.5, 0.5};
  EXPECT_EQ(CanonicalSolution(zeta, 6).k(), 1);
  EXPECT_EQ(CanonicalSolution(zeta, -1).k(), 4);
  EXPECT_LT(std::abs(CanonicalSolution(zeta, 6).evaluate(y, {}).w - CanonicalSolution(zeta, 1).evaluate(y, {}).w), 1e-14);
}
