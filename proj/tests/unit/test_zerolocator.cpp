#include <gtest/gtest.h>

#include "zerolocator.hpp"

using namespace stokeskit;

namespace {

// Frozen from an independent arbitrary-precision evaluation of C_0.
const cplx kZeta0{-2.50695687611079, -0.0178290083854867};

}  // namespace

TEST(ZeroLocator, ArgInWindow) {
  EXPECT_NEAR(arg_in({-1.0, -0.01}, kPi), kPi + std::atan2(0.01, 1.0), 1e-15);
  EXPECT_NEAR(arg_in({1.0, -1.0}, 0.0), 1.75 * kPi, 1e-15);
}

TEST(ZeroLocator, CountsPolynomialZeros) {
  const cplx a = std::polar(2.0, 3.5), b = std::polar(4.0, 3.3), c = std::polar(3.0, 1.0);
  const AnalyticFn f = [&](cplx z) { return (z - a) * (z - b) * (z - c); };
  SectorContour s;
  s.arg_min = kPi;
  s.arg_max = 19.0 * kPi / 15.0;
  EXPECT_EQ(winding_number(f, s).winding, 2);
  s.arg_min = 0.0;
  s.arg_max = 2.0;
  EXPECT_EQ(winding_number(f, s).winding, 1);
  s.arg_min = 1.5;
  s.arg_max = 3.0;
  EXPECT_EQ(winding_number(f, s).winding, 0);
}

TEST(ZeroLocator, ZeroOnContourIsReported) {
  const AnalyticFn f = [](cplx z) { return z - std::polar(2.0, 3.5); };
  SectorContour s;
  s.r_max = 2.0;
  s.arg_min = 3.0;
  s.arg_max = 4.0;
  try {
    winding_number(f, s);
    FAIL() << "expected ZeroOnContour";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroOnContour);
  }
}

TEST(ZeroLocator, FindsPolynomialZero) {
  const cplx a = std::polar(2.3, 3.3);
  const AnalyticFn f = [&](cplx z) { return (z - a) * (z - cplx(0.0, 5.0)); };
  const ZeroCertificate cert = find_zero(f, SectorContour{});
  EXPECT_LT(std::abs(cert.zeta0 - a), 1e-12);
  EXPECT_EQ(cert.winding, 1);
}

TEST(ZeroLocator, NoZeroIsReported) {
  const AnalyticFn f = [](cplx z) { return z - 100.0; };
  SectorContour s;
  s.arg_min = 1.0;
  s.arg_max = 2.0;
  try {
    find_zero(f, s);
    FAIL() << "expected NoZeroEnclosed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoZeroEnclosed);
  }
}

TEST(ZeroLocator, RejectsBadContour) {
  SectorContour s;
  s.r_min = 3.0;
  s.r_max = 2.0;
  EXPECT_THROW(s.validate(), Error);
}

TEST(ZeroLocator, C0ZeroInTheSector) {
  const ZeroCertificate cert = find_zero(SectorContour{});
  EXPECT_LT(std::abs(cert.zeta0 - kZeta0), 1e-9);
  EXPECT_LT(cert.residual, 1e-10);
  EXPECT_GE(cert.winding, 1);
  const double arg = arg_in(cert.zeta0, 0.0);
  EXPECT_GT(arg, kPi);
  EXPECT_LE(arg, 19.0 * kPi / 15.0);
}

TEST(ZeroLocator, ReflectedPointIsAlsoAZero) {
  EXPECT_LT(std::abs(stokes_C0(std::conj(kOmega * kZeta0))), 1e-7);
}

TEST(ZeroLocator, NoZeroAcrossThePositiveRealAxis) {
  const SectorContour s{0.5, 8.0, -0.3, 0.3, 64};
  EXPECT_EQ(winding_number(s).winding, 0);
}
