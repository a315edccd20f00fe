#include <gtest/gtest.h>

#include "counterexample.hpp"

using namespace stokeskit;

namespace {

const cplx kZeta0{-2.50695687611079, -0.0178290083854867};

}  // namespace

TEST(Counterexample, CriticalCoefficient) {
  EXPECT_NEAR(27.0 * kCriticalB0 * kCriticalB0, 2.0, 1e-15);
  EXPECT_TRUE(ModelOperator{kCriticalB0}.hyperbolic());
  EXPECT_FALSE(ModelOperator{0.5}.hyperbolic());
}

TEST(Counterexample, DerivedParameters) {
  const DerivedParameters d = derive_parameters(kCriticalB0, kZeta0);
  const double arg = std::atan2(kZeta0.imag(), kZeta0.real()) + 2.0 * kPi;
  EXPECT_NEAR(d.theta0, 5.0 * (arg - kPi) / 8.0, 1e-15);
  EXPECT_NEAR(d.R0, std::pow(3.0 * std::abs(kZeta0), 0.625) * kCriticalB0, 1e-15);
  EXPECT_GT(d.theta0, 0.0);
  EXPECT_LE(d.theta0, kPi / 6.0);
  EXPECT_NEAR(d.R0 * std::sin(d.theta0), 0.00426932, 1e-8);
}

TEST(Counterexample, RoundTrip) {
  const DerivedParameters d = derive_parameters(kCriticalB0, kZeta0);
  EXPECT_LT(std::abs(zeta_of(kCriticalB0, d.R0, d.theta0) - kZeta0), 1e-12 * std::abs(kZeta0));
}

TEST(Counterexample, OutsideTheSectorIsRejected) {
  try {
    derive_parameters(kCriticalB0, std::conj(kZeta0));
    FAIL() << "expected SectorViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSectorViolation);
  }
}

TEST(Counterexample, ShiftVanishesForTheChosenScaling) {
  const CounterexampleParams p = make_params(kCriticalB0, kZeta0, 100.0);
  EXPECT_LT(std::abs(p.mu), 1e-12);
  EXPECT_LT(std::abs(argument_map(p, 0.3) - (p.A * 0.3 + p.B)), 1e-15);
}

TEST(Counterexample, PlaneWaveSolvesTheOperatorEquation) {
  // P U = d^3 u + d u'' - lambda^2 d x^2 u - b0 lambda^3 x^3 u with d = lambda^{1/2} R0 e^{i theta0},
  // rebuilt from the canonical solution and a difference quotient.
  const double lam = 100.0;
  const CounterexampleParams p = make_params(kCriticalB0, kZeta0, lam);
  const cplx d = std::sqrt(lam) * std::polar(p.R0, p.theta0);
  const CanonicalSolution y0(kZeta0, 0);
  auto u = [&](double x) { return y0.evaluate(p.A * x + p.B, {}).w; };
  const double h = 1e-3;
  for (double x : {0.0, 0.04, 0.1, 0.2}) {
    const cplx ux = u(x);
    const cplx upp = (u(x + h) - 2.0 * ux + u(x - h)) / (h * h);
    const cplx pu = d * d * d * ux + d * upp - lam * lam * d * x * x * ux - kCriticalB0 * lam * lam * lam * x * x * x * ux;
    const double scale = lam * lam * lam * std::abs(ux);
    EXPECT_LT(std::abs(pu) / scale, 1e-5) << x;
  }
}

TEST(Counterexample, RerouteAgreesWithDirectEvaluation) {
  const CounterexampleParams p = make_params(kCriticalB0, kZeta0, 100.0);
  const CanonicalSolution y0(kZeta0, 0);
  for (double x : {-0.02, -0.06, -0.1}) {
    const cplx direct = y0.evaluate(argument_map(p, x), {}).w;
    const cplx routed = counterexample_w(p, x).w;
    EXPECT_LT(std::abs(routed - direct), 1e-8 * std::max(1.0, std::abs(direct))) << x;
  }
}

TEST(Counterexample, ResidualsOnTheDefaultGrid) {
  const CounterexampleParams p = make_params(kCriticalB0, kZeta0, 1000.0);
  const SampledSolution s = build_solution(p, default_grid(p));
  const ResidualReport r = residual_check(p, s);
  EXPECT_LT(r.ode, 1e-8);
  EXPECT_LT(r.finite_difference, 1e-4);
  EXPECT_LE(r.grid_dy, 0.02);
}

TEST(Counterexample, GrowthSlopeIsR0SinTheta0) {
  std::vector<std::pair<double, GrowthProfile>> profiles;
  for (double lam : {100.0, 10000.0}) {
    const CounterexampleParams p = make_params(kCriticalB0, kZeta0, lam);
    profiles.emplace_back(lam, growth_profile(p, {-1.0, -0.5}));
  }
  const DerivedParameters d = derive_parameters(kCriticalB0, kZeta0);
  EXPECT_NEAR(growth_slope(profiles), d.R0 * std::sin(d.theta0), 1e-9);
}

TEST(Counterexample, MomentsAreNondegenerate) {
  const MomentTable m = moments(make_params(kCriticalB0, kZeta0, 100.0));
  EXPECT_GT(m.nondegeneracy(), 1e-8);
  EXPECT_LT(m.tail, 1e-9);
  for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(m.moment[k]), m.scale[k] * (1.0 + 1e-12));
}

TEST(Counterexample, UniformInLambda) {
  double lo = 1e300, hi = 0.0;
  for (double lam : {100.0, 1000.0, 10000.0}) {
    const CounterexampleParams p = make_params(kCriticalB0, kZeta0, lam);
    const double m = build_solution(p, default_grid(p)).max_abs_w;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  EXPECT_LT(hi / lo, 2.0);
}

TEST(Counterexample, DecaysOnThePositiveSide) {
  const DecayCheck dc = schwartz_decay(make_params(kCriticalB0, kZeta0, 100.0));
  EXPECT_LT(dc.max_weighted_pos, dc.u0);
}

TEST(Counterexample, WitnessOutgrowsGevreyBound) {
  const CounterexampleParams p = make_params(kCriticalB0, kZeta0, 100.0);
  const auto rows = witness_table(p, 2.5, 1.0, {1e2, 1e32});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(rows[0].log_ratio, 0.0);
  EXPECT_GT(rows[1].log_ratio, 0.0);
}
