#include <gtest/gtest.h>

#include "complexpath.hpp"
#include "oracles.hpp"

using namespace stokeskit;

namespace {

ODEState run(const QParams& q, ODEState s, std::vector<cplx> path, const IntegratorConfig& cfg = {}) {
  return integrate(q, s, ComplexPath(std::move(path)), cfg).final_state().value();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(ComplexPath, MatchesPowerSeriesForPureCubic) {
  const QParams q{};
  const std::vector<cplx> ends = {{1.5, 0.0}, {1.2, 1.0}, {-1.0, 0.7}, {0.3, -1.4}};
  for (cplx end : ends) {
    const ODEState s = run(q, {0.0, 1.0, 0.0}, {0.0, end});
    const auto [w, wp] = oracle::power_series(end, 0.0, 0.0, 1.0, 0.0);
    EXPECT_LT(rel(s.w, w), 1e-10) << end;
    EXPECT_LT(rel(s.wp, wp), 1e-10) << end;
  }
}

TEST(ComplexPath, MatchesPowerSeriesWithZetaAndMu) {
  const QParams q{{-1.3, 0.4}, {0.2, -0.5}};
  const cplx end{1.1, 0.6};
  const ODEState s = run(q, {0.0, {0.3, 0.1}, {-0.7, 0.2}}, {0.0, {0.5, 0.5}, end});
  const auto [w, wp] = oracle::power_series(end, q.zeta, q.mu, {0.3, 0.1}, {-0.7, 0.2});
  EXPECT_LT(rel(s.w, w), 1e-10);
  EXPECT_LT(rel(s.wp, wp), 1e-10);
}

TEST(ComplexPath, ForwardThenBackwardReturnsStart) {
  const QParams q{{0.5, -0.2}, 0.0};
  const ComplexPath path({{0.0, 0.0}, {2.0, 0.3}, {2.5, 1.5}});
  const ODEState start{0.0, {1.0, 0.5}, {-0.3, 0.8}};
  const ODEState end = integrate(q, start, path, {}).final_state().value();
  const ODEState back = integrate(q, end, path.reversed(), {}).final_state().value();
  EXPECT_LT(std::abs(back.w - start.w), 1e-9);
  EXPECT_LT(std::abs(back.wp - start.wp), 1e-9);
}

TEST(ComplexPath, IsLinearInInitialData) {
  const QParams q{{1.0, 1.0}, {0.0, 0.3}};
  const std::vector<cplx> path = {0.0, {1.5, -0.5}};
  const cplx a{0.7, -0.2}, b{-1.1, 0.4};
  const ODEState s1 = run(q, {0.0, 1.0, 0.0}, path);
  const ODEState s2 = run(q, {0.0, 0.0, 1.0}, path);
  const ODEState mix = run(q, {0.0, a, b}, path);
  EXPECT_LT(std::abs(mix.w - (a * s1.w + b * s2.w)), 1e-10 * std::abs(mix.w));
  EXPECT_LT(std::abs(mix.wp - (a * s1.wp + b * s2.wp)), 1e-10 * std::abs(mix.wp));
}

TEST(ComplexPath, WronskianIsConstant) {
  const QParams q{{-2.0, 0.1}, 0.0};
  const std::vector<cplx> path = {0.0, {1.0, 1.0}, {-0.5, 2.0}};
  const ODEState a0{0.0, 1.0, 0.0};
  const ODEState b0{0.0, 0.0, 1.0};
  const cplx w0 = wronskian(a0, b0);
  const cplx w1 = wronskian(run(q, a0, path), run(q, b0, path));
  EXPECT_LT(std::abs(w1 - w0), 1e-9);
}

TEST(ComplexPath, ScaledStateRoundTrip) {
  const ODEState s{{1.0, 2.0}, {3e200, -1e199}, {-2e201, 4e200}};
  ScaledState sc = ScaledState::from(s);
  sc.normalize();
  const ODEState back = sc.value();
  EXPECT_LT(std::abs(back.w - s.w) / std::abs(s.w), 1e-15);
  EXPECT_LT(std::abs(back.wp - s.wp) / std::abs(s.wp), 1e-15);
  EXPECT_NEAR(sc.log_abs_w(), std::log(std::abs(s.w)), 1e-12);
}

TEST(ComplexPath, TraceRecordsPathAndCsv) {
  const SolutionTrace tr = integrate(QParams{}, ODEState{0.0, 1.0, 0.0}, ComplexPath({0.0, 2.0}), {});
  ASSERT_GE(tr.points.size(), 2u);
  EXPECT_EQ(tr.points.front().y, cplx(0.0));
  EXPECT_EQ(tr.points.back().y, cplx(2.0));
  EXPECT_EQ(tr.steps + 1, static_cast<int>(tr.points.size()));
  const std::string csv = tr.to_csv();
  EXPECT_EQ(csv.rfind("s_arclength,y_re,y_im,w_re,w_im,wp_re,wp_im,local_error\n", 0), 0u);
}

TEST(ComplexPath, HalvedConfigTightensTolerances) {
  const IntegratorConfig cfg;
  const IntegratorConfig h = cfg.halved();
  EXPECT_DOUBLE_EQ(h.rel_tol, cfg.rel_tol / 2);
  EXPECT_DOUBLE_EQ(h.abs_tol, cfg.abs_tol / 2);
}

TEST(ComplexPath, RejectsBadConfig) {
  IntegratorConfig cfg;
  cfg.rel_tol = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
  try {
    cfg.validate();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolation);
  }
}

TEST(ComplexPath, RejectsDegeneratePath) {
  EXPECT_THROW(ComplexPath(std::vector<cplx>{1.0}), Error);
}
