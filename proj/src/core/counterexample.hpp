#pragma once

#include <array>
#include <vector>

#include "sibuya.hpp"

namespace stokeskit {

// b0 = sqrt(2) / (3 sqrt(3)), the value for which mu = 0.
inline const double kCriticalB0 = std::sqrt(2.0) / (3.0 * std::sqrt(3.0));

// P = D_0^3 - (D_1^2 + x_1^2 D_n^2) D_0 - b0 x_1^3 D_n^3
struct ModelOperator {
  double b0 = kCriticalB0;

  // 27 b0^2 / 4 < 1
  bool hyperbolic() const { return b0 != 0.0 && 27.0 * b0 * b0 / 4.0 < 1.0; }
  void validate() const;
};

struct CounterexampleParams {
  double b0 = kCriticalB0;
  cplx zeta0;
  double R0 = 0.0;
  double theta0 = 0.0;
  double lambda = 1.0;
  cplx A;   // lambda^{1/2} b0^{1/5} R0^{-1/5} e^{-i theta0 / 5}
  cplx B;   // R0^{4/5} b0^{-4/5} e^{4 i theta0 / 5} / 3
  cplx mu;  // lambda R0^2 e^{2 i theta0} A^{-2} (2 / (27 b0^2) - 1)

  cplx alpha() const { return A / std::sqrt(lambda); }
  // Eigenvalue of D_0 on U.
  cplx d0_symbol() const { return std::sqrt(lambda) * std::polar(R0, theta0); }
};

struct DerivedParameters {
  double R0;
  double theta0;
};

// theta0 = 5 (arg zeta0 - pi) / 8, R0 = (3 |zeta0|)^{5/8} b0.
DerivedParameters derive_parameters(double b0, cplx zeta0);
// zeta(R, theta) = -b0^{-8/5} e^{8 i theta / 5} R^{8/5} / 3
cplx zeta_of(double b0, double R, double theta);
CounterexampleParams make_params(double b0, cplx zeta0, double lambda);

// y = A x1 + B
cplx argument_map(const CounterexampleParams& p, double x1);

struct SolutionOptions {
  IntegratorConfig integrator;
  SeedOptions seed;
  double margin = 0.02;       // required distance of the evaluation argument from the S_0 edge
  double margin_radius = 3.0; // the margin is only meaningful where |y| is large
  bool strict_margin = false; // throw instead of recording
};

struct SampledSolution {
  std::vector<double> x1;
  std::vector<cplx> y;
  std::vector<cplx> w;    // u(x1) = Y_0(A x1 + B; zeta0)
  std::vector<cplx> dw;   // d/dx1 u = A Y_0'(A x1 + B)
  std::vector<cplx> wpp;  // Y_0''(y) from the equation
  std::vector<double> margin;  // distance of the evaluation argument from |arg| = pi/5, NaN where |y| is small
  double min_margin = 0.0;
  double max_abs_w = 0.0;
};

// Y_0(y; zeta0) at y = A x1 + B. For x1 < 0 the value is routed through
// -omega Y_0(omega^{-2} y; omega^{-4} zeta0), which holds because C_0(zeta0) = 0.
ODEState counterexample_w(const CounterexampleParams& p, double x1, const SolutionOptions& opts = {},
                          double* margin = nullptr);

SampledSolution build_solution(const CounterexampleParams& p, const std::vector<double>& grid_x1,
                               const SolutionOptions& opts = {});

// Uniform grid with |A| h <= dy_max, clipped to |y - B| <= y_range and |x1| <= x1_max.
std::vector<double> default_grid(const CounterexampleParams& p, double dy_max = 0.0025, double y_range = 25.0,
                                 double x1_max = 2.0);

struct ResidualReport {
  double scale = 0.0;        // lambda^3 max |w|
  double ode = 0.0;          // relative to scale
  double finite_difference = 0.0;
  double grid_dy = 0.0;      // |A| h
};

ResidualReport residual_check(const CounterexampleParams& p, const SampledSolution& s);

struct GrowthProfile {
  std::vector<double> x0;
  std::vector<double> log_ratio;  // log|U(x0, 0)| - log|U(0, 0)|
  bool used_derivative_trace = false;
};

// The reference switches to the D_1 trace when |u(0)| < k_tol max|w|
// (KVanishes is thrown only if both traces vanish).
GrowthProfile growth_profile(const CounterexampleParams& p, const std::vector<double>& x0_list,
                             const SolutionOptions& opts = {}, double max_abs_w = 0.0, double k_tol = 1e-8);

// Least-squares slope of log_ratio against |x0| lambda^{1/2} through the origin.
double growth_slope(const std::vector<std::pair<double, GrowthProfile>>& by_lambda);

struct MomentTable {
  std::array<cplx, 3> moment{};      // int w(alpha x + beta) x^k dx
  std::array<double, 3> scale{};     // int |w(alpha x + beta)| |x|^k dx
  double x_min = 0.0;
  double x_max = 0.0;
  double tail = 0.0;
  int points = 0;

  // max_k |moment_k| / scale_k
  double nondegeneracy() const;
};

MomentTable moments(const CounterexampleParams& p, const SolutionOptions& opts = {}, double tail_tol = 1e-10,
                    double dx_max = 0.02);

struct DecayCheck {
  double u0 = 0.0;
  double max_weighted_pos = 0.0;  // max over s in [s_lo, s_hi] of |u| (1 + s)^power, x1 > 0
  double max_weighted_neg = 0.0;  // same on x1 < 0
  bool pass() const { return max_weighted_pos < u0 && max_weighted_neg < u0; }
};

// s = |x1| lambda^{1/2}; u depends on x1 only through s, so one sweep serves every lambda.
DecayCheck schwartz_decay(const CounterexampleParams& p, double s_lo = 20.0, double s_hi = 40.0, int power = 10,
                          int samples = 401, const SolutionOptions& opts = {});

struct WitnessRow {
  double lambda;
  double log_growth;   // lambda^{1/2} R0 sin(theta0), x0 = -1
  double log_gevrey;   // c lambda^{1/s}
  double log_ratio;    // log_growth - log_gevrey
};

std::vector<WitnessRow> witness_table(const CounterexampleParams& p, double s, double c,
                                      const std::vector<double>& lambdas);

}  // namespace stokeskit
