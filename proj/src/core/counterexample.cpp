#include "counterexample.hpp"

#include <algorithm>
#include <limits>

#include "parallel.hpp"

namespace stokeskit {

namespace {

constexpr double kArgMax = 19.0 * kPi / 15.0;

double arg_above_pi(cplx z) {
  double a = std::arg(z);
  if (a <= 0.0) a += 2.0 * kPi;
  return a;
}

double simpson_weight(std::size_t i, std::size_t n) {
  if (i == 0 || i == n) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace

void ModelOperator::validate() const {
  if (!hyperbolic())
    throw Error(ErrorCode::kPreconditionViolation, "the model operator needs 0 < |b0| < 2 / (3 sqrt 3)");
}

DerivedParameters derive_parameters(double b0, cplx zeta0) {
  if (!(b0 > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "b0 must be positive");
  const double a = arg_above_pi(zeta0);
  if (!(a > kPi) || a > kArgMax + 1e-15 || std::abs(zeta0) == 0.0)
    throw Error(ErrorCode::kSectorViolation, "arg zeta0 must lie in (pi, 19 pi / 15]");
  return {std::pow(3.0 * std::abs(zeta0), 5.0 / 8.0) * b0, 5.0 * (a - kPi) / 8.0};
}

cplx zeta_of(double b0, double R, double theta) {
  return -std::pow(b0, -8.0 / 5.0) * std::pow(R, 8.0 / 5.0) * std::polar(1.0, 8.0 * theta / 5.0) / 3.0;
}

CounterexampleParams make_params(double b0, cplx zeta0, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "lambda must be positive");
  ModelOperator{b0}.validate();
  const DerivedParameters d = derive_parameters(b0, zeta0);
  CounterexampleParams p;
  p.b0 = b0;
  p.zeta0 = zeta0;
  p.R0 = d.R0;
  p.theta0 = d.theta0;
  p.lambda = lambda;
  p.A = std::sqrt(lambda) * std::pow(b0, 0.2) * std::pow(d.R0, -0.2) * std::polar(1.0, -d.theta0 / 5.0);
  p.B = std::pow(d.R0, 0.8) * std::pow(b0, -0.8) * std::polar(1.0, 4.0 * d.theta0 / 5.0) / 3.0;
  p.mu = lambda * d.R0 * d.R0 * std::polar(1.0, 2.0 * d.theta0) / (p.A * p.A) * (2.0 / (27.0 * b0 * b0) - 1.0);
  return p;
}

cplx argument_map(const CounterexampleParams& p, double x1) { return p.A * x1 + p.B; }

ODEState counterexample_w(const CounterexampleParams& p, double x1, const SolutionOptions& opts, double* margin) {
  const cplx y = argument_map(p, x1);
  cplx t = y;
  ODEState out;
  if (x1 >= 0.0) {
    out = CanonicalSolution(p.zeta0, 0, opts.seed).evaluate(y, opts.integrator);
  } else {
    t = omega_pow(-2) * y;
    const ODEState v = CanonicalSolution(omega_pow(-4) * p.zeta0, 0, opts.seed).evaluate(t, opts.integrator);
    out = {y, -kOmega * v.w, -kOmega * omega_pow(-2) * v.wp};
  }
  double m = std::numeric_limits<double>::quiet_NaN();
  if (std::abs(t) >= opts.margin_radius) {
    m = kPi / 5.0 - std::abs(std::arg(t));
    if (opts.strict_margin && m < opts.margin)
      throw Error(ErrorCode::kEvaluationOutsideSubdominantMargin,
                  "evaluation argument is " + std::to_string(m) + " rad from the edge of S_0");
  }
  if (margin) *margin = m;
  return out;
}

SampledSolution build_solution(const CounterexampleParams& p, const std::vector<double>& grid_x1,
                               const SolutionOptions& opts) {
  SampledSolution s;
  const std::size_t n = grid_x1.size();
  s.x1 = grid_x1;
  s.y.resize(n);
  s.w.resize(n);
  s.dw.resize(n);
  s.wpp.resize(n);
  s.margin.resize(n);
  parallel_for(n, [&](std::size_t i) {
    double m = 0.0;
    const ODEState st = counterexample_w(p, grid_x1[i], opts, &m);
    s.y[i] = st.y;
    s.w[i] = st.w;
    s.dw[i] = p.A * st.wp;
    s.wpp[i] = (st.y * st.y * st.y + p.zeta0 * st.y) * st.w;
    s.margin[i] = m;
  });
  s.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    s.max_abs_w = std::max(s.max_abs_w, std::abs(s.w[i]));
    if (!std::isnan(s.margin[i])) s.min_margin = std::min(s.min_margin, s.margin[i]);
  }
  return s;
}

std::vector<double> default_grid(const CounterexampleParams& p, double dy_max, double y_range, double x1_max) {
  const double a = std::abs(p.A);
  const double X = std::min(x1_max, y_range / a);
  int n = static_cast<int>(std::ceil(2.0 * X * a / dy_max));
  if (n % 2) ++n;
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = -X + 2.0 * X * i / n;
  return g;
}

ResidualReport residual_check(const CounterexampleParams& p, const SampledSolution& s) {
  if (s.x1.size() < 3) throw Error(ErrorCode::kGridTooCoarse, "residual check needs at least three grid points");
  ResidualReport r;
  const double lam = p.lambda;
  const cplx e1 = std::polar(1.0, p.theta0);
  const cplx c_w = std::pow(lam, 1.5) * std::pow(p.R0, 3.0) * e1 * e1 * e1;
  const cplx c_x2 = std::pow(lam, 2.5) * p.R0 * e1;
  const double c_x3 = p.b0 * lam * lam * lam;
  const cplx c_pp = std::sqrt(lam) * p.R0 * e1;
  r.scale = lam * lam * lam * s.max_abs_w;
  const double h = s.x1[1] - s.x1[0];
  r.grid_dy = std::abs(p.A) * h;
  for (std::size_t i = 0; i < s.x1.size(); ++i) {
    const double x = s.x1[i];
    const cplx base = c_w * s.w[i] - c_x2 * x * x * s.w[i] - c_x3 * x * x * x * s.w[i];
    r.ode = std::max(r.ode, std::abs(base + c_pp * p.A * p.A * s.wpp[i]));
    if (i > 0 && i + 1 < s.x1.size()) {
      const cplx d2 = (s.w[i + 1] - 2.0 * s.w[i] + s.w[i - 1]) / (h * h);
      r.finite_difference = std::max(r.finite_difference, std::abs(base + c_pp * d2));
    }
  }
  r.ode /= r.scale;
  r.finite_difference /= r.scale;
  return r;
}

GrowthProfile growth_profile(const CounterexampleParams& p, const std::vector<double>& x0_list,
                             const SolutionOptions& opts, double max_abs_w, double k_tol) {
  const ODEState at0 = counterexample_w(p, 0.0, opts);
  GrowthProfile g;
  cplx ref = at0.w;
  const double scale = max_abs_w > 0.0 ? max_abs_w : std::abs(at0.w);
  if (std::abs(ref) < k_tol * scale) {
    ref = p.A * at0.wp;
    g.used_derivative_trace = true;
    if (std::abs(ref) == 0.0) throw Error(ErrorCode::kKVanishes, "u(0) and D_1 u(0) both vanish");
  }
  const cplx d0 = p.d0_symbol();
  const double log0 = std::log(std::abs(ref));
  for (double x0 : x0_list) {
    if (x0 > 0.0) throw Error(ErrorCode::kPreconditionViolation, "growth profile is taken on x0 <= 0");
    const cplx U = std::exp(cplx(0.0, 1.0) * x0 * d0) * ref;
    g.x0.push_back(x0);
    g.log_ratio.push_back(std::log(std::abs(U)) - log0);
  }
  return g;
}

double growth_slope(const std::vector<std::pair<double, GrowthProfile>>& by_lambda) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& [lam, g] : by_lambda)
    for (std::size_t i = 0; i < g.x0.size(); ++i) {
      const double t = std::abs(g.x0[i]) * std::sqrt(lam);
      num += t * g.log_ratio[i];
      den += t * t;
    }
  if (den == 0.0) throw Error(ErrorCode::kPreconditionViolation, "growth slope needs some x0 != 0");
  return num / den;
}

double MomentTable::nondegeneracy() const {
  double r = 0.0;
  for (int k = 0; k < 3; ++k)
    if (scale[k] > 0.0) r = std::max(r, std::abs(moment[k]) / scale[k]);
  return r;
}

MomentTable moments(const CounterexampleParams& p, const SolutionOptions& opts, double tail_tol, double dx_max) {
  // w(alpha x + beta) equals u(x / lambda^{1/2}).
  const double sl = std::sqrt(p.lambda);
  auto w_at = [&](double x) { return counterexample_w(p, x / sl, opts).w; };
  const double w0 = std::abs(w_at(0.0));
  auto tail_of = [&](double x) { return std::abs(w_at(x)) * std::max(1.0, x * x); };
  double xp = 4.0;
  double xm = -4.0;
  while (tail_of(xp) > tail_tol * w0 && xp < 400.0) xp *= 1.5;
  while (tail_of(xm) > tail_tol * w0 && xm > -400.0) xm *= 1.5;

  MomentTable m;
  m.x_min = xm;
  m.x_max = xp;
  m.tail = std::max(tail_of(xp), tail_of(xm)) / w0;
  const double h_max = dx_max / std::abs(p.alpha());
  std::size_t n = static_cast<std::size_t>(std::ceil((xp - xm) / h_max));
  if (n % 2) ++n;
  const double h = (xp - xm) / static_cast<double>(n);
  std::vector<cplx> vals(n + 1);
  parallel_for(n + 1, [&](std::size_t i) { vals[i] = w_at(xm + h * static_cast<double>(i)); });
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = xm + h * static_cast<double>(i);
    const double wt = simpson_weight(i, n) * h / 3.0;
    double xk = 1.0;
    for (int k = 0; k < 3; ++k) {
      m.moment[k] += wt * xk * vals[i];
      m.scale[k] += wt * std::abs(xk) * std::abs(vals[i]);
      xk *= x;
    }
  }
  m.points = static_cast<int>(n + 1);
  return m;
}

DecayCheck schwartz_decay(const CounterexampleParams& p, double s_lo, double s_hi, int power, int samples,
                          const SolutionOptions& opts) {
  DecayCheck d;
  const double sl = std::sqrt(p.lambda);
  d.u0 = std::abs(counterexample_w(p, 0.0, opts).w);
  std::vector<double> pos(static_cast<std::size_t>(samples));
  std::vector<double> neg(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / (samples - 1);
    const double weight = std::pow(1.0 + s, power);
    pos[i] = std::abs(counterexample_w(p, s / sl, opts).w) * weight;
    neg[i] = std::abs(counterexample_w(p, -s / sl, opts).w) * weight;
  });
  d.max_weighted_pos = *std::max_element(pos.begin(), pos.end());
  d.max_weighted_neg = *std::max_element(neg.begin(), neg.end());
  return d;
}

std::vector<WitnessRow> witness_table(const CounterexampleParams& p, double s, double c,
                                      const std::vector<double>& lambdas) {
  std::vector<WitnessRow> rows;
  for (double lam : lambdas) {
    WitnessRow r{lam, std::sqrt(lam) * p.R0 * std::sin(p.theta0), c * std::pow(lam, 1.0 / s), 0.0};
    r.log_ratio = r.log_growth - r.log_gevrey;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace stokeskit
