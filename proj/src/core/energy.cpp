#include "energy.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "parallel.hpp"

namespace stokeskit {

namespace {

const cplx kI(0.0, 1.0);

double simpson(std::size_t i, std::size_t n) {
  if (i == 0 || i == n) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

double bump(double t) { return std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0; }

// Fourth-order central stencils on a row padded with zeros.
struct Stencil {
  static cplx d1(const std::vector<cplx>& f, int j, double h) {
    auto g = [&](int k) { return (k < 0 || k >= static_cast<int>(f.size())) ? cplx(0.0) : f[k]; };
    return (g(j - 2) - 8.0 * g(j - 1) + 8.0 * g(j + 1) - g(j + 2)) / (12.0 * h);
  }
  static cplx d2(const std::vector<cplx>& f, int j, double h) {
    auto g = [&](int k) { return (k < 0 || k >= static_cast<int>(f.size())) ? cplx(0.0) : f[k]; };
    return (-g(j - 2) + 16.0 * g(j - 1) - 30.0 * g(j) + 16.0 * g(j + 1) - g(j + 2)) / (12.0 * h * h);
  }
  static cplx d2_low(const std::vector<cplx>& f, int j, double h) {
    auto g = [&](int k) { return (k < 0 || k >= static_cast<int>(f.size())) ? cplx(0.0) : f[k]; };
    return (g(j - 1) - 2.0 * g(j) + g(j + 1)) / (h * h);
  }
};

std::vector<cplx> row(const TestFunction& u, int i) {
  std::vector<cplx> r(static_cast<std::size_t>(u.n1) + 1);
  for (int j = 0; j <= u.n1; ++j) r[j] = u.at(i, j);
  return r;
}

// x0 derivatives on row i from rows i-3..i+3.
void x0_derivatives(const TestFunction& u, int i, std::vector<cplx>& d1, std::vector<cplx>& d2,
                    std::vector<cplx>& d3) {
  const double h = u.h0;
  const int n = u.n1 + 1;
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  d3.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const cplx m3 = u.at(i - 3, j), m2 = u.at(i - 2, j), m1 = u.at(i - 1, j), z = u.at(i, j);
    const cplx p1 = u.at(i + 1, j), p2 = u.at(i + 2, j), p3 = u.at(i + 3, j);
    d1[j] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    d2[j] = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    d3[j] = (m3 / 8.0 - m2 + 13.0 / 8.0 * m1 - 13.0 / 8.0 * p1 + p2 - p3 / 8.0) / (h * h * h);
  }
}

double weighted_integral(const std::vector<double>& q, double h0, double eta) {
  const std::size_t n = q.size() - 1;
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) s += simpson(i, n) * std::exp(2.0 * eta * h0 * static_cast<double>(i)) * q[i];
  return s * h0 / 3.0;
}

std::vector<double> sum_rows(std::initializer_list<const std::vector<double>*> parts, double scale = 1.0) {
  std::vector<double> out((*parts.begin())->size(), 0.0);
  for (const auto* p : parts)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * (*p)[i];
  return out;
}

void finish_sweep(EnergyReport& rep) {
  const std::size_t n = rep.tau.size();
  std::vector<bool> ok(n);
  for (std::size_t k = 0; k < n; ++k) ok[k] = rep.lhs[k] >= rep.rhs[k];
  if (std::none_of(ok.begin(), ok.end(), [](bool b) { return b; }))
    throw Error(ErrorCode::kInequalityFailsAtAllTau, "inequality fails at every sampled tau");
  rep.tau_star = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = n; k-- > 0;) {
    if (!ok[k]) break;
    rep.tau_star = rep.tau[k];
  }
  bool seen = false;
  rep.monotone = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (ok[k]) seen = true;
    else if (seen) rep.monotone = false;
  }
}

std::size_t star_index(const EnergyReport& rep) {
  for (std::size_t k = 0; k < rep.tau.size(); ++k)
    if (rep.tau[k] == rep.tau_star) return k;
  return rep.tau.size() - 1;
}

}  // namespace

TestFunction TestFunction::sample(const std::function<cplx(double, double)>& f, double a, double L, int n0, int n1) {
  if (!(a > 0.0) || !(L > 0.0) || n0 < 8 || n1 < 8 || n0 % 2 || n1 % 2)
    throw Error(ErrorCode::kPreconditionViolation, "grid needs a, L > 0 and even n0, n1 >= 8");
  TestFunction u;
  u.n0 = n0;
  u.n1 = n1;
  u.a = a;
  u.L = L;
  u.h0 = a / n0;
  u.h1 = 2.0 * L / n1;
  u.values.assign(static_cast<std::size_t>(n0 + 1 + 2 * kGhost) * (n1 + 1), 0.0);
  parallel_for(static_cast<std::size_t>(n0 + 1 + 2 * kGhost), [&](std::size_t r) {
    const int i = static_cast<int>(r) - kGhost;
    for (int j = 0; j <= n1; ++j) u.at(i, j) = f(u.x0(i), u.x1(j));
  });
  return u;
}

void TestFunction::validate(double tol) const {
  double peak = 0.0;
  for (const cplx v : values) peak = std::max(peak, std::abs(v));
  double edge = 0.0;
  for (int i = -kGhost; i <= n0 + kGhost; ++i) edge = std::max({edge, std::abs(at(i, 0)), std::abs(at(i, n1))});
  for (int i = n0 - 2; i <= n0 + kGhost; ++i)
    for (int j = 0; j <= n1; ++j) edge = std::max(edge, std::abs(at(i, j)));
  if (edge > tol * peak)
    throw Error(ErrorCode::kPreconditionViolation, "test function is not supported inside the grid");
}

double WeightParams::bracket() const { return std::sqrt(1.0 + xi_n * xi_n); }
double WeightParams::eta() const { return tau * std::pow(bracket(), 1.0 / s); }

void WeightParams::validate() const {
  if (!(tau > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "tau must be positive");
  if (!(s >= 1.0)) throw Error(ErrorCode::kPreconditionViolation, "s must be at least 1");
  if (!(a > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "a must be positive");
}

TestFunction random_bump(std::uint64_t seed, int index, double xi_n, const EnergyGrid& grid, int n_terms) {
  if (xi_n == 0.0) throw Error(ErrorCode::kPreconditionViolation, "xi_n must be nonzero");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double ell = 1.0 / std::sqrt(std::abs(xi_n));
  const double L = grid.L_scale * ell;
  const double a = grid.a;
  struct Term {
    cplx amp;
    double c, w, kappa, d, sigma, nu;
  };
  std::vector<Term> terms;
  for (int k = 0; k < n_terms; ++k) {
    Term t;
    t.amp = {2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0};
    t.c = a * (0.05 + 0.3 * U(rng));
    t.w = a * (0.3 + 0.2 * U(rng));
    t.kappa = 6.0 * U(rng) - 3.0;
    t.d = ell * (U(rng) - 0.5);
    t.sigma = ell * (0.5 + 0.3 * U(rng));
    t.nu = (2.0 * U(rng) - 1.0) / ell;
    terms.push_back(t);
  }
  auto f = [terms, L](double x0, double x1) {
    const double cut = bump(x1 / L);
    if (cut == 0.0) return cplx(0.0);
    cplx v = 0.0;
    for (const auto& t : terms) {
      const double p = bump((x0 - t.c) / t.w);
      if (p == 0.0) continue;
      const double g = std::exp(-0.5 * (x1 - t.d) * (x1 - t.d) / (t.sigma * t.sigma));
      v += t.amp * p * std::polar(1.0, t.kappa * x0) * g * std::polar(1.0, t.nu * x1);
    }
    return v * cut;
  };
  return TestFunction::sample(f, a, L, grid.n0, grid.n1);
}

std::vector<TestFunction> random_family(std::uint64_t seed, int count, double xi_n, const EnergyGrid& grid) {
  std::vector<TestFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(random_bump(seed, k, xi_n, grid));
  return out;
}

TestFunction apply_M(const TestFunction& u, double theta, double xi_n) {
  if (!(theta > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "theta must be positive");
  TestFunction m = u;
  std::fill(m.values.begin(), m.values.end(), 0.0);
  double diff = 0.0;
  double norm = 0.0;
  std::vector<double> row_diff(static_cast<std::size_t>(u.n0) + 3, 0.0);
  std::vector<double> row_norm(row_diff.size(), 0.0);
  parallel_for(row_diff.size(), [&](std::size_t r) {
    const int i = static_cast<int>(r) - 1;
    const auto f = row(u, i);
    for (int j = 0; j <= u.n1; ++j) {
      const double x = u.x1(j) * xi_n;
      const cplx d00 = -(-u.at(i - 2, j) + 16.0 * u.at(i - 1, j) - 30.0 * f[j] + 16.0 * u.at(i + 1, j) -
                         u.at(i + 2, j)) / (12.0 * u.h0 * u.h0);
      const cplx omega = -Stencil::d2(f, j, u.h1) + x * x * f[j];
      const cplx omega_low = -Stencil::d2_low(f, j, u.h1) + x * x * f[j];
      m.at(i, j) = d00 - theta * omega;
      row_diff[r] += std::norm(omega - omega_low);
      row_norm[r] += std::norm(omega);
    }
  });
  for (std::size_t r = 0; r < row_diff.size(); ++r) {
    diff += row_diff[r];
    norm += row_norm[r];
  }
  if (norm > 0.0 && std::sqrt(diff / norm) > 1e-3)
    throw Error(ErrorCode::kGridTooCoarse, "fourth- and second-order oscillator differ by " +
                                               std::to_string(std::sqrt(diff / norm)));
  return m;
}

cplx inner(const TestFunction& u, const TestFunction& v) {
  cplx s = 0.0;
  for (int i = 0; i <= u.n0; ++i) {
    cplx r = 0.0;
    for (int j = 0; j <= u.n1; ++j) r += simpson(j, u.n1) * u.at(i, j) * std::conj(v.at(i, j));
    s += simpson(i, u.n0) * r;
  }
  return s * (u.h0 / 3.0) * (u.h1 / 3.0);
}

double oscillator_quotient(const TestFunction& u, int i, double xi_n) {
  const auto f = row(u, i);
  cplx num = 0.0;
  double den = 0.0;
  for (int j = 0; j <= u.n1; ++j) {
    const double x = u.x1(j) * xi_n;
    const cplx omega = -Stencil::d2(f, j, u.h1) + x * x * f[j];
    num += simpson(j, u.n1) * omega * std::conj(f[j]);
    den += simpson(j, u.n1) * std::norm(f[j]);
  }
  if (den == 0.0) throw Error(ErrorCode::kPreconditionViolation, "row is identically zero");
  return num.real() / den;
}

std::array<double, 3> RowNorms::E(std::size_t i) const {
  return {3.0 * u[i], d0[i] + d1[i] + x[i], d00[i] + d11[i] + xx[i]};
}

RowNorms row_norms(const TestFunction& u, double xi_n, double b0, double theta) {
  RowNorms r;
  r.xi_n = xi_n;
  r.b0 = b0;
  r.theta = theta;
  r.h0 = u.h0;
  const std::size_t n = static_cast<std::size_t>(u.n0) + 1;
  for (auto* v : {&r.u, &r.d0, &r.d1, &r.x, &r.d00, &r.d11, &r.xx, &r.Mu, &r.Pu, &r.d1d0, &r.x_d1, &r.omega,
                  &r.square, &r.cross_b0, &r.remainder})
    v->assign(n, 0.0);
  r.omega_d0.assign(n, 0.0);
  const double c23 = std::sqrt(2.0 / 3.0);
  const double c32 = std::sqrt(1.5);
  const double w1 = u.h1 / 3.0;
  parallel_for(n, [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const auto f = row(u, i);
    std::vector<cplx> t1, t2, t3;
    x0_derivatives(u, i, t1, t2, t3);
    std::vector<cplx> v(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) v[j] = -kI * t1[j];  // D0 u
    for (int j = 0; j <= u.n1; ++j) {
      const double wt = simpson(j, u.n1) * w1;
      const double x1 = u.x1(j);
      const double X = x1 * xi_n;
      const cplx uj = f[j];
      const cplx d00 = -t2[j];
      const cplx d000 = kI * t3[j];
      const cplx D1u = -kI * Stencil::d1(f, j, u.h1);
      const cplx D11u = -Stencil::d2(f, j, u.h1);
      const cplx D1v = -kI * Stencil::d1(v, j, u.h1);
      const cplx D11v = -Stencil::d2(v, j, u.h1);
      const cplx omega_u = D11u + X * X * uj;
      const cplx omega_v = D11v + X * X * v[j];
      const cplx Mu = d00 - theta * omega_u;
      const cplx Pu = d000 - omega_v - b0 * X * X * X * uj;
      r.u[ii] += wt * std::norm(uj);
      r.d0[ii] += wt * std::norm(v[j]);
      r.d1[ii] += wt * std::norm(D1u);
      r.x[ii] += wt * std::norm(X * uj);
      r.d00[ii] += wt * std::norm(d00);
      r.d11[ii] += wt * std::norm(D11u);
      r.xx[ii] += wt * std::norm(X * X * uj);
      r.Mu[ii] += wt * std::norm(Mu);
      r.Pu[ii] += wt * std::norm(Pu);
      r.d1d0[ii] += wt * std::norm(D1v);
      r.x_d1[ii] += wt * std::norm(x1 * D1u);
      r.omega[ii] += wt * std::norm(omega_u);
      r.square[ii] += wt * std::norm(c23 * X * v[j] + b0 * c32 * X * X * uj);
      r.cross_b0[ii] += wt * 2.0 * b0 * (X * X * X * uj * std::conj(v[j])).real();
      r.omega_d0[ii] += wt * omega_v * std::conj(v[j]);
      r.remainder[ii] += wt * (x1 * x1 * uj * std::conj(D1u)).real();
    }
  });
  return r;
}

EnergyDecomposition energy_decomposition(const RowNorms& r, std::size_t i) {
  EnergyDecomposition e;
  const double xi2 = r.xi_n * r.xi_n;
  const double b0 = r.b0;
  e.E13 = r.Mu[i] + (2.0 / 3.0) * r.omega_d0[i] + (2.0 / 9.0) * r.omega[i] + r.cross_b0[i];
  e.completed_square = r.square[i];
  e.negative_term = -(4.0 / 9.0) * xi2 * r.u[i];
  e.E151 = r.Mu[i] + (2.0 / 3.0) * r.d1d0[i] + r.square[i] + (2.0 / 9.0) * r.d11[i] +
           (2.0 / 9.0) * (1.0 - 6.75 * b0 * b0) * r.xx[i] + (4.0 / 9.0) * xi2 * r.x_d1[i] + e.negative_term;
  e.relative_gap = std::abs(e.E13) > 0.0 ? std::abs(e.E13 - e.E151) / std::abs(e.E13) : std::abs(e.E151);
  return e;
}

EnergyDecomposition energy_decomposition(const TestFunction& u, double b0, double xi_n, int row) {
  if (row < 0 || row > u.n0) throw Error(ErrorCode::kPreconditionViolation, "row outside the grid");
  return energy_decomposition(row_norms(u, xi_n, b0), static_cast<std::size_t>(row));
}

std::vector<double> TauSweep::taus(double s, double xi_n) const {
  if (points < 2 || !(eta_min > 0.0) || !(eta_max > eta_min))
    throw Error(ErrorCode::kPreconditionViolation, "tau sweep needs 0 < eta_min < eta_max and >= 2 points");
  const double scale = std::pow(std::sqrt(1.0 + xi_n * xi_n), 1.0 / s);
  std::vector<double> out;
  for (int k = 0; k < points; ++k)
    out.push_back(eta_min * std::pow(eta_max / eta_min, static_cast<double>(k) / (points - 1)) / scale);
  return out;
}

EnergyReport verify_multiplier_estimate(const RowNorms& r, double s, const TauSweep& sweep, double C) {
  if (!(s >= 1.0)) throw Error(ErrorCode::kPreconditionViolation, "s must be at least 1");
  EnergyReport rep;
  rep.s = s;
  rep.xi_n = r.xi_n;
  rep.C = C;
  rep.E = r.E(0);
  rep.decomposition = energy_decomposition(r, 0);
  const double h0 = r.h0;
  const double bracket = std::sqrt(1.0 + r.xi_n * r.xi_n);
  const auto E0 = sum_rows({&r.u}, 3.0);
  const auto E1 = sum_rows({&r.d0, &r.d1, &r.x});
  std::vector<std::array<double, 4>> parts;
  for (double tau : sweep.taus(s, r.xi_n)) {
    const double eta = tau * std::pow(bracket, 1.0 / s);
    const std::array<double, 4> p{C * eta * rep.E[1], C * eta * eta * eta * rep.E[0],
                                  C * eta * eta * weighted_integral(E1, h0, eta),
                                  C * std::pow(eta, 4) * weighted_integral(E0, h0, eta)};
    rep.tau.push_back(tau);
    rep.lhs.push_back(weighted_integral(r.Mu, h0, eta));
    rep.rhs.push_back(p[0] + p[1] + p[2] + p[3]);
    parts.push_back(p);
  }
  finish_sweep(rep);
  const auto& p = parts[star_index(rep)];
  rep.terms = {{"trace_E1", p[0]}, {"trace_E0", p[1]}, {"bulk_E1", p[2]}, {"bulk_E0", p[3]}};
  return rep;
}

EnergyReport verify_multiplier_estimate(const TestFunction& u, const WeightParams& w, const TauSweep& sweep,
                                        double C) {
  w.validate();
  if (std::abs(u.a - w.a) > 1e-12) throw Error(ErrorCode::kPreconditionViolation, "weight and grid disagree on a");
  return verify_multiplier_estimate(row_norms(u, w.xi_n, 0.0), w.s, sweep, C);
}

EnergyReport verify_full_estimate(const RowNorms& r, double s, const TauSweep& sweep, double C, TraceExponent trace) {
  if (!(s >= 1.0 && s <= 2.0)) throw Error(ErrorCode::kPreconditionViolation, "the full estimate needs 1 <= s <= 2");
  if (!(27.0 * r.b0 * r.b0 < 4.0)) throw Error(ErrorCode::kPreconditionViolation, "|b0| must be below 2 / (3 sqrt 3)");
  EnergyReport rep;
  rep.s = s;
  rep.xi_n = r.xi_n;
  rep.C = C;
  rep.E = r.E(0);
  rep.decomposition = energy_decomposition(r, 0);
  const double h0 = r.h0;
  const double bracket = std::sqrt(1.0 + r.xi_n * r.xi_n);
  const std::array<std::vector<double>, 3> E{sum_rows({&r.u}, 3.0), sum_rows({&r.d0, &r.d1, &r.x}),
                                             sum_rows({&r.d00, &r.d11, &r.xx})};
  for (double tau : sweep.taus(s, r.xi_n)) {
    const double eta = tau * std::pow(bracket, 1.0 / s);
    double rhs = 0.0;
    for (int j = 0; j < 3; ++j) {
      double tp = 4.0 - 1.5 * j;
      if (j == 0 && trace == TraceExponent::kTauCubed) tp = 3.0;
      rhs += C * std::pow(tau, tp) * std::pow(bracket, (5.0 - 2.0 * j) / s) * rep.E[j];
      rhs += C * std::pow(tau, 6.0 - 2.0 * j) * std::pow(bracket, (6.0 - 2.0 * j) / s) *
             weighted_integral(E[j], h0, eta);
    }
    rep.tau.push_back(tau);
    rep.lhs.push_back(weighted_integral(r.Pu, h0, eta));
    rep.rhs.push_back(rhs);
  }
  finish_sweep(rep);

  const double tau = rep.tau[star_index(rep)];
  const double eta = tau * std::pow(bracket, 1.0 / s);
  const double xi2 = r.xi_n * r.xi_n;
  auto bulk = [&](const std::vector<double>& q, double c) { return 2.0 * eta * c * weighted_integral(q, h0, eta); };
  rep.terms = {
      {"trace_energy", rep.decomposition.E151},
      {"Mu", bulk(r.Mu, 1.0)},
      {"D1D0u", bulk(r.d1d0, 2.0 / 3.0)},
      {"completed_square", bulk(r.square, 1.0)},
      {"D1D1u", bulk(r.d11, 2.0 / 9.0)},
      {"x1x1u", bulk(r.xx, (2.0 / 9.0) * (1.0 - 6.75 * r.b0 * r.b0))},
      {"x1D1u", bulk(r.x_d1, (4.0 / 9.0) * xi2)},
      {"negative_u", bulk(r.u, -(4.0 / 9.0) * xi2)},
      {"remainder", -2.0 * r.b0 * xi2 * r.xi_n * weighted_integral(r.remainder, h0, eta)},
  };
  return rep;
}

EnergyReport verify_full_estimate(const TestFunction& u, const WeightParams& w, double b0, const TauSweep& sweep,
                                  double C, TraceExponent trace) {
  w.validate();
  if (std::abs(u.a - w.a) > 1e-12) throw Error(ErrorCode::kPreconditionViolation, "weight and grid disagree on a");
  return verify_full_estimate(row_norms(u, w.xi_n, b0), w.s, sweep, C, trace);
}

std::string ExponentCheck::which_fails() const {
  if (holds()) return "";
  if (lower < middle) return "1 + 2/s >= 2";
  return "2 >= 4 - 4/s";
}

ExponentCheck exponent_check(double s) {
  if (!(s >= 1.0)) throw Error(ErrorCode::kPreconditionViolation, "s must be at least 1");
  return {s, 1.0 + 2.0 / s, 2.0, 4.0 - 4.0 / s};
}

std::pair<double, double> bracket_identity(const TestFunction& u, double xi_n) {
  const double b2 = 1.0 + xi_n * xi_n;
  TestFunction v = u;
  for (auto& c : v.values) c *= b2;
  const double e_u = row_norms(u, xi_n, 0.0).E(0)[0];
  const double e_v = row_norms(v, xi_n, 0.0).E(0)[0];
  return {b2 * b2 * e_u, e_v};
}

}  // namespace stokeskit
