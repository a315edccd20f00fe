#include "reports.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "counterexample.hpp"
#include "energy.hpp"
#include "symbolgeometry.hpp"
#include "zerolocator.hpp"

namespace stokeskit {

using nlohmann::json;

namespace {

json cj(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json cj_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (const cplx z : v) a.push_back(cj(z));
  return a;
}

template <std::size_t N>
json cj_list(const std::array<cplx, N>& v) {
  return cj_list(std::vector<cplx>(v.begin(), v.end()));
}

// Finite doubles pass through; NaN and infinities become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Checks {
  json list = json::array();
  bool all = true;

  void add(const std::string& name, double value, double threshold, bool pass, bool gating = true) {
    list.push_back({{"name", name}, {"value", num(value)}, {"threshold", num(threshold)}, {"pass", pass},
                    {"gating", gating}});
    if (gating && !pass) all = false;
  }
  void below(const std::string& name, double value, double threshold) {
    add(name, value, threshold, value < threshold);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

IntegratorConfig integrator_from(const json& c) {
  IntegratorConfig cfg;
  cfg.rel_tol = c.at("rel_tol").get<double>();
  cfg.abs_tol = c.at("abs_tol").get<double>();
  cfg.validate();
  return cfg;
}

const json kIntegratorDefaults = {{"rel_tol", 1e-12}, {"abs_tol", 1e-14}};

json with_integrator(json j) {
  j.update(kIntegratorDefaults);
  return j;
}

cplx zeta_from(const json& c, const std::string& prefix) {
  return {c.at(prefix + "_re").get<double>(), c.at(prefix + "_im").get<double>()};
}

// ---------------------------------------------------------------- sibuya-eval

Report sibuya_eval(const json& c) {
  const cplx zeta = zeta_from(c, "zeta");
  const cplx y = zeta_from(c, "y");
  const int k = c.at("k").get<int>();
  const int n_coeffs = c.at("n_coeffs").get<int>();
  if (k < 0 || k > 4) throw Error(ErrorCode::kPreconditionViolation, "k must lie in 0..4");
  if (n_coeffs < 0) throw Error(ErrorCode::kPreconditionViolation, "n_coeffs must be nonnegative");
  const IntegratorConfig cfg = integrator_from(c);
  const CanonicalSolution sol(zeta, k);
  AsymptoticSeed seed;
  const SolutionTrace tr = sol.trace(y, cfg, &seed);
  const ScaledState fs = tr.final_state();
  const ODEState v = fs.value();
  const AsymptoticCoeffs co = asymptotic_coeffs(omega_pow(-2 * k) * zeta, n_coeffs);

  Report r;
  r.json["result"] = {
      {"y", cj(v.y)},
      {"w", cj(v.w)},
      {"wp", cj(v.wp)},
      {"log_abs_w", num(fs.log_abs_w())},
      {"steps", tr.steps},
      {"error_estimate", tr.error_estimate},
      {"seed", {{"rho_far", seed.rho_far}, {"phi", seed.phi}, {"n_terms", seed.n_terms}, {"last_term", seed.last_term}}},
      {"coefficients", {{"B", cj_list(co.B)}, {"C", cj_list(co.C)}}},
      {"turning_points", cj_list(turning_points(zeta))},
  };
  r.json["checks"] = json::array();
  r.csv = tr.to_csv();
  return r;
}

// --------------------------------------------------------------- stokes-table

Report stokes_table(const json& c) {
  StokesOptions opts;
  opts.integrator = integrator_from(c);
  opts.y_eval = zeta_from(c, "y_eval");
  opts.y_check = zeta_from(c, "y_check");
  const StokesTable t = stokes_coefficients(zeta_from(c, "zeta"), opts);
  Report r;
  r.json["result"] = {
      {"zeta", cj(t.zeta)},
      {"y_eval", cj(t.y_eval)},
      {"C", cj_list(t.C)},
      {"C_tilde", cj_list(t.C_tilde)},
      {"err", t.err},
      {"tilde_residual", tilde_residual(t)},
      {"matrix_residual", matrix_product_residual(t.C)},
  };
  std::ostringstream csv;
  csv << "k,C_re,C_im,C_tilde_re,C_tilde_im\n";
  for (int k = 0; k < 5; ++k)
    csv << k << ',' << fmt(t.C[k].real()) << ',' << fmt(t.C[k].imag()) << ',' << fmt(t.C_tilde[k].real()) << ','
        << fmt(t.C_tilde[k].imag()) << '\n';
  r.csv = csv.str();
  r.json["checks"] = json::array();
  return r;
}

// ---------------------------------------------------------- verify-identities

Report verify_identities_report(const json& c) {
  StokesOptions opts;
  opts.integrator = integrator_from(c);
  const IdentityReport rep = verify_identities(c.at("grid").get<int>(), c.at("radius").get<double>(),
                                               c.at("halton").get<int>(), opts);
  Report r;
  r.json["result"] = {
      {"samples", rep.samples.size()},
      {"at_zero_C", rep.at_zero_C},
      {"at_zero_tilde", rep.at_zero_tilde},
      {"max_cyclic", rep.max_cyclic},
      {"max_matrix", rep.max_matrix},
      {"max_symmetry", rep.max_symmetry},
      {"max_tilde", rep.max_tilde},
      {"max_rotation", rep.max_rotation},
      {"max_err", rep.max_err},
      {"min_max_abs_C", rep.min_max_abs_C},
      {"dC0_at_zero", cj(rep.dC0_at_zero)},
  };
  Checks ch;
  ch.below("at_zero_C", rep.at_zero_C, c.at("tol_at_zero").get<double>());
  ch.below("cyclic", rep.max_cyclic, c.at("tol_cyclic").get<double>());
  ch.below("matrix", rep.max_matrix, c.at("tol_matrix").get<double>());
  ch.below("tilde", rep.max_tilde, c.at("tol_tilde").get<double>());
  ch.below("symmetry", rep.max_symmetry, c.at("tol_symmetry").get<double>());
  ch.add("nontrivial_C", rep.min_max_abs_C, 1e-3, rep.min_max_abs_C > 1e-3);
  ch.add("dC0_at_zero", std::abs(rep.dC0_at_zero), 0.01, std::abs(rep.dC0_at_zero) > 0.01, false);
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  std::ostringstream csv;
  csv << "zeta_re,zeta_im,cyclic,matrix,symmetry,tilde,rotation,err,max_abs_C\n";
  for (const auto& s : rep.samples)
    csv << fmt(s.zeta.real()) << ',' << fmt(s.zeta.imag()) << ',' << fmt(s.cyclic) << ',' << fmt(s.matrix) << ','
        << fmt(s.symmetry) << ',' << fmt(s.tilde) << ',' << fmt(s.rotation) << ',' << fmt(s.err) << ','
        << fmt(s.max_abs_C) << '\n';
  r.csv = csv.str();
  return r;
}

// ------------------------------------------------------------------ zero-find

json sector_json(const SectorContour& s) {
  return {{"r_min", s.r_min}, {"r_max", s.r_max}, {"arg_min", s.arg_min}, {"arg_max", s.arg_max},
          {"n_samples", s.n_samples}};
}

Report zero_find(const json& c) {
  SectorContour sec;
  sec.r_min = c.at("r_min").get<double>();
  sec.r_max = c.at("r_max").get<double>();
  sec.arg_min = c.at("arg_min").get<double>();
  sec.arg_max = c.at("arg_max").get<double>();
  sec.n_samples = c.at("n_samples").get<int>();
  ZeroOptions zo;
  zo.tol = c.at("tol").get<double>();
  zo.leaf_size = c.at("leaf_size").get<double>();
  zo.max_r = c.at("max_r").get<double>();
  StokesOptions opts;
  opts.integrator = integrator_from(c);

  const ZeroCertificate cert = find_zero(sec, zo, opts);
  StokesOptions half = opts;
  half.integrator = opts.integrator.halved();
  ZeroOptions zo_half = zo;
  zo_half.tol = zo.tol / 2.0;
  const ZeroCertificate cert_half = find_zero(sec, zo_half, half);
  const double shift = std::abs(cert.zeta0 - cert_half.zeta0);
  const cplx reflected = std::conj(kOmega * cert.zeta0);
  const double reflected_abs = std::abs(stokes_C0(reflected, opts));
  const SectorContour real_axis{c.at("real_r_min").get<double>(), c.at("real_r_max").get<double>(),
                                -c.at("real_half_angle").get<double>(), c.at("real_half_angle").get<double>(), 64};
  const int real_winding = winding_number(real_axis, opts).winding;
  const double arg = arg_in(cert.zeta0, 0.0);

  Report r;
  r.json["result"] = {
      {"zeta0", cj(cert.zeta0)},
      {"abs", std::abs(cert.zeta0)},
      {"arg", arg},
      {"residual", cert.residual},
      {"winding", cert.winding},
      {"contour", sector_json(cert.contour)},
      {"leaf", sector_json(cert.leaf)},
      {"newton_iters", cert.newton_iters},
      {"halving_shift", shift},
      {"reflected", cj(reflected)},
      {"reflected_abs_C0", reflected_abs},
      {"real_axis_contour", sector_json(real_axis)},
      {"real_axis_winding", real_winding},
  };
  Checks ch;
  ch.below("residual", cert.residual, zo.tol);
  ch.add("winding", cert.winding, 1, cert.winding >= 1);
  ch.add("arg_in_sector", arg, 19.0 * kPi / 15.0, arg > kPi && arg <= 19.0 * kPi / 15.0);
  ch.below("halving_shift", shift, 1e-6);
  ch.below("reflected_abs_C0", reflected_abs, 1e-7);
  ch.add("real_axis_winding", real_winding, 0, real_winding == 0);
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  std::ostringstream csv;
  csv << "point,re,im,abs_C0\n";
  csv << "zeta0," << fmt(cert.zeta0.real()) << ',' << fmt(cert.zeta0.imag()) << ',' << fmt(cert.residual) << '\n';
  csv << "reflected," << fmt(reflected.real()) << ',' << fmt(reflected.imag()) << ',' << fmt(reflected_abs) << '\n';
  r.csv = csv.str();
  return r;
}

// ------------------------------------------------------------- counterexample

Report counterexample_report(const json& c) {
  const double b0 = c.at("b0").get<double>();
  const cplx zeta0 = zeta_from(c, "zeta0");
  const auto lambdas = c.at("lambdas").get<std::vector<double>>();
  if (lambdas.empty()) throw Error(ErrorCode::kPreconditionViolation, "at least one lambda is required");
  SolutionOptions so;
  so.integrator = integrator_from(c);
  so.margin = c.at("margin").get<double>();
  so.strict_margin = c.at("strict_margin").get<bool>();
  const double dy_max = c.at("dy_max").get<double>();
  const double y_range = c.at("y_range").get<double>();
  const double x1_max = c.at("x1_max").get<double>();
  const auto x0_list = c.at("growth_x0").get<std::vector<double>>();
  const int csv_rows = c.at("csv_rows").get<int>();

  const DerivedParameters d = derive_parameters(b0, zeta0);
  const double round_trip = std::abs(zeta_of(b0, d.R0, d.theta0) - zeta0) / std::abs(zeta0);
  const double expected_slope = d.R0 * std::sin(d.theta0);

  Checks ch;
  ch.add("theta0_range", d.theta0, kPi / 6.0, d.theta0 > 0.0 && d.theta0 <= kPi / 6.0);
  ch.below("round_trip", round_trip, 1e-12);

  json per_lambda = json::array();
  std::vector<std::pair<double, GrowthProfile>> profiles;
  std::ostringstream csv;
  csv << "lambda,x1,y_re,y_im,u_re,u_im,abs_u,margin\n";
  double max_ode = 0.0;
  double max_fd = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<double> sup_u;
  for (double lam : lambdas) {
    const CounterexampleParams p = make_params(b0, zeta0, lam);
    const auto grid = default_grid(p, dy_max, y_range, x1_max);
    const SampledSolution s = build_solution(p, grid, so);
    const ResidualReport res = residual_check(p, s);
    profiles.emplace_back(lam, growth_profile(p, x0_list, so, s.max_abs_w));
    max_ode = std::max(max_ode, res.ode);
    max_fd = std::max(max_fd, res.finite_difference);
    min_margin = std::min(min_margin, s.min_margin);
    sup_u.push_back(s.max_abs_w);
    per_lambda.push_back({{"lambda", lam},
                          {"A", cj(p.A)},
                          {"B", cj(p.B)},
                          {"mu", cj(p.mu)},
                          {"grid_points", grid.size()},
                          {"residual",
                           {{"scale", res.scale}, {"ode", res.ode}, {"finite_difference", res.finite_difference},
                            {"grid_dy", res.grid_dy}}},
                          {"max_abs_u", s.max_abs_w},
                          {"min_margin", num(s.min_margin)},
                          {"used_derivative_trace", profiles.back().second.used_derivative_trace}});
    const std::size_t stride = std::max<std::size_t>(1, s.x1.size() / static_cast<std::size_t>(std::max(1, csv_rows)));
    for (std::size_t i = 0; i < s.x1.size(); i += stride)
      csv << fmt(lam) << ',' << fmt(s.x1[i]) << ',' << fmt(s.y[i].real()) << ',' << fmt(s.y[i].imag()) << ','
          << fmt(s.w[i].real()) << ',' << fmt(s.w[i].imag()) << ',' << fmt(std::abs(s.w[i])) << ','
          << fmt(s.margin[i]) << '\n';
  }
  const double slope = growth_slope(profiles);
  const CounterexampleParams p0 = make_params(b0, zeta0, lambdas.front());
  const MomentTable mt = moments(p0, so, c.at("moment_tail").get<double>());
  const DecayCheck dc = schwartz_decay(p0, c.at("decay_s_lo").get<double>(), c.at("decay_s_hi").get<double>(),
                                       c.at("decay_power").get<int>(), 401, so);
  const double sup_ratio = *std::max_element(sup_u.begin(), sup_u.end()) / *std::min_element(sup_u.begin(), sup_u.end());
  const double s_gevrey = c.at("gevrey_s").get<double>();
  const double c_gevrey = c.at("gevrey_c").get<double>();
  const auto wt = witness_table(p0, s_gevrey, c_gevrey, c.at("witness_lambdas").get<std::vector<double>>());

  ch.below("ode_residual", max_ode, 1e-8);
  ch.below("finite_difference_residual", max_fd, 1e-4);
  ch.below("growth_slope", std::abs(slope - expected_slope), 1e-6);
  ch.add("schwartz_decay_pos", dc.max_weighted_pos, dc.u0, dc.max_weighted_pos < dc.u0);
  ch.add("schwartz_decay_neg", dc.max_weighted_neg, dc.u0, dc.max_weighted_neg < dc.u0);
  ch.add("uniform_bound_ratio", sup_ratio, 2.0, sup_ratio <= 2.0);
  ch.add("moment_nondegeneracy", mt.nondegeneracy(), 1e-8, mt.nondegeneracy() > 1e-8);
  ch.add("sector_margin", min_margin, so.margin, min_margin >= so.margin, false);

  json moments_json = json::array();
  for (int k = 0; k < 3; ++k)
    moments_json.push_back({{"k", k}, {"moment", cj(mt.moment[k])}, {"scale", mt.scale[k]},
                            {"relative", std::abs(mt.moment[k]) / mt.scale[k]}});
  json witness = json::array();
  for (const auto& w : wt)
    witness.push_back({{"lambda", w.lambda}, {"log_growth", w.log_growth}, {"log_gevrey", w.log_gevrey},
                       {"log_ratio", w.log_ratio}});
  json growth = json::array();
  for (const auto& [lam, g] : profiles)
    for (std::size_t i = 0; i < g.x0.size(); ++i) growth.push_back({{"lambda", lam}, {"x0", g.x0[i]}, {"log_ratio", g.log_ratio[i]}});

  Report r;
  r.json["result"] = {
      {"R0", d.R0},
      {"theta0", d.theta0},
      {"R0_sin_theta0", expected_slope},
      {"alpha", cj(p0.alpha())},
      {"beta", cj(p0.B)},
      {"round_trip", round_trip},
      {"lambdas", per_lambda},
      {"residual", {{"ode", max_ode}, {"finite_difference", max_fd}}},
      {"growth_slope", slope},
      {"growth", growth},
      {"moment_table",
       {{"moments", moments_json}, {"x_min", mt.x_min}, {"x_max", mt.x_max}, {"tail", mt.tail}, {"points", mt.points}}},
      {"schwartz",
       {{"u0", dc.u0}, {"max_weighted_pos", dc.max_weighted_pos}, {"max_weighted_neg", dc.max_weighted_neg}}},
      {"uniform_bound", {{"sup_abs_u", sup_u}, {"ratio", sup_ratio}}},
      {"sector_margin", {{"min", num(min_margin)}, {"required", so.margin}}},
      {"witness",
       {{"s", s_gevrey},
        {"c", c_gevrey},
        {"crossover_lambda", std::pow(c_gevrey / expected_slope, 1.0 / (0.5 - 1.0 / s_gevrey))},
        {"table", witness}}},
  };
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  r.csv = csv.str();
  return r;
}

// --------------------------------------------------------------- energy-check

Report energy_check(const json& c) {
  const auto s_list = c.at("s").get<std::vector<double>>();
  const auto xi_list = c.at("xi_n").get<std::vector<double>>();
  const double b0 = c.at("b0").get<double>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  const int n_samples = c.at("n_samples").get<int>();
  const double C_multiplier = c.at("C_multiplier").get<double>();
  const double C_full = c.at("C_full").get<double>();
  EnergyGrid grid;
  grid.n0 = c.at("n0").get<int>();
  grid.n1 = c.at("n1").get<int>();
  grid.L_scale = c.at("L_scale").get<double>();
  TauSweep sweep;
  sweep.eta_min = c.at("eta_min").get<double>();
  sweep.eta_max = c.at("eta_max").get<double>();
  sweep.points = c.at("eta_points").get<int>();
  if (n_samples < 1) throw Error(ErrorCode::kPreconditionViolation, "n_samples must be positive");

  json reports = json::array();
  json exponents = json::array();
  std::ostringstream csv;
  csv << "xi_n,s,sample,inequality,tau,lhs,rhs\n";
  double max_gap = 0.0;
  bool multiplier_ok = true;
  bool full_ok = true;
  bool full_tau3_ok = true;
  bool monotone = true;
  double max_bracket_gap = 0.0;
  for (double s : s_list) {
    const ExponentCheck e = exponent_check(s);
    exponents.push_back({{"s", s}, {"lower", e.lower}, {"middle", e.middle}, {"upper", e.upper}, {"holds", e.holds()},
                         {"which_fails", e.which_fails()}});
  }
  auto sweep_json = [&](const EnergyReport& rep, const char* kind, double xi, double s, int k, bool& ok) {
    const bool holds = std::isfinite(rep.tau_star);
    ok = ok && holds && rep.monotone;
    monotone = monotone && rep.monotone;
    for (std::size_t i = 0; i < rep.tau.size(); ++i)
      csv << fmt(xi) << ',' << fmt(s) << ',' << k << ',' << kind << ',' << fmt(rep.tau[i]) << ',' << fmt(rep.lhs[i])
          << ',' << fmt(rep.rhs[i]) << '\n';
    json terms = json::object();
    for (const auto& t : rep.terms) terms[t.name] = t.value;
    return json{{"C", rep.C}, {"tau_star", num(rep.tau_star)}, {"monotone", rep.monotone},
                {"min_ratio", num([&] {
                   double m = std::numeric_limits<double>::infinity();
                   for (std::size_t i = 0; i < rep.tau.size(); ++i) m = std::min(m, rep.lhs[i] / rep.rhs[i]);
                   return m;
                 }())},
                {"terms", terms}};
  };
  for (double xi : xi_list) {
    for (int k = 0; k < n_samples; ++k) {
      const TestFunction u = random_bump(seed, k, xi, grid);
      u.validate(1e-10);
      const RowNorms rn = row_norms(u, xi, b0);
      const EnergyDecomposition dec = energy_decomposition(rn, 0);
      max_gap = std::max(max_gap, dec.relative_gap);
      const auto bi = bracket_identity(u, xi);
      max_bracket_gap = std::max(max_bracket_gap, std::abs(bi.first - bi.second) / bi.first);
      const auto E = rn.E(0);
      json entry = {{"xi_n", xi},
                    {"sample", k},
                    {"E", {E[0], E[1], E[2]}},
                    {"E13", cj(dec.E13)},
                    {"E151", dec.E151},
                    {"completed_square", dec.completed_square},
                    {"negative_term", dec.negative_term},
                    {"relative_gap", dec.relative_gap}};
      json by_s = json::array();
      for (double s : s_list) {
        json item = {{"s", s}};
        item["multiplier"] = sweep_json(verify_multiplier_estimate(rn, s, sweep, C_multiplier), "multiplier", xi, s, k, multiplier_ok);
        if (s <= 2.0) {
          item["full"] = sweep_json(verify_full_estimate(rn, s, sweep, C_full, TraceExponent::kPrinted), "full", xi, s,
                                    k, full_ok);
          item["full_tau3"] = sweep_json(verify_full_estimate(rn, s, sweep, C_full, TraceExponent::kTauCubed),
                                         "full_tau3", xi, s, k, full_tau3_ok);
        } else {
          item["full"] = {{"skipped", exponent_check(s).which_fails()}};
        }
        by_s.push_back(item);
      }
      entry["by_s"] = by_s;
      reports.push_back(entry);
    }
  }
  Checks ch;
  ch.below("decomposition_gap", max_gap, c.at("tol_decomposition").get<double>());
  ch.add("multiplier_inequality", multiplier_ok, 1, multiplier_ok);
  ch.add("full_inequality", full_ok, 1, full_ok);
  ch.add("full_inequality_tau3", full_tau3_ok, 1, full_tau3_ok, false);
  ch.add("tau_monotone", monotone, 1, monotone);
  ch.below("bracket_identity", max_bracket_gap, 1e-12);

  Report r;
  r.json["result"] = {{"reports", reports}, {"exponents", exponents}, {"max_decomposition_gap", max_gap}};
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------------- roots

Report roots_report(const json& c) {
  const double x = c.at("x").get<double>();
  const double xi = c.at("xi").get<double>();
  const double b = c.at("b").get<double>();
  const CubicRoots cr = cubic_roots(x, xi, b);
  const auto vr = vieta_residuals(cr, x, xi, b);
  double max_p = 0.0;
  for (double t : cr.roots)
    max_p = std::max(max_p, std::abs(cubic_symbol(t, x, xi, b)) / (1.0 + std::abs(t * t * t)));
  const NonsmoothnessWitness w =
      nonsmoothness_witness(b, c.at("eps").get<std::vector<double>>(), c.at("phi").get<std::vector<double>>());
  const double r2 = x * x + xi * xi;
  const double u = b * x * x * x / (r2 * std::sqrt(r2));
  const int terms = g_series_terms(u, 1e-12);
  const double g = g_series(u, terms);
  const double min_disc = min_normalized_discriminant(b, c.at("disc_samples").get<int>(), c.at("seed").get<std::uint64_t>());

  Report r;
  json table = json::array();
  std::ostringstream csv;
  csv << "eps,phi,ratio,first_order\n";
  for (const auto& d : w.table) {
    table.push_back({{"eps", d.eps}, {"phi", d.phi}, {"ratio", d.ratio}, {"first_order", d.first_order}});
    csv << fmt(d.eps) << ',' << fmt(d.phi) << ',' << fmt(d.ratio) << ',' << fmt(d.first_order) << '\n';
  }
  r.json["result"] = {
      {"discriminant", discriminant(x, xi, b)},
      {"roots", {cr.roots[0], cr.roots[1], cr.roots[2]}},
      {"vanishing_index", cr.vanishing},
      {"vanishing_root", cr.vanishing_root()},
      {"phi", cr.phi},
      {"vieta", {vr[0], vr[1], vr[2]}},
      {"max_symbol_residual", max_p},
      {"g_series", {{"u", u}, {"terms", terms}, {"value", g}, {"arcsin", std::asin(u)}}},
      {"min_normalized_discriminant", min_disc},
      {"witness",
       {{"b", w.b},
        {"max_first_order_gap", w.max_first_order_gap},
        {"nonlinearity", w.nonlinearity},
        {"threshold", w.threshold},
        {"table", table}}},
  };
  Checks ch;
  ch.below("vieta", std::max({vr[0], vr[1], vr[2]}), 1e-12);
  ch.below("symbol_residual", max_p, 1e-10);
  ch.below("first_order_limit", w.max_first_order_gap, std::abs(b * b * b) + 1e-6);
  ch.add("nonlinearity", w.nonlinearity, w.threshold, w.certified());
  ch.add("discriminant_nonnegative", min_disc, 0.0, min_disc >= 0.0);
  ch.below("g_series_vs_arcsin", std::abs(g - std::asin(u)), 1e-10);
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------------- cones

Report cones_report(const json& c) {
  ConeOptions o;
  o.n = c.at("n").get<int>();
  o.n_samples = c.at("n_samples").get<int>();
  o.seed = c.at("seed").get<std::uint64_t>();
  o.segment_points = c.at("segment_points").get<int>();
  const ConeReport rep = cone_analysis(c.at("b0").get<double>(), o);
  json ham = json::array();
  for (const auto& h : rep.hamilton) ham.push_back({{"name", h.name}, {"in_closure", h.in_closure}});
  Report r;
  r.json["result"] = {
      {"gamma_samples", rep.gamma_samples},
      {"attempts", rep.attempts},
      {"oracle_disagreements", rep.oracle_disagreements},
      {"min_margin", rep.min_margin},
      {"delta_v", rep.delta_v},
      {"delta_v_max_sigma", rep.delta_v_max_sigma},
      {"delta_v_tangent", rep.delta_v_tangent},
      {"off_tangent", rep.off_tangent},
      {"off_tangent_max_sigma", rep.off_tangent_max_sigma},
      {"hamilton", ham},
  };
  Checks ch;
  ch.add("delta_v_in_C_and_tangent", rep.delta_v_max_sigma, 0.0, rep.delta_v_certified());
  ch.add("off_tangent_dual", rep.off_tangent_max_sigma, 0.0, rep.off_tangent_max_sigma <= 0.0);
  ch.add("hamilton_span_not_in_gamma", rep.hamilton_not_contained(), 1, rep.hamilton_not_contained());
  ch.add("oracle_agreement", rep.oracle_disagreements, 0, rep.oracle_disagreements == 0, false);
  r.json["checks"] = ch.list;
  r.certified = ch.all;
  std::ostringstream csv;
  csv << "vector,in_gamma_closure\n";
  for (const auto& h : rep.hamilton) csv << h.name << ',' << (h.in_closure ? 1 : 0) << '\n';
  r.csv = csv.str();
  return r;
}

}  // namespace

const std::vector<std::string>& report_commands() {
  static const std::vector<std::string> cmds = {"sibuya-eval",    "stokes-table", "verify-identities", "zero-find",
                                                "counterexample", "energy-check", "roots",             "cones"};
  return cmds;
}

json default_config(const std::string& command) {
  if (command == "sibuya-eval")
    return with_integrator({{"zeta_re", 0.0}, {"zeta_im", 0.0}, {"k", 0}, {"y_re", 1.0}, {"y_im", 0.0}, {"n_coeffs", 12}});
  if (command == "stokes-table")
    return with_integrator({{"zeta_re", 0.0},
                            {"zeta_im", 0.0},
                            {"y_eval_re", 0.0},
                            {"y_eval_im", 0.0},
                            {"y_check_re", 1.0},
                            {"y_check_im", 0.0}});
  if (command == "verify-identities")
    return with_integrator({{"grid", 20},
                            {"radius", 3.0},
                            {"halton", 20},
                            {"tol_at_zero", 1e-8},
                            {"tol_cyclic", 1e-7},
                            {"tol_matrix", 1e-7},
                            {"tol_tilde", 1e-8},
                            {"tol_symmetry", 1e-7}});
  if (command == "zero-find")
    return with_integrator({{"r_min", 0.5},
                            {"r_max", 8.0},
                            {"arg_min", kPi},
                            {"arg_max", 19.0 * kPi / 15.0},
                            {"n_samples", 64},
                            {"tol", 1e-10},
                            {"leaf_size", 0.05},
                            {"max_r", 32.0},
                            {"real_r_min", 0.5},
                            {"real_r_max", 8.0},
                            {"real_half_angle", 0.3}});
  if (command == "counterexample")
    return with_integrator({{"b0", kCriticalB0},
                            {"zeta0_re", nullptr},
                            {"zeta0_im", nullptr},
                            {"lambdas", {100.0, 1000.0, 10000.0}},
                            {"dy_max", 0.0025},
                            {"y_range", 25.0},
                            {"x1_max", 2.0},
                            {"margin", 0.02},
                            {"strict_margin", false},
                            {"growth_x0", {-1.0, -0.5, -0.25}},
                            {"moment_tail", 1e-10},
                            {"decay_s_lo", 20.0},
                            {"decay_s_hi", 40.0},
                            {"decay_power", 10},
                            {"gevrey_s", 2.5},
                            {"gevrey_c", 1.0},
                            {"witness_lambdas", {1e2, 1e4, 1e8, 1e16, 1e24, 1e32}},
                            {"csv_rows", 2000}});
  if (command == "energy-check")
    return {{"s", {1.0, 1.5, 2.0}},
            {"xi_n", {10.0, 100.0, 1000.0}},
            {"b0", kCriticalB0},
            {"seed", 20240601},
            {"n_samples", 20},
            {"C_multiplier", 0.125},
            {"C_full", 0.125},
            {"n0", 2048},
            {"n1", 512},
            {"L_scale", 6.0},
            {"eta_min", 1.0},
            {"eta_max", 256.0},
            {"eta_points", 25},
            {"tol_decomposition", 1e-6}};
  if (command == "roots")
    return {{"x", 0.6},
            {"xi", 0.8},
            {"b", 0.1},
            {"eps", {1e-2, 1e-4, 1e-6}},
            {"phi", {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi, 3.0 * kPi / 2.0}},
            {"disc_samples", 100000},
            {"seed", 1}};
  if (command == "cones")
    return {{"b0", kCriticalB0}, {"n_samples", 10000}, {"seed", 1}, {"n", 3}, {"segment_points", 64}};
  throw Error(ErrorCode::kPreconditionViolation, "unknown command '" + command + "'");
}

Report run_report(const std::string& command, const json& config) {
  json resolved = default_config(command);
  if (!config.is_null() && !config.is_object())
    throw Error(ErrorCode::kPreconditionViolation, "config must be a JSON object");
  if (config.is_object())
    for (const auto& [key, value] : config.items()) {
      if (!resolved.contains(key)) throw Error(ErrorCode::kPreconditionViolation, "unknown config key '" + key + "'");
      resolved[key] = value;
    }
  for (const auto& [key, value] : resolved.items())
    if (value.is_null()) throw Error(ErrorCode::kPreconditionViolation, "config key '" + key + "' is required");

  Report r;
  try {
    if (command == "sibuya-eval") r = sibuya_eval(resolved);
    else if (command == "stokes-table") r = stokes_table(resolved);
    else if (command == "verify-identities") r = verify_identities_report(resolved);
    else if (command == "zero-find") r = zero_find(resolved);
    else if (command == "counterexample") r = counterexample_report(resolved);
    else if (command == "energy-check") r = energy_check(resolved);
    else if (command == "roots") r = roots_report(resolved);
    else r = cones_report(resolved);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kPreconditionViolation, std::string("bad config value: ") + e.what());
  }
  json out = {{"schema", 1}, {"command", command}, {"config", resolved}, {"certified", r.certified}};
  out["result"] = std::move(r.json["result"]);
  out["checks"] = std::move(r.json["checks"]);
  r.json = std::move(out);
  return r;
}

}  // namespace stokeskit
