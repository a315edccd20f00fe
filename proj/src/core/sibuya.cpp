#include "sibuya.hpp"

#include <algorithm>

namespace stokeskit {

namespace {

constexpr double kSectorHalfWidth = kPi / 5.0;
constexpr double kInnerRadius = 1.0;
constexpr double kTurningClearance = 0.2;
constexpr double kDetourOffset = 0.35;
constexpr double kMaxSeedRadius = 400.0;

// Recurrence obtained by substituting y^{-3/4} e^{-E} sum B_N y^{-N/2} into
// w'' = (y^3 + zeta y) w and collecting powers of y^{-1/2}.
cplx next_B(const std::vector<cplx>& B, int n, cplx zeta) {
  auto at = [&](int i) { return i >= 0 ? B[static_cast<std::size_t>(i)] : cplx(0.0); };
  const double dn = n;
  const cplx s = 0.25 * zeta * zeta * at(n - 3) + 0.5 * (dn - 2.0) * zeta * at(n - 4) +
                 ((2.0 * dn - 7.0) * (2.0 * dn - 3.0) / 16.0) * at(n - 5);
  return -s / dn;
}

cplx C_from_B(const std::vector<cplx>& B, int n, cplx zeta) {
  auto at = [&](int i) { return i >= 0 ? B[static_cast<std::size_t>(i)] : cplx(0.0); };
  return -at(n) - 0.5 * zeta * at(n - 4) - ((2.0 * n - 7.0) / 4.0) * at(n - 5);
}

std::vector<cplx> add_detours(std::vector<cplx> v, const std::vector<cplx>& tps) {
  for (int pass = 0; pass < 4; ++pass) {
    bool changed = false;
    std::vector<cplx> out{v.front()};
    for (std::size_t i = 1; i < v.size(); ++i) {
      const cplx p = v[i - 1];
      const cplx q = v[i];
      const cplx d = q - p;
      const double len2 = std::norm(d);
      for (const cplx tp : tps) {
        const double t = std::clamp(std::real((tp - p) * std::conj(d)) / len2, 0.0, 1.0);
        const cplx closest = p + t * d;
        const double dist = std::abs(tp - closest);
        if (dist < kTurningClearance && std::abs(tp - p) > kTurningClearance &&
            std::abs(tp - q) > kTurningClearance) {
          const cplx n = dist > 1e-12 ? (closest - tp) / dist : cplx(0.0, 1.0) * d / std::sqrt(len2);
          out.push_back(tp + kDetourOffset * n);
          changed = true;
          break;
        }
      }
      out.push_back(q);
    }
    v = std::move(out);
    if (!changed) break;
  }
  return v;
}

}  // namespace

cplx exponent_E(cplx y, cplx zeta, bool forbid_cut) {
  if (y == cplx(0.0))
    throw Error(ErrorCode::kPreconditionViolation, "E(y; zeta) is evaluated at y = 0");
  if (forbid_cut && y.imag() == 0.0 && y.real() < 0.0)
    throw Error(ErrorCode::kBranchCutViolation, "y lies on the negative real axis");
  const cplx r = std::sqrt(y);
  return 0.4 * y * y * r + zeta * r;
}

AsymptoticCoeffs asymptotic_coeffs(cplx zeta, int n_terms) {
  if (n_terms < 0) throw Error(ErrorCode::kPreconditionViolation, "n_terms must be non-negative");
  std::vector<cplx> B{cplx(1.0)};
  AsymptoticCoeffs out;
  for (int n = 1; n <= n_terms; ++n) {
    B.push_back(next_B(B, n, zeta));
    out.B.push_back(B.back());
    out.C.push_back(C_from_B(B, n, zeta));
  }
  return out;
}

ScaledState asymptotic_state(cplx y, cplx zeta, const SeedOptions& opts, AsymptoticSeed* seed_out) {
  if (std::abs(std::arg(y)) >= 3.0 * kPi / 5.0)
    throw Error(ErrorCode::kPreconditionViolation, "asymptotic seed outside |arg y| < 3 pi / 5");
  const cplx z = 1.0 / std::sqrt(y);  // y^{-1/2}
  std::vector<cplx> B{cplx(1.0)};
  std::vector<cplx> Cs{cplx(-1.0)};
  cplx sum_B(1.0);
  cplx sum_C(-1.0);
  cplx zn(1.0);
  double max_term = 1.0;
  std::vector<double> tail;
  int n = 1;
  bool converged = false;
  for (; n <= opts.max_terms; ++n) {
    B.push_back(next_B(B, n, zeta));
    const cplx c = C_from_B(B, n, zeta);
    Cs.push_back(c);
    zn *= z;
    const cplx tb = B.back() * zn;
    const cplx tc = c * zn;
    sum_B += tb;
    sum_C += tc;
    const double mag = std::max(std::abs(tb), std::abs(tc));
    max_term = std::max(max_term, mag);
    tail.push_back(mag);
    if (n >= opts.min_terms && tail.size() >= 5) {
      const double scale = std::min(std::abs(sum_B), std::abs(sum_C));
      const bool small = std::all_of(tail.end() - 5, tail.end(),
                                     [&](double t) { return t <= opts.series_tol * scale; });
      if (small) {
        converged = true;
        break;
      }
    }
  }
  const double scale = std::min(std::abs(sum_B), std::abs(sum_C));
  if (!converged || max_term > 10.0 * scale)
    throw Error(ErrorCode::kSeedInsufficient, "asymptotic series not resolved at |y| = " + std::to_string(std::abs(y)));

  const cplx log_lead = -exponent_E(y, zeta) - 0.75 * std::log(y);
  const double ln2 = std::log(2.0);
  const long e = static_cast<long>(std::floor(log_lead.real() / ln2));
  const cplx mant = std::exp(log_lead - static_cast<double>(e) * ln2);
  ScaledState st{y, mant * sum_B, mant * (y * std::sqrt(y)) * sum_C, e};
  st.normalize();
  if (seed_out) {
    seed_out->rho_far = std::abs(y);
    seed_out->phi = std::arg(y);
    seed_out->n_terms = n;
    seed_out->coeffs_B.assign(B.begin() + 1, B.end());
    seed_out->coeffs_C.assign(Cs.begin() + 1, Cs.end());
    seed_out->last_term = tail.back() / scale;
  }
  return st;
}

std::vector<cplx> turning_points(cplx zeta) {
  const cplx r = std::sqrt(-zeta);
  return {cplx(0.0), r, -r};
}

CanonicalSolution::CanonicalSolution(cplx zeta, int k, SeedOptions opts)
    : zeta_(zeta), k_(((k % 5) + 5) % 5), zeta_rot_(omega_pow(-2 * k) * zeta), opts_(opts) {
  if (!is_finite(zeta)) throw Error(ErrorCode::kPreconditionViolation, "zeta is not finite");
}

std::vector<cplx> CanonicalSolution::path_vertices(cplx t, std::optional<double> seed_phi) const {
  const double r = std::abs(t);
  const double a = std::arg(t);
  double phi = 0.0;
  if (seed_phi) {
    phi = *seed_phi;
  } else if (r >= kInnerRadius) {
    phi = std::clamp(a, -kSectorHalfWidth, kSectorHalfWidth);
  }
  if (std::abs(phi) > kSectorHalfWidth + 1e-12)
    throw Error(ErrorCode::kPreconditionViolation, "seed ray must lie in the closure of S_0");

  auto resolves = [&](double rho) {
    try {
      asymptotic_state(std::polar(rho, phi), zeta_rot_, opts_);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  const bool on_ray = r >= kInnerRadius && std::abs(a - phi) < 1e-15;
  double rho = on_ray ? std::max(opts_.rho_far, r) : opts_.rho_far;
  while (!resolves(rho)) {
    rho *= 1.25;
    if (rho > kMaxSeedRadius)
      throw Error(ErrorCode::kSeedInsufficient, "no seeding radius resolves the asymptotic series");
  }

  std::vector<cplx> v;
  if (on_ray) {
    if (rho <= r) return {t};
    v = {std::polar(rho, phi), t};
  } else {
    v = {std::polar(rho, phi)};
    const cplx knee = std::polar(kInnerRadius, phi);
    if (knee != t) v.push_back(knee);
    v.push_back(t);
  }
  return add_detours(std::move(v), turning_points(zeta_rot_));
}

ScaledState CanonicalSolution::to_original(const ScaledState& rotated, cplx y) const {
  return {y, rotated.w, omega_pow(-k_) * rotated.wp, rotated.exponent};
}

ScaledState CanonicalSolution::evaluate_scaled(cplx y, const IntegratorConfig& cfg,
                                               std::optional<double> seed_phi) const {
  const cplx t = omega_pow(-k_) * y;
  const auto verts = path_vertices(t, seed_phi);
  const ScaledState seed = asymptotic_state(verts.front(), zeta_rot_, opts_);
  if (verts.size() == 1) return to_original(seed, y);
  const SolutionTrace tr = integrate(QParams{zeta_rot_, 0.0}, seed, ComplexPath(verts), cfg);
  return to_original(tr.final_state(), y);
}

ODEState CanonicalSolution::evaluate(cplx y, const IntegratorConfig& cfg, std::optional<double> seed_phi) const {
  return evaluate_scaled(y, cfg, seed_phi).value();
}

SolutionTrace CanonicalSolution::trace(cplx y, const IntegratorConfig& cfg, AsymptoticSeed* seed_out,
                                       std::optional<double> seed_phi) const {
  const cplx t = omega_pow(-k_) * y;
  const auto verts = path_vertices(t, seed_phi);
  const ScaledState seed = asymptotic_state(verts.front(), zeta_rot_, opts_, seed_out);
  SolutionTrace tr;
  if (verts.size() == 1) {
    tr.points.push_back({0.0, seed.y, seed.w, seed.wp, seed.exponent, 0.0});
  } else {
    tr = integrate(QParams{zeta_rot_, 0.0}, seed, ComplexPath(verts), cfg);
  }
  const cplx rot = omega_pow(k_);
  const cplx drot = omega_pow(-k_);
  for (auto& p : tr.points) {
    p.y = rot * p.y;
    p.wp *= drot;
  }
  return tr;
}

}  // namespace stokeskit
