#include "stokes.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace stokeskit {

namespace {

cplx ratio(const std::pair<cplx, long>& num, const std::pair<cplx, long>& den) {
  if (std::abs(den.first) == 0.0)
    throw Error(ErrorCode::kDegenerateWronskian, "Wronskian of Y_{k+1}, Y_{k+2} vanishes");
  const cplx m = num.first / den.first;
  const long e = num.second - den.second;
  return {std::ldexp(m.real(), static_cast<int>(e)), std::ldexp(m.imag(), static_cast<int>(e))};
}

void fill_table(const std::array<ScaledState, 5>& Y, std::array<cplx, 5>& C, std::array<cplx, 5>& Ct) {
  for (int k = 0; k < 5; ++k) {
    const auto& a = Y[k];
    const auto& b = Y[(k + 1) % 5];
    const auto& c = Y[(k + 2) % 5];
    const auto den = wronskian_scaled(b, c);
    C[k] = ratio(wronskian_scaled(a, c), den);
    Ct[k] = ratio(wronskian_scaled(a, b), wronskian_scaled(c, b));
  }
}

double radical_inverse(int i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

const cplx kOmega34 = std::polar(1.0, 3.0 * kPi / 10.0);

}  // namespace

std::array<ScaledState, 5> canonical_family(cplx zeta, cplx y, const IntegratorConfig& cfg, const SeedOptions& seed) {
  std::array<ScaledState, 5> out;
  for (int k = 0; k < 5; ++k) out[k] = CanonicalSolution(zeta, k, seed).evaluate_scaled(y, cfg);
  return out;
}

StokesTable stokes_coefficients(cplx zeta, const StokesOptions& opts) {
  StokesTable t;
  t.zeta = zeta;
  t.y_eval = opts.y_eval;
  fill_table(canonical_family(zeta, opts.y_eval, opts.integrator, opts.seed), t.C, t.C_tilde);

  std::array<cplx, 5> C2, Ct2;
  fill_table(canonical_family(zeta, opts.y_check, opts.integrator, opts.seed), C2, Ct2);
  for (int k = 0; k < 5; ++k) {
    t.err = std::max(t.err, std::abs(t.C[k] - C2[k]));
    t.err = std::max(t.err, std::abs(t.C_tilde[k] - Ct2[k]));
  }
  return t;
}

cplx stokes_C0(cplx zeta, const StokesOptions& opts) {
  std::array<ScaledState, 3> Y;
  for (int k = 0; k < 3; ++k)
    Y[k] = CanonicalSolution(zeta, k, opts.seed).evaluate_scaled(opts.y_eval, opts.integrator);
  return ratio(wronskian_scaled(Y[0], Y[2]), wronskian_scaled(Y[1], Y[2]));
}

double cyclic_residual(cplx c0, cplx c0_omega, cplx c0_omega4) {
  return std::abs(c0 + omega_pow(2) * c0_omega * c0_omega4 - omega_pow(3));
}

double verify_cyclic_identity(cplx zeta, const StokesOptions& opts) {
  return cyclic_residual(stokes_C0(zeta, opts), stokes_C0(kOmega * zeta, opts),
                         stokes_C0(omega_pow(4) * zeta, opts));
}

double matrix_product_residual(const std::array<cplx, 5>& C) {
  // P = S_4 S_3 S_2 S_1 S_0, accumulated from the right.
  cplx p00(1.0), p01(0.0), p10(0.0), p11(1.0);
  const cplx ct = -kOmega;
  for (int k = 0; k < 5; ++k) {
    // S_k * P
    const cplx n00 = C[k] * p00 + p10;
    const cplx n01 = C[k] * p01 + p11;
    const cplx n10 = ct * p00;
    const cplx n11 = ct * p01;
    p00 = n00;
    p01 = n01;
    p10 = n10;
    p11 = n11;
  }
  return std::max({std::abs(p00 - 1.0), std::abs(p01), std::abs(p10), std::abs(p11 - 1.0)});
}

double verify_matrix_product(cplx zeta, const StokesOptions& opts) {
  return matrix_product_residual(stokes_coefficients(zeta, opts).C);
}

double verify_conjugation_symmetry(cplx zeta, const StokesOptions& opts) {
  const cplx c4 = stokes_coefficients(zeta, opts).C[4];
  const cplx c4_bar = stokes_coefficients(std::conj(zeta), opts).C[4];
  return std::abs(kOmega34 * c4_bar + std::conj(kOmega34 * c4));
}

double tilde_residual(const StokesTable& t) {
  double r = 0.0;
  for (const cplx c : t.C_tilde) r = std::max(r, std::abs(c + kOmega));
  return r;
}

double rotation_residual(const StokesTable& t, const StokesOptions& opts) {
  double r = 0.0;
  for (int k = 1; k < 5; ++k) r = std::max(r, std::abs(t.C[k] - stokes_C0(omega_pow(-2 * k) * t.zeta, opts)));
  return r;
}

std::vector<cplx> halton_disk(int n, double radius) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double r = radius * std::sqrt(radical_inverse(i, 2));
    const double a = 2.0 * kPi * radical_inverse(i, 3);
    out.push_back(std::polar(r, a));
  }
  return out;
}

cplx dC0(cplx zeta, double h, const StokesOptions& opts) {
  return (stokes_C0(zeta + h, opts) - stokes_C0(zeta - h, opts)) / (2.0 * h);
}

IdentityReport verify_identities(int grid, double radius, int n_halton, const StokesOptions& opts) {
  if (grid < 1 || !(radius > 0.0) || n_halton < 0)
    throw Error(ErrorCode::kPreconditionViolation, "grid >= 1, radius > 0 and n_halton >= 0 are required");
  IdentityReport rep;
  rep.grid = grid;
  rep.radius = radius;

  std::vector<cplx> zetas;
  for (int i = 1; i <= grid; ++i)
    for (int j = 0; j < grid; ++j) zetas.push_back(std::polar(radius * i / grid, 2.0 * kPi * j / grid));
  for (const cplx z : halton_disk(n_halton, radius)) zetas.push_back(z);

  rep.samples.resize(zetas.size());
  parallel_for(zetas.size(), [&](std::size_t i) {
    const cplx z = zetas[i];
    const StokesTable t = stokes_coefficients(z, opts);
    const StokesTable tb = stokes_coefficients(std::conj(z), opts);
    IdentitySample s;
    s.zeta = z;
    s.cyclic = cyclic_residual(t.C[0], stokes_C0(kOmega * z, opts), stokes_C0(omega_pow(4) * z, opts));
    s.matrix = matrix_product_residual(t.C);
    s.symmetry = std::abs(kOmega34 * tb.C[4] + std::conj(kOmega34 * t.C[4]));
    s.tilde = tilde_residual(t);
    double rot = 0.0;
    for (int k = 1; k < 5; ++k) rot = std::max(rot, std::abs(t.C[k] - stokes_C0(omega_pow(-2 * k) * z, opts)));
    s.rotation = rot;
    s.err = std::max(t.err, tb.err);
    for (const cplx c : t.C) s.max_abs_C = std::max(s.max_abs_C, std::abs(c));
    rep.samples[i] = s;
  });

  const StokesTable t0 = stokes_coefficients(0.0, opts);
  for (int k = 0; k < 5; ++k) {
    rep.at_zero_C = std::max(rep.at_zero_C, std::abs(t0.C[k] - (1.0 + kOmega)));
    rep.at_zero_tilde = std::max(rep.at_zero_tilde, std::abs(t0.C_tilde[k] + kOmega));
  }
  rep.dC0_at_zero = dC0(0.0, 1e-5, opts);

  rep.min_max_abs_C = rep.samples.empty() ? 0.0 : rep.samples.front().max_abs_C;
  for (const auto& s : rep.samples) {
    rep.max_cyclic = std::max(rep.max_cyclic, s.cyclic);
    rep.max_matrix = std::max(rep.max_matrix, s.matrix);
    rep.max_symmetry = std::max(rep.max_symmetry, s.symmetry);
    rep.max_tilde = std::max(rep.max_tilde, s.tilde);
    rep.max_rotation = std::max(rep.max_rotation, s.rotation);
    rep.max_err = std::max(rep.max_err, s.err);
    rep.min_max_abs_C = std::min(rep.min_max_abs_C, s.max_abs_C);
  }
  return rep;
}

}  // namespace stokeskit
