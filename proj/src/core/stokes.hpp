#pragma once

#include <array>
#include <vector>

#include "sibuya.hpp"

namespace stokeskit {

struct StokesOptions {
  IntegratorConfig integrator;
  SeedOptions seed;
  cplx y_eval{0.0, 0.0};
  cplx y_check{1.0, 0.0};  // second point for the Wronskian-constancy error
};

struct StokesTable {
  cplx zeta;
  cplx y_eval;
  std::array<cplx, 5> C{};
  std::array<cplx, 5> C_tilde{};
  double err = 0.0;
};

// Y_k(y; zeta), k = 0..4, all at one point.
std::array<ScaledState, 5> canonical_family(cplx zeta, cplx y, const IntegratorConfig& cfg, const SeedOptions& seed);

StokesTable stokes_coefficients(cplx zeta, const StokesOptions& opts = {});

// C_0 alone, from Y_0, Y_1, Y_2 at y_eval.
cplx stokes_C0(cplx zeta, const StokesOptions& opts = {});

// |C_0(z) + omega^2 C_0(omega z) C_0(omega^4 z) - omega^3| with the rotated
// arguments evaluated independently.
double verify_cyclic_identity(cplx zeta, const StokesOptions& opts = {});
double cyclic_residual(cplx c0, cplx c0_omega, cplx c0_omega4);

// max |S_4 S_3 S_2 S_1 S_0 - I| with S_k = [[C_k, 1], [-omega, 0]].
double verify_matrix_product(cplx zeta, const StokesOptions& opts = {});
double matrix_product_residual(const std::array<cplx, 5>& C);

// |omega^{3/4} C_4(conj z) + conj(omega^{3/4} C_4(z))|.
double verify_conjugation_symmetry(cplx zeta, const StokesOptions& opts = {});

// max_k |C~_k + omega|.
double tilde_residual(const StokesTable& t);
// max_k |C_k(z) - C_0(omega^{-2k} z)|.
double rotation_residual(const StokesTable& t, const StokesOptions& opts = {});

struct IdentitySample {
  cplx zeta;
  double cyclic = 0.0;
  double matrix = 0.0;
  double symmetry = 0.0;
  double tilde = 0.0;
  double rotation = 0.0;
  double err = 0.0;
  double max_abs_C = 0.0;
};

struct IdentityReport {
  int grid = 0;
  double radius = 0.0;
  std::vector<IdentitySample> samples;
  double at_zero_C = 0.0;      // max_k |C_k(0) - (1 + omega)|
  double at_zero_tilde = 0.0;  // max_k |C~_k(0) + omega|
  double max_cyclic = 0.0;
  double max_matrix = 0.0;
  double max_symmetry = 0.0;
  double max_tilde = 0.0;
  double max_rotation = 0.0;
  double max_err = 0.0;
  double min_max_abs_C = 0.0;
  cplx dC0_at_zero;
};

// Polar grid: radii R i / grid (i = 1..grid), angles 2 pi j / grid, plus the
// first n_halton points of the 2-3 Halton sequence mapped into |zeta| <= R.
IdentityReport verify_identities(int grid, double radius, int n_halton = 20, const StokesOptions& opts = {});

// Points of the 2-3 Halton sequence mapped uniformly into the disk |z| <= radius.
std::vector<cplx> halton_disk(int n, double radius);

// Central-difference estimate of dC_0/dzeta.
cplx dC0(cplx zeta, double h, const StokesOptions& opts = {});

}  // namespace stokeskit
