#pragma once

#include <optional>
#include <vector>

#include "complexpath.hpp"

namespace stokeskit {

// E(y; zeta) = (2/5) y^{5/2} + zeta y^{1/2} on the principal branch.
// With forbid_cut, points on the negative real axis are rejected.
cplx exponent_E(cplx y, cplx zeta, bool forbid_cut = false);

// B_1..B_n and C_1..C_n of
//   Y  ~ y^{-3/4} (1 + sum B_N y^{-N/2}) e^{-E},
//   Y' ~ y^{3/4} (-1 + sum C_N y^{-N/2}) e^{-E}.
// B_0 = 1 and C_0 = -1 are implicit.
struct AsymptoticCoeffs {
  std::vector<cplx> B;
  std::vector<cplx> C;
};

AsymptoticCoeffs asymptotic_coeffs(cplx zeta, int n_terms);

struct SeedOptions {
  double rho_far = 12.0;
  int min_terms = 8;
  int max_terms = 400;
  double series_tol = 1e-17;  // relative size of the last retained terms
};

struct AsymptoticSeed {
  double rho_far = 0.0;
  double phi = 0.0;
  int n_terms = 0;
  std::vector<cplx> coeffs_B;
  std::vector<cplx> coeffs_C;
  double last_term = 0.0;  // |B_n y^{-n/2}| relative to the partial sum
};

// Truncated asymptotic representation of the canonical solution at y, where
// the number of terms is grown until the trailing terms fall below
// series_tol. Throws SeedInsufficient if that does not happen.
ScaledState asymptotic_state(cplx y, cplx zeta, const SeedOptions& opts, AsymptoticSeed* seed_out = nullptr);

// Y_k(y; zeta) = Y(omega^{-k} y; omega^{-2k} zeta), evaluated by seeding in
// the rotated variable inside S_0 and integrating inward.
class CanonicalSolution {
 public:
  CanonicalSolution(cplx zeta, int k, SeedOptions opts = {});

  cplx zeta() const { return zeta_; }
  int k() const { return k_; }
  cplx rotated_zeta() const { return zeta_rot_; }
  cplx normalization() const { return {1.0, 0.0}; }
  const SeedOptions& options() const { return opts_; }

  // seed_phi overrides the seeding ray angle in the rotated variable
  // (|seed_phi| <= pi/5 keeps the seed in the closure of S_0).
  ScaledState evaluate_scaled(cplx y, const IntegratorConfig& cfg,
                              std::optional<double> seed_phi = std::nullopt) const;
  ODEState evaluate(cplx y, const IntegratorConfig& cfg, std::optional<double> seed_phi = std::nullopt) const;

  // Full trace in the original variable together with the seed that started it.
  SolutionTrace trace(cplx y, const IntegratorConfig& cfg, AsymptoticSeed* seed_out = nullptr,
                      std::optional<double> seed_phi = std::nullopt) const;

  // Integration path in the rotated variable, seed first.
  std::vector<cplx> path_vertices(cplx y_rot, std::optional<double> seed_phi = std::nullopt) const;

 private:
  ScaledState to_original(const ScaledState& rotated, cplx y) const;

  cplx zeta_;
  int k_;
  cplx zeta_rot_;
  SeedOptions opts_;
};

// Turning points of y^3 + zeta y.
std::vector<cplx> turning_points(cplx zeta);

}  // namespace stokeskit
