#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace stokeskit {

// p = tau^3 - 3 (x^2 + xi^2) tau - 2 b x^3
double cubic_symbol(double tau, double x, double xi, double b);

// 108 ((x^2 + xi^2)^3 - b^2 x^6)
double discriminant(double x, double xi, double b);

struct CubicRoots {
  std::array<double, 3> roots{};  // descending
  int vanishing = 0;              // index into roots of the branch 2 r cos((phi + 4 pi) / 3)
  double phi = 0.0;               // arccos(b x^3 / (x^2 + xi^2)^{3/2})

  double vanishing_root() const { return roots[vanishing]; }
};

// Roots 2 (x^2 + xi^2)^{1/2} cos((phi + 2 pi m) / 3), m = 0, 1, 2.
CubicRoots cubic_roots(double x, double xi, double b);

// Relative residuals of sum = 0, pairwise sum = -3 (x^2 + xi^2), product = 2 b x^3.
std::array<double, 3> vieta_residuals(const CubicRoots& r, double x, double xi, double b);

// Smallest Delta / (x^2 + xi^2)^3 over seeded uniform samples in [-1, 1]^2.
double min_normalized_discriminant(double b, int samples, std::uint64_t seed);

struct DirectionalLimit {
  double eps;
  double phi;
  double ratio;        // tau(eps cos phi, eps sin phi) / eps
  double first_order;  // -(2/3) b cos^3 phi
};

struct NonsmoothnessWitness {
  double b = 0.0;
  std::vector<DirectionalLimit> table;
  double max_first_order_gap = 0.0;  // max |ratio - first_order|
  // max over sampled phi of |f(phi) - f(0) cos phi - f(pi/2) sin phi|; zero for a
  // direction-linear limit.
  double nonlinearity = 0.0;
  double threshold = 0.0;  // 0.1 |b|

  bool certified() const { return nonlinearity > threshold; }
};

NonsmoothnessWitness nonsmoothness_witness(double b, const std::vector<double>& eps_list,
                                           const std::vector<double>& phi_list);

// sum_{k < n_terms} (2k)! u^{2k+1} / (2^{2k} (k!)^2 (2k+1)), which is arcsin u.
double g_series(double u, int n_terms);
// Smallest n_terms whose tail bound t_n / (1 - u^2) is below tol.
int g_series_terms(double u, double tol);

// Tangent vectors at z = (0; 0, ..., 0, 1) in T*R^{n+1}: components
// (dx_0, ..., dx_n; dxi_0, ..., dxi_n).
using TangentVector = std::vector<double>;

// delta xi0^3 - (delta xi1^2 + delta x1^2) delta xi0 - b0 delta x1^3
double localization(const TangentVector& v, double b0, int n);
// <dx, deta> - <dxi, dy>, so that sigma(dv, Y) = -deta_0 for dv = (-1, 0, ..., 0; 0).
double sigma(const TangentVector& X, const TangentVector& Y, int n);
// Largest root of l^3 - (dxi1^2 + dx1^2) l - b0 dx1^3.
double gamma_threshold(const TangentVector& v, double b0, int n);
bool in_gamma_exact(const TangentVector& v, double b0, int n);
// p_z > 0 at segment_points points of the segment from N to v; margin receives
// the smallest p_z / |point|^3 along it.
bool in_gamma_sampled(const TangentVector& v, double b0, int n, int segment_points, double* margin = nullptr);

struct ConeOptions {
  int n = 3;
  int n_samples = 10000;
  std::uint64_t seed = 1;
  int segment_points = 64;
  int chunks = 64;
};

struct HamiltonCheck {
  std::string name;
  bool in_closure;
};

struct ConeReport {
  double b0 = 0.0;
  ConeOptions options;
  int gamma_samples = 0;
  int attempts = 0;
  int oracle_disagreements = 0;
  double min_margin = 0.0;
  TangentVector delta_v;
  double delta_v_max_sigma = 0.0;
  bool delta_v_tangent = false;
  TangentVector off_tangent;
  double off_tangent_max_sigma = 0.0;
  std::vector<HamiltonCheck> hamilton;

  bool delta_v_certified() const { return delta_v_max_sigma <= 0.0 && delta_v_tangent; }
  bool hamilton_not_contained() const;
  bool certified() const { return delta_v_certified() && off_tangent_max_sigma <= 0.0 && hamilton_not_contained(); }
};

ConeReport cone_analysis(double b0, const ConeOptions& opts = {});

}  // namespace stokeskit
