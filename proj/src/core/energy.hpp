#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "common.hpp"

namespace stokeskit {

// Samples of u(x0, x1) on [0, a] x [-L, L]. Rows run over x0 = i h0 for
// i = -kGhost .. n0 + kGhost so that x0 stencils reach past both ends.
struct TestFunction {
  static constexpr int kGhost = 3;

  int n0 = 0;
  int n1 = 0;
  double a = 1.0;
  double L = 1.0;
  double h0 = 0.0;
  double h1 = 0.0;
  std::vector<cplx> values;

  double x0(int i) const { return i * h0; }
  double x1(int j) const { return -L + j * h1; }
  cplx& at(int i, int j) { return values[static_cast<std::size_t>(i + kGhost) * (n1 + 1) + j]; }
  cplx at(int i, int j) const { return values[static_cast<std::size_t>(i + kGhost) * (n1 + 1) + j]; }

  static TestFunction sample(const std::function<cplx(double, double)>& f, double a, double L, int n0, int n1);
  // Zero on the x1 edges and for x0 >= a.
  void validate(double tol = 1e-12) const;
};

struct WeightParams {
  double tau = 1.0;
  double s = 2.0;
  double xi_n = 10.0;
  double a = 1.0;

  double bracket() const;  // <xi_n> = sqrt(1 + xi_n^2)
  double eta() const;      // tau <xi_n>^{1/s}
  void validate() const;
};

struct EnergyGrid {
  double a = 1.0;
  double L_scale = 6.0;  // L = L_scale / sqrt|xi_n|
  int n0 = 2048;
  int n1 = 512;
};

// Sum of n_terms separable products phi(x0) psi(x1): C-infinity bumps in x0
// that straddle x0 = 0 and end before 0.9 a, Gaussian wave packets of the
// oscillator length in x1 cut off smoothly at +-L.
TestFunction random_bump(std::uint64_t seed, int index, double xi_n, const EnergyGrid& grid = {}, int n_terms = 3);
std::vector<TestFunction> random_family(std::uint64_t seed, int count, double xi_n, const EnergyGrid& grid = {});

// M u = D0^2 u - theta (D1^2 + x1^2 xi^2) u, D = -i d.
TestFunction apply_M(const TestFunction& u, double theta, double xi_n);
// <u, v> over the grid rows 0..n0 (Simpson in both directions).
cplx inner(const TestFunction& u, const TestFunction& v);
// <Omega u, u> / ||u||^2 on the row x0 = i h0.
double oscillator_quotient(const TestFunction& u, int row, double xi_n);

// x1-integrated quantities on each row x0 = i h0, i = 0..n0.
struct RowNorms {
  double xi_n = 0.0;
  double b0 = 0.0;
  double theta = 1.0 / 3.0;
  double h0 = 0.0;
  std::vector<double> u, d0, d1, x, d00, d11, xx;  // ||u||^2, ||D0 u||^2, ||D1 u||^2, ||x1 xi u||^2, ...
  std::vector<double> Mu, Pu, d1d0, x_d1, omega, square;
  std::vector<double> cross_b0;   // 2 b0 Re<x1^3 xi^3 u, D0 u>
  std::vector<cplx> omega_d0;     // <Omega D0 u, D0 u>
  std::vector<double> remainder;  // Re<x1^2 u, D1 u>

  std::array<double, 3> E(std::size_t i) const;
};

RowNorms row_norms(const TestFunction& u, double xi_n, double b0, double theta = 1.0 / 3.0);

struct EnergyDecomposition {
  cplx E13;
  double E151 = 0.0;
  double completed_square = 0.0;  // ||sqrt(2/3) x1 xi D0 u + b0 sqrt(3/2) x1^2 xi^2 u||^2
  double negative_term = 0.0;     // -(4/9) xi^2 ||u||^2
  double relative_gap = 0.0;      // |E13 - E151| / |E13|
};

// Both forms of the energy on the slice x0 = row h0.
EnergyDecomposition energy_decomposition(const RowNorms& r, std::size_t row = 0);
EnergyDecomposition energy_decomposition(const TestFunction& u, double b0, double xi_n, int row = 0);

struct TauSweep {
  double eta_min = 1.0;
  double eta_max = 256.0;
  int points = 25;

  std::vector<double> taus(double s, double xi_n) const;
};

struct NamedTerm {
  std::string name;
  double value;
};

struct EnergyReport {
  double s = 0.0;
  double xi_n = 0.0;
  double C = 0.0;
  std::array<double, 3> E{};  // E_j(u(0))
  EnergyDecomposition decomposition;
  std::vector<double> tau, lhs, rhs;
  double tau_star = 0.0;
  bool monotone = true;
  std::vector<NamedTerm> terms;  // signed pieces of the weighted energy identity at tau_star
};

// Multiplier inequality: int W ||Mu||^2 against C W(0)(eta E1 + eta^3 E0) + C eta^2 int W E1 + C eta^4 int W E0.
EnergyReport verify_multiplier_estimate(const RowNorms& r, double s, const TauSweep& sweep = {}, double C = 0.125);
EnergyReport verify_multiplier_estimate(const TestFunction& u, const WeightParams& w, const TauSweep& sweep = {},
                                        double C = 0.125);

enum class TraceExponent { kPrinted, kTauCubed };

// int W ||Pu||^2 >= C W(0) sum_j tau^{4 - 3j/2} <xi>^{(5-2j)/s} E_j(u(0))
//                 + C sum_j tau^{6-2j} int W <xi>^{(6-2j)/s} E_j.
// kTauCubed replaces tau^4 by tau^3 in the j = 0 trace term.
EnergyReport verify_full_estimate(const RowNorms& r, double s, const TauSweep& sweep = {}, double C = 0.125,
                                  TraceExponent trace = TraceExponent::kPrinted);
EnergyReport verify_full_estimate(const TestFunction& u, const WeightParams& w, double b0, const TauSweep& sweep = {},
                                  double C = 0.125, TraceExponent trace = TraceExponent::kPrinted);

struct ExponentCheck {
  double s;
  double lower;   // 1 + 2/s
  double middle;  // 2
  double upper;   // 4 - 4/s
  bool holds() const { return lower >= middle && middle >= upper; }
  std::string which_fails() const;
};

ExponentCheck exponent_check(double s);

// <xi>^4 E0(u) and E0(<xi>^2 u) on the row x0 = 0.
std::pair<double, double> bracket_identity(const TestFunction& u, double xi_n);

}  // namespace stokeskit
