#pragma once

#include <functional>
#include <vector>

#include "stokes.hpp"

namespace stokeskit {

// Annular sector {r_min <= |z| <= r_max, arg_min <= arg z <= arg_max}. The
// angles are continuous parameters, so a sector may straddle the negative
// real axis (e.g. [pi, 19 pi / 15]) or make a full turn.
struct SectorContour {
  double r_min = 0.5;
  double r_max = 8.0;
  double arg_min = kPi;
  double arg_max = 19.0 * kPi / 15.0;
  int n_samples = 64;

  void validate() const;
  bool contains(cplx z) const;
  double diameter() const;
};

struct WindingResult {
  int winding = 0;
  double total_phase = 0.0;
  double min_abs = 0.0;
  double min_distance = 0.0;  // distance estimate at samples with |f| below the guard
  int samples = 0;
};

using AnalyticFn = std::function<cplx(cplx)>;

// Argument-principle count for f around the sector boundary, with adaptive
// refinement wherever consecutive samples differ in phase by more than pi/2.
// Throws ZeroOnContour when a sample has |f| < zero_guard and lies within
// zero_guard of a zero by the local |f / f'| estimate.
WindingResult winding_number(const AnalyticFn& f, const SectorContour& c, double zero_guard = 1e-3,
                             int max_samples = 20000);
WindingResult winding_number(const SectorContour& c, const StokesOptions& opts = {});

struct ZeroCertificate {
  cplx zeta0;
  double residual = 0.0;
  int winding = 0;
  SectorContour contour;  // the (possibly expanded) contour that was certified
  int newton_iters = 0;
  SectorContour leaf;     // subsector handed to Newton
};

struct ZeroOptions {
  double tol = 1e-10;
  double leaf_size = 0.05;
  int max_newton = 40;
  double max_r = 32.0;
};

ZeroCertificate find_zero(const AnalyticFn& f, SectorContour c, const ZeroOptions& zo = {});
ZeroCertificate find_zero(const SectorContour& c, const ZeroOptions& zo = {}, const StokesOptions& opts = {});

// arg z taken in [lo, lo + 2 pi).
double arg_in(cplx z, double lo);

}  // namespace stokeskit
