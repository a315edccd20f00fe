#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Taylor series at 0 of w'' = (y^3 + zeta y + mu) w with w(0) = w0, w'(0) = w1.
// Returns {w(y), w'(y)}.
inline std::pair<cplx, cplx> power_series(cplx y, cplx zeta, cplx mu, cplx w0, cplx w1, int terms = 400) {
  std::vector<cplx> a(static_cast<std::size_t>(terms), 0.0);
  a[0] = w0;
  a[1] = w1;
  for (int n = 0; n + 2 < terms; ++n) {
    cplx rhs = mu * a[n];
    if (n >= 1) rhs += zeta * a[n - 1];
    if (n >= 3) rhs += a[n - 3];
    a[n + 2] = rhs / static_cast<double>((n + 2) * (n + 1));
  }
  cplx w = 0.0, wp = 0.0;
  for (int n = terms - 1; n >= 0; --n) w = w * y + a[n];
  for (int n = terms - 1; n >= 1; --n) wp = wp * y + static_cast<double>(n) * a[n];
  return {w, wp};
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule, which
// converges geometrically for this integrand.
inline double bessel_k(double nu, double x) {
  const double h = 1.0 / 256.0;
  double sum = 0.5 * std::exp(-x);
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double term = std::exp(-x * std::cosh(t) + nu * t) * 0.5 * (1.0 + std::exp(-2.0 * nu * t));
    sum += term;
    if (term < 1e-300 || (term < 1e-18 * sum && x * std::cosh(t) > 50.0)) break;
  }
  return h * sum;
}

// All real roots of a monic cubic by bracketing its critical points and bisecting.
inline std::vector<double> cubic_bisection(double c2, double c1, double c0) {
  auto p = [&](double t) { return ((t + c2) * t + c1) * t + c0; };
  const double bound = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  std::vector<double> knots = {-bound};
  const double disc = c2 * c2 - 3.0 * c1;
  if (disc > 0.0) {
    knots.push_back((-c2 - std::sqrt(disc)) / 3.0);
    knots.push_back((-c2 + std::sqrt(disc)) / 3.0);
  }
  knots.push_back(bound);
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double lo = knots[i], hi = knots[i + 1];
    double plo = p(lo), phi = p(hi);
    if (plo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (plo * phi > 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double pm = p(mid);
      if ((pm < 0.0) == (plo < 0.0)) {
        lo = mid;
        plo = pm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

// Composite Simpson on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
