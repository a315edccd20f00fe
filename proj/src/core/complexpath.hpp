#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace stokeskit {

// q(y) = y^3 + zeta*y + mu
struct QParams {
  cplx zeta{0.0, 0.0};
  cplx mu{0.0, 0.0};

  cplx operator()(cplx y) const { return y * y * y + zeta * y + mu; }
};

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.5;
  double min_step = 1e-10;

  void validate() const;
  IntegratorConfig halved() const;
};

class ComplexPath {
 public:
  explicit ComplexPath(std::vector<cplx> vertices);

  const std::vector<cplx>& vertices() const { return vertices_; }
  cplx front() const { return vertices_.front(); }
  cplx back() const { return vertices_.back(); }
  double length() const;
  ComplexPath reversed() const;

 private:
  std::vector<cplx> vertices_;
};

struct ODEState {
  cplx y;
  cplx w;
  cplx wp;
};

// (w, w') stored as mantissa * 2^exponent so that e^{+-E} growth along long
// paths neither overflows nor underflows.
struct ScaledState {
  cplx y;
  cplx w;
  cplx wp;
  long exponent = 0;

  static ScaledState from(const ODEState& s);
  ODEState value() const;
  ScaledState& normalize();
  // log|w| of the represented value.
  double log_abs_w() const;
};

struct TracePoint {
  double s = 0.0;
  cplx y;
  cplx w;
  cplx wp;
  long exponent = 0;
  double local_error = 0.0;

  ODEState value() const;
  ScaledState scaled() const { return {y, w, wp, exponent}; }
};

struct SolutionTrace {
  std::vector<TracePoint> points;
  double error_estimate = 0.0;  // sum of relative local errors
  int steps = 0;

  ScaledState final_state() const { return points.back().scaled(); }
  std::string to_csv() const;
};

SolutionTrace integrate(const QParams& q, const ScaledState& start, const ComplexPath& path,
                        const IntegratorConfig& cfg);
SolutionTrace integrate(const QParams& q, const ODEState& start, const ComplexPath& path,
                        const IntegratorConfig& cfg);

cplx wronskian(const ODEState& a, const ODEState& b);
// Wronskian of two scaled states, returned as mantissa with exponent.
std::pair<cplx, long> wronskian_scaled(const ScaledState& a, const ScaledState& b);

}  // namespace stokeskit
