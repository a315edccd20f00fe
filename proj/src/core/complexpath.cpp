#include "complexpath.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace stokeskit {

namespace {

constexpr int kOrder = 32;          // highest Taylor coefficient used
constexpr int kErrorWindow = 6;     // trailing coefficients that bound the tail
constexpr double kSafety = 0.8;
constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

struct TaylorStep {
  std::array<cplx, kOrder + 1> a{};
};

// Coefficients of w(y0 + z) = sum a_n z^n for w'' = q w, with q(y0 + z)
// = c0 + c1 z + c2 z^2 + z^3.
void taylor_coefficients(const QParams& q, cplx y0, cplx w0, cplx wp0, TaylorStep& out) {
  const cplx c0 = q(y0);
  const cplx c1 = 3.0 * y0 * y0 + q.zeta;
  const cplx c2 = 3.0 * y0;
  auto& a = out.a;
  a[0] = w0;
  a[1] = wp0;
  for (int n = 0; n + 2 <= kOrder; ++n) {
    cplx acc = c0 * a[n];
    if (n >= 1) acc += c1 * a[n - 1];
    if (n >= 2) acc += c2 * a[n - 2];
    if (n >= 3) acc += a[n - 3];
    a[n + 2] = acc / (static_cast<double>(n + 2) * static_cast<double>(n + 1));
  }
}

double state_norm(cplx w, cplx wp, double kappa) { return std::max(std::abs(w), std::abs(wp) / kappa); }

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || !(min_step > 0.0))
    throw Error(ErrorCode::kPreconditionViolation, "integrator tolerances and step bounds must be positive");
  if (min_step > max_step)
    throw Error(ErrorCode::kPreconditionViolation, "min_step must not exceed max_step");
}

IntegratorConfig IntegratorConfig::halved() const {
  IntegratorConfig c = *this;
  c.rel_tol *= 0.5;
  c.abs_tol *= 0.5;
  return c;
}

ComplexPath::ComplexPath(std::vector<cplx> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw Error(ErrorCode::kPreconditionViolation, "a path needs at least two vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i]))
      throw Error(ErrorCode::kPreconditionViolation, "path vertex is not finite");
    if (i > 0 && vertices_[i] == vertices_[i - 1])
      throw Error(ErrorCode::kPreconditionViolation, "consecutive path vertices coincide");
  }
}

double ComplexPath::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) len += std::abs(vertices_[i] - vertices_[i - 1]);
  return len;
}

ComplexPath ComplexPath::reversed() const {
  std::vector<cplx> v(vertices_.rbegin(), vertices_.rend());
  return ComplexPath(std::move(v));
}

ScaledState ScaledState::from(const ODEState& s) {
  ScaledState out{s.y, s.w, s.wp, 0};
  return out.normalize();
}

ODEState ScaledState::value() const {
  const int e = static_cast<int>(std::clamp<long>(exponent, -100000, 100000));
  return {y, cplx(std::ldexp(w.real(), e), std::ldexp(w.imag(), e)),
          cplx(std::ldexp(wp.real(), e), std::ldexp(wp.imag(), e))};
}

ScaledState& ScaledState::normalize() {
  const double m = std::max(std::abs(w), std::abs(wp));
  if (m == 0.0 || !std::isfinite(m)) return *this;
  const int shift = std::ilogb(m);
  if (shift != 0) {
    w = cplx(std::ldexp(w.real(), -shift), std::ldexp(w.imag(), -shift));
    wp = cplx(std::ldexp(wp.real(), -shift), std::ldexp(wp.imag(), -shift));
    exponent += shift;
  }
  return *this;
}

double ScaledState::log_abs_w() const {
  return std::log(std::abs(w)) + static_cast<double>(exponent) * std::log(2.0);
}

ODEState TracePoint::value() const { return scaled().value(); }

std::string SolutionTrace::to_csv() const {
  std::ostringstream os;
  os << "s_arclength,y_re,y_im,w_re,w_im,wp_re,wp_im,local_error\n";
  char line[512];
  for (const auto& p : points) {
    const ODEState v = p.value();
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.6g\n", p.s, v.y.real(),
                  v.y.imag(), v.w.real(), v.w.imag(), v.wp.real(), v.wp.imag(), p.local_error);
    os << line;
  }
  return os.str();
}

SolutionTrace integrate(const QParams& q, const ScaledState& start, const ComplexPath& path,
                        const IntegratorConfig& cfg) {
  cfg.validate();
  const cplx y_start = path.front();
  if (std::abs(start.y - y_start) > 1e-13 * (1.0 + std::abs(y_start)))
    throw Error(ErrorCode::kPreconditionViolation, "start state is not located at the first path vertex");
  if (!is_finite(start.w) || !is_finite(start.wp))
    throw Error(ErrorCode::kNonFiniteState, "start state is not finite");

  ScaledState st = start;
  st.y = y_start;
  st.normalize();

  const double kappa0 = std::max(1.0, std::sqrt(std::abs(q(y_start))));
  const double norm_start = state_norm(st.w, st.wp, kappa0);
  const long exponent_start = st.exponent;

  SolutionTrace trace;
  double s = 0.0;
  trace.points.push_back({s, st.y, st.w, st.wp, st.exponent, 0.0});

  TaylorStep ts;
  const auto& verts = path.vertices();
  for (std::size_t seg = 1; seg < verts.size(); ++seg) {
    const cplx target = verts[seg];
    const cplx seg_vec = target - verts[seg - 1];
    const double seg_len = std::abs(seg_vec);
    const cplx dir = seg_vec / seg_len;
    double done = 0.0;
    while (done < seg_len) {
      const double remaining = seg_len - done;
      taylor_coefficients(q, st.y, st.w, st.wp, ts);
      const double kappa = std::max(1.0, std::sqrt(std::abs(q(st.y))));
      const double norm = state_norm(st.w, st.wp, kappa);
      const double floor =
          cfg.abs_tol * std::ldexp(norm_start, static_cast<int>(std::clamp<long>(exponent_start - st.exponent,
                                                                                  -2000, 2000)));
      const double tol = cfg.rel_tol * norm + floor;

      double h = cfg.max_step;
      if (tol > 0.0) {
        for (int n = kOrder - kErrorWindow + 1; n <= kOrder; ++n) {
          const double an = std::abs(ts.a[n]);
          if (an == 0.0) continue;
          h = std::min(h, std::pow(tol / an, 1.0 / n));
          h = std::min(h, std::pow(tol * kappa / (n * an), 1.0 / (n - 1)));
        }
        h *= kSafety;
      }
      if (h >= remaining) {
        h = remaining;
      } else if (h < cfg.min_step) {
        throw Error(ErrorCode::kStepUnderflow, "required step below min_step near y = (" +
                                                   std::to_string(st.y.real()) + ", " +
                                                   std::to_string(st.y.imag()) + ")");
      }

      const cplx delta = h * dir;
      cplx w = ts.a[kOrder];
      cplx wp = static_cast<double>(kOrder) * ts.a[kOrder];
      for (int n = kOrder - 1; n >= 0; --n) {
        w = w * delta + ts.a[n];
        if (n >= 1) wp = wp * delta + static_cast<double>(n) * ts.a[n];
      }
      double err_w = 0.0;
      double err_wp = 0.0;
      for (int n = kOrder - kErrorWindow + 1; n <= kOrder; ++n) {
        const double an = std::abs(ts.a[n]);
        err_w += an * std::pow(h, n);
        err_wp += n * an * std::pow(h, n - 1);
      }
      const double local = std::max(err_w, err_wp / kappa) / std::max(norm, std::numeric_limits<double>::min());

      done += h;
      if (remaining - h <= 0.0 || done >= seg_len) done = seg_len;
      st.y = (done >= seg_len) ? target : verts[seg - 1] + done * dir;
      st.w = w;
      st.wp = wp;
      if (!is_finite(st.w) || !is_finite(st.wp))
        throw Error(ErrorCode::kNonFiniteState, "solution became non-finite");
      const double mag = std::max(std::abs(st.w), std::abs(st.wp));
      if (mag > kRescaleHigh || (mag < kRescaleLow && mag > 0.0)) st.normalize();

      s += h;
      trace.error_estimate += local;
      ++trace.steps;
      trace.points.push_back({s, st.y, st.w, st.wp, st.exponent, local});
    }
  }
  return trace;
}

SolutionTrace integrate(const QParams& q, const ODEState& start, const ComplexPath& path,
                        const IntegratorConfig& cfg) {
  ScaledState s{start.y, start.w, start.wp, 0};
  return integrate(q, s, path, cfg);
}

cplx wronskian(const ODEState& a, const ODEState& b) {
  if (std::abs(a.y - b.y) > 1e-12 * (1.0 + std::abs(a.y)))
    throw Error(ErrorCode::kMismatchedEvaluationPoint, "Wronskian requires states at the same point");
  return a.w * b.wp - a.wp * b.w;
}

std::pair<cplx, long> wronskian_scaled(const ScaledState& a, const ScaledState& b) {
  if (std::abs(a.y - b.y) > 1e-12 * (1.0 + std::abs(a.y)))
    throw Error(ErrorCode::kMismatchedEvaluationPoint, "Wronskian requires states at the same point");
  return {a.w * b.wp - a.wp * b.w, a.exponent + b.exponent};
}

}  // namespace stokeskit
