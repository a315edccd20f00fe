#include "zerolocator.hpp"

#include <algorithm>
#include <limits>
#include <list>
#include <optional>

#include "parallel.hpp"

namespace stokeskit {

namespace {

constexpr double kMaxJump = kPi / 2.0;

struct Sample {
  double t;  // boundary parameter in [0, 4)
  cplx value;
};

// Boundary parametrisation: outer arc (arg_min -> arg_max), radial edge
// inward at arg_max, inner arc back, radial edge outward at arg_min.
cplx boundary_point(const SectorContour& c, double t) {
  const int edge = std::min(3, static_cast<int>(t));
  const double u = t - edge;
  switch (edge) {
    case 0:
      return std::polar(c.r_max, c.arg_min + u * (c.arg_max - c.arg_min));
    case 1:
      return std::polar(c.r_max + u * (c.r_min - c.r_max), c.arg_max);
    case 2:
      return std::polar(c.r_min, c.arg_max + u * (c.arg_min - c.arg_max));
    default:
      return std::polar(c.r_min + u * (c.r_max - c.r_min), c.arg_min);
  }
}

std::vector<cplx> evaluate_all(const AnalyticFn& f, const std::vector<cplx>& pts) {
  std::vector<cplx> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = f(pts[i]); });
  return out;
}

struct Node {
  SectorContour c;
  int winding;
};

}  // namespace

void SectorContour::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw Error(ErrorCode::kPreconditionViolation, "sector requires 0 < r_min < r_max");
  if (!(arg_max > arg_min) || arg_max - arg_min > 2.0 * kPi + 1e-12)
    throw Error(ErrorCode::kPreconditionViolation, "sector requires arg_min < arg_max <= arg_min + 2 pi");
  if (n_samples < 64) throw Error(ErrorCode::kPreconditionViolation, "n_samples must be at least 64");
}

double arg_in(cplx z, double lo) {
  double a = std::arg(z);
  while (a < lo) a += 2.0 * kPi;
  while (a >= lo + 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

bool SectorContour::contains(cplx z) const {
  const double r = std::abs(z);
  if (r < r_min || r > r_max) return false;
  return arg_in(z, arg_min) <= arg_max;
}

double SectorContour::diameter() const {
  return std::max(r_max - r_min, r_max * std::min(arg_max - arg_min, kPi));
}

WindingResult winding_number(const AnalyticFn& f, const SectorContour& c, double zero_guard, int max_samples) {
  c.validate();
  const int per_edge = std::max(16, c.n_samples / 4);
  std::list<Sample> samples;
  {
    std::vector<double> ts;
    std::vector<cplx> pts;
    for (int e = 0; e < 4; ++e)
      for (int i = 0; i < per_edge; ++i) ts.push_back(e + static_cast<double>(i) / per_edge);
    ts.push_back(4.0);
    for (double t : ts) pts.push_back(boundary_point(c, t));
    const auto vals = evaluate_all(f, pts);
    for (std::size_t i = 0; i < ts.size(); ++i) samples.push_back({ts[i], vals[i]});
  }

  int count = static_cast<int>(samples.size());
  for (;;) {
    std::vector<std::list<Sample>::iterator> split;
    for (auto it = samples.begin(); std::next(it) != samples.end(); ++it) {
      auto nx = std::next(it);
      if (std::abs(std::arg(nx->value / it->value)) > kMaxJump) {
        if (nx->t - it->t < 1e-12)
          throw Error(ErrorCode::kPhaseJumpUnresolved, "phase jump persists at contour resolution limit");
        split.push_back(it);
      }
    }
    if (split.empty()) break;
    count += static_cast<int>(split.size());
    if (count > max_samples) throw Error(ErrorCode::kPhaseJumpUnresolved, "contour refinement budget exhausted");
    std::vector<cplx> pts;
    std::vector<double> ts;
    for (auto it : split) {
      ts.push_back(0.5 * (it->t + std::next(it)->t));
      pts.push_back(boundary_point(c, ts.back()));
    }
    const auto vals = evaluate_all(f, pts);
    for (std::size_t i = 0; i < split.size(); ++i) samples.insert(std::next(split[i]), {ts[i], vals[i]});
  }

  // A sample flags a zero on the contour when |f| is below the guard and the
  // distance estimate |f| / |f'| (f' from neighbouring samples) is as well.
  // Either test alone misfires: |f| is exponentially small on whole arcs,
  // and zeros can sit within 1e-5 of an edge while |f| stays O(1) there.
  WindingResult res;
  res.samples = count;
  res.min_abs = std::abs(samples.front().value);
  res.min_distance = std::numeric_limits<double>::infinity();
  for (auto it = samples.begin(); std::next(it) != samples.end(); ++it) {
    const auto nx = std::next(it);
    res.total_phase += std::arg(nx->value / it->value);
    res.min_abs = std::min(res.min_abs, std::abs(nx->value));
    const double dz = std::abs(boundary_point(c, nx->t) - boundary_point(c, it->t));
    const double slope = std::abs(nx->value - it->value) / dz;
    const double small = std::min(std::abs(it->value), std::abs(nx->value));
    if (slope > 0.0 && small < zero_guard) res.min_distance = std::min(res.min_distance, small / slope);
  }
  if (res.min_distance < zero_guard)
    throw Error(ErrorCode::kZeroOnContour, "a zero lies within " + std::to_string(res.min_distance) + " of the contour");
  res.winding = static_cast<int>(std::lround(res.total_phase / (2.0 * kPi)));
  return res;
}

WindingResult winding_number(const SectorContour& c, const StokesOptions& opts) {
  return winding_number([&](cplx z) { return stokes_C0(z, opts); }, c);
}

ZeroCertificate find_zero(const AnalyticFn& f, SectorContour c, const ZeroOptions& zo) {
  c.validate();
  int w = winding_number(f, c).winding;
  while (w < 1 && c.r_max * 2.0 <= zo.max_r + 1e-12) {
    c.r_max *= 2.0;
    w = winding_number(f, c).winding;
  }
  if (w < 1) throw Error(ErrorCode::kNoZeroEnclosed, "winding number is zero up to r_max = " + std::to_string(c.r_max));

  ZeroCertificate cert;
  cert.contour = c;
  cert.winding = w;

  // Depth-first subdivision ordered by (r_min, arg_min) reaches the enclosed
  // zero of smallest modulus first.
  std::function<std::optional<SectorContour>(const Node&)> descend = [&](const Node& n) -> std::optional<SectorContour> {
    if (n.c.diameter() < zo.leaf_size) return n.c;
    for (double frac : {0.5, 0.47, 0.53, 0.41}) {
      const double rm = n.c.r_min + frac * (n.c.r_max - n.c.r_min);
      const double am = n.c.arg_min + frac * (n.c.arg_max - n.c.arg_min);
      std::vector<SectorContour> kids;
      for (auto [r0, r1] : {std::pair{n.c.r_min, rm}, std::pair{rm, n.c.r_max}})
        for (auto [a0, a1] : {std::pair{n.c.arg_min, am}, std::pair{am, n.c.arg_max}})
          kids.push_back({r0, r1, a0, a1, n.c.n_samples});
      std::vector<Node> found;
      try {
        for (const auto& k : kids) {
          const int wk = winding_number(f, k).winding;
          if (wk > 0) found.push_back({k, wk});
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kZeroOnContour) continue;
        throw;
      }
      std::sort(found.begin(), found.end(), [](const Node& a, const Node& b) {
        return a.c.r_min != b.c.r_min ? a.c.r_min < b.c.r_min : a.c.arg_min < b.c.arg_min;
      });
      for (const auto& k : found)
        if (auto leaf = descend(k)) return leaf;
      return std::nullopt;
    }
    // Internal boundaries kept hitting a zero; hand the node to Newton as is.
    return n.c;
  };
  const auto leaf = descend({c, w});
  if (!leaf) throw Error(ErrorCode::kNoZeroEnclosed, "subdivision lost the enclosed zero");
  cert.leaf = *leaf;

  const double rmid = 0.5 * (leaf->r_min + leaf->r_max);
  const double amid = 0.5 * (leaf->arg_min + leaf->arg_max);
  cplx z = std::polar(rmid, amid);
  cplx fz = f(z);
  int it = 0;
  for (; it < zo.max_newton && std::abs(fz) >= zo.tol * 1e-2; ++it) {
    const double h = 1e-5 * (1.0 + std::abs(z));
    const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
    if (std::abs(d) == 0.0) throw Error(ErrorCode::kNewtonStalled, "vanishing derivative estimate");
    const cplx step = fz / d;
    z -= step;
    fz = f(z);
    if (!c.contains(z)) throw Error(ErrorCode::kNewtonStalled, "Newton iterate left the sector");
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) {
      ++it;
      break;
    }
  }
  cert.zeta0 = z;
  cert.residual = std::abs(fz);
  cert.newton_iters = it;
  if (!(cert.residual < zo.tol))
    throw Error(ErrorCode::kNewtonStalled, "Newton residual " + std::to_string(cert.residual) + " above tolerance");
  return cert;
}

ZeroCertificate find_zero(const SectorContour& c, const ZeroOptions& zo, const StokesOptions& opts) {
  return find_zero([&](cplx z) { return stokes_C0(z, opts); }, c, zo);
}

}  // namespace stokeskit
