#include "symbolgeometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "parallel.hpp"

namespace stokeskit {

namespace {

constexpr double kCriticalRatio = 2.0 / 5.196152422706632;  // 2 / (3 sqrt 3)

void check_b0(double b0) {
  if (!(std::abs(b0) < kCriticalRatio))
    throw Error(ErrorCode::kPreconditionViolation, "|b0| must be below 2 / (3 sqrt 3)");
}

void check_dim(const TangentVector& v, int n) {
  if (n < 1 || v.size() != static_cast<std::size_t>(2 * (n + 1)))
    throw Error(ErrorCode::kPreconditionViolation, "tangent vector must have 2 (n + 1) components");
}

// Component offsets.
std::size_t xi(int n, int k) { return static_cast<std::size_t>(n + 1 + k); }

double norm(const TangentVector& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

TangentVector basis(int n, std::size_t k, double s) {
  TangentVector v(static_cast<std::size_t>(2 * (n + 1)), 0.0);
  v[k] = s;
  return v;
}

}  // namespace

double cubic_symbol(double tau, double x, double xi_, double b) {
  return tau * tau * tau - 3.0 * (x * x + xi_ * xi_) * tau - 2.0 * b * x * x * x;
}

double discriminant(double x, double xi_, double b) {
  const double r2 = x * x + xi_ * xi_;
  const double x3 = x * x * x;
  return 108.0 * (r2 * r2 * r2 - b * b * x3 * x3);
}

CubicRoots cubic_roots(double x, double xi_, double b) {
  const double r2 = x * x + xi_ * xi_;
  if (r2 == 0.0) throw Error(ErrorCode::kOriginSingular, "the roots are not defined at (x, xi) = (0, 0)");
  const double r = std::sqrt(r2);
  const double c = std::clamp(b * x * x * x / (r2 * r), -1.0, 1.0);
  CubicRoots out;
  out.phi = std::acos(c);
  std::array<std::pair<double, int>, 3> tagged;
  for (int m = 0; m < 3; ++m) tagged[m] = {2.0 * r * std::cos((out.phi + 2.0 * kPi * m) / 3.0), m};
  std::sort(tagged.begin(), tagged.end(), [](auto a, auto b2) { return a.first > b2.first; });
  for (int k = 0; k < 3; ++k) {
    out.roots[k] = tagged[k].first;
    if (tagged[k].second == 2) out.vanishing = k;
  }
  return out;
}

std::array<double, 3> vieta_residuals(const CubicRoots& r, double x, double xi_, double b) {
  const auto& t = r.roots;
  const double scale = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
  const double s1 = t[0] + t[1] + t[2];
  const double s2 = t[0] * t[1] + t[0] * t[2] + t[1] * t[2];
  const double s3 = t[0] * t[1] * t[2];
  return {std::abs(s1) / scale, std::abs(s2 + 3.0 * (x * x + xi_ * xi_)) / (scale * scale),
          std::abs(s3 - 2.0 * b * x * x * x) / (scale * scale * scale)};
}

double min_normalized_discriminant(double b, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double x = U(rng);
    const double y = U(rng);
    const double r2 = x * x + y * y;
    if (r2 == 0.0) continue;
    m = std::min(m, discriminant(x, y, b) / (r2 * r2 * r2));
  }
  return m;
}

NonsmoothnessWitness nonsmoothness_witness(double b, const std::vector<double>& eps_list,
                                           const std::vector<double>& phi_list) {
  if (!(b != 0.0 && std::abs(b) < 1.0)) throw Error(ErrorCode::kPreconditionViolation, "need 0 < |b| < 1");
  if (eps_list.empty()) throw Error(ErrorCode::kPreconditionViolation, "eps_list is empty");
  NonsmoothnessWitness w;
  w.b = b;
  w.threshold = 0.1 * std::abs(b);
  const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  auto f = [&](double phi) {
    return cubic_roots(eps_min * std::cos(phi), eps_min * std::sin(phi), b).vanishing_root() / eps_min;
  };
  const double f0 = f(0.0);
  const double f90 = f(kPi / 2.0);
  for (double eps : eps_list)
    for (double phi : phi_list) {
      const double c = std::cos(phi);
      DirectionalLimit d{eps, phi, cubic_roots(eps * c, eps * std::sin(phi), b).vanishing_root() / eps,
                         -(2.0 / 3.0) * b * c * c * c};
      w.max_first_order_gap = std::max(w.max_first_order_gap, std::abs(d.ratio - d.first_order));
      w.table.push_back(d);
    }
  for (double phi : phi_list)
    w.nonlinearity = std::max(w.nonlinearity, std::abs(f(phi) - f0 * std::cos(phi) - f90 * std::sin(phi)));
  return w;
}

double g_series(double u, int n_terms) {
  if (!(std::abs(u) < 1.0)) throw Error(ErrorCode::kDomainViolation, "g is defined for |u| < 1");
  if (n_terms < 0) throw Error(ErrorCode::kPreconditionViolation, "n_terms must be nonnegative");
  double c = 1.0;  // (2k)! / (2^{2k} (k!)^2)
  double p = u;
  double s = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) {
      c *= (2.0 * k - 1.0) / (2.0 * k);
      p *= u * u;
    }
    s += c * p / (2.0 * k + 1.0);
  }
  return s;
}

int g_series_terms(double u, double tol) {
  if (!(std::abs(u) < 1.0)) throw Error(ErrorCode::kDomainViolation, "g is defined for |u| < 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "tol must be positive");
  double c = 1.0;
  double p = std::abs(u);
  for (int n = 0; n < 100000000; ++n) {
    if (n > 0) {
      c *= (2.0 * n - 1.0) / (2.0 * n);
      p *= u * u;
    }
    if (c * p / (2.0 * n + 1.0) / (1.0 - u * u) < tol) return n;
  }
  throw Error(ErrorCode::kDomainViolation, "series does not reach the tolerance");
}

double localization(const TangentVector& v, double b0, int n) {
  check_dim(v, n);
  const double x1 = v[1];
  const double e0 = v[xi(n, 0)];
  const double e1 = v[xi(n, 1)];
  return e0 * e0 * e0 - (e1 * e1 + x1 * x1) * e0 - b0 * x1 * x1 * x1;
}

double sigma(const TangentVector& X, const TangentVector& Y, int n) {
  check_dim(X, n);
  check_dim(Y, n);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += X[k] * Y[xi(n, k)] - X[xi(n, k)] * Y[k];
  return s;
}

double gamma_threshold(const TangentVector& v, double b0, int n) {
  check_dim(v, n);
  const double x1 = v[1];
  const double e1 = v[xi(n, 1)];
  const double r2 = e1 * e1 + x1 * x1;
  if (r2 == 0.0) return 0.0;
  // l^3 - r^2 l - b0 x1^3: trigonometric form with l = (2 r / sqrt 3) cos(.)
  const double r = std::sqrt(r2);
  const double c = std::clamp(b0 * x1 * x1 * x1 * 3.0 * std::sqrt(3.0) / (2.0 * r2 * r), -1.0, 1.0);
  return 2.0 * r / std::sqrt(3.0) * std::cos(std::acos(c) / 3.0);
}

bool in_gamma_exact(const TangentVector& v, double b0, int n) { return v[xi(n, 0)] > gamma_threshold(v, b0, n); }

bool in_gamma_sampled(const TangentVector& v, double b0, int n, int segment_points, double* margin) {
  check_dim(v, n);
  if (segment_points < 2) throw Error(ErrorCode::kPreconditionViolation, "segment_points must be at least 2");
  TangentVector N = basis(n, xi(n, 0), 1.0);
  TangentVector p(v.size());
  double m = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (int k = 0; k < segment_points; ++k) {
    const double t = static_cast<double>(k + 1) / segment_points;
    for (std::size_t i = 0; i < v.size(); ++i) p[i] = (1.0 - t) * N[i] + t * v[i];
    const double nr = norm(p);
    const double val = nr > 0.0 ? localization(p, b0, n) / (nr * nr * nr) : 0.0;
    m = std::min(m, val);
    if (!(val > 0.0)) ok = false;
  }
  if (margin) *margin = m;
  return ok;
}

bool ConeReport::hamilton_not_contained() const {
  return std::any_of(hamilton.begin(), hamilton.end(), [](const HamiltonCheck& h) { return !h.in_closure; });
}

ConeReport cone_analysis(double b0, const ConeOptions& opts) {
  check_b0(b0);
  const int n = opts.n;
  if (n < 1 || opts.n_samples < 1 || opts.chunks < 1)
    throw Error(ErrorCode::kPreconditionViolation, "n, n_samples and chunks must be positive");
  const std::size_t dim = static_cast<std::size_t>(2 * (n + 1));
  ConeReport rep;
  rep.b0 = b0;
  rep.options = opts;

  struct Chunk {
    std::vector<TangentVector> accepted;
    int attempts = 0;
    int disagreements = 0;
    double margin = std::numeric_limits<double>::infinity();
  };
  const int chunks = std::min(opts.chunks, opts.n_samples);
  std::vector<Chunk> parts(static_cast<std::size_t>(chunks));
  parallel_for(parts.size(), [&](std::size_t c) {
    const int quota = opts.n_samples / chunks + (static_cast<int>(c) < opts.n_samples % chunks ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> G(0.0, 1.0);
    Chunk& ch = parts[c];
    while (static_cast<int>(ch.accepted.size()) < quota) {
      if (ch.attempts > 1000 * quota)
        throw Error(ErrorCode::kSampleExhausted, "too few hyperbolicity-cone samples accepted");
      ++ch.attempts;
      TangentVector v(dim);
      for (auto& x : v) x = G(rng);
      double m = 0.0;
      const bool sampled = in_gamma_sampled(v, b0, n, opts.segment_points, &m);
      if (sampled != in_gamma_exact(v, b0, n)) ++ch.disagreements;
      if (sampled) {
        ch.margin = std::min(ch.margin, m);
        ch.accepted.push_back(std::move(v));
      }
    }
  });
  std::vector<TangentVector> gamma;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (auto& ch : parts) {
    rep.attempts += ch.attempts;
    rep.oracle_disagreements += ch.disagreements;
    rep.min_margin = std::min(rep.min_margin, ch.margin);
    for (auto& v : ch.accepted) gamma.push_back(std::move(v));
  }
  rep.gamma_samples = static_cast<int>(gamma.size());

  auto max_sigma = [&](const TangentVector& X) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& Y : gamma) m = std::max(m, sigma(X, Y, n));
    return m;
  };

  rep.delta_v = basis(n, 0, -1.0);
  rep.delta_v_max_sigma = max_sigma(rep.delta_v);
  rep.delta_v_tangent = rep.delta_v[1] == 0.0 && rep.delta_v[xi(n, 0)] == 0.0 && rep.delta_v[xi(n, 1)] == 0.0;

  // Candidates X = (-1, c, 0, ...; 0, d, 0, ...) leave T_z Sigma_3 through dx1 or dxi1.
  bool found = false;
  for (double scale : {0.5, 0.25, 0.125, 0.0625}) {
    for (auto [c, d] : {std::pair{scale, 0.0}, std::pair{-scale, 0.0}, std::pair{0.0, scale}, std::pair{0.0, -scale}}) {
      TangentVector X = rep.delta_v;
      X[1] = c;
      X[xi(n, 1)] = d;
      const double m = max_sigma(X);
      if (m <= 0.0) {
        rep.off_tangent = X;
        rep.off_tangent_max_sigma = m;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) throw Error(ErrorCode::kSampleExhausted, "no off-tangent dual vector passed on the samples");

  // H_{xi_0} = d/dx0, H_{xi_1} = d/dx1, H_{x_1} = -d/dxi1, with both signs.
  const std::vector<std::pair<std::string, TangentVector>> hs = {
      {"H_xi0", basis(n, 0, 1.0)},           {"-H_xi0", basis(n, 0, -1.0)},
      {"H_xi1", basis(n, 1, 1.0)},           {"-H_xi1", basis(n, 1, -1.0)},
      {"H_x1", basis(n, xi(n, 1), -1.0)},    {"-H_x1", basis(n, xi(n, 1), 1.0)},
  };
  for (const auto& [name, v] : hs)
    rep.hamilton.push_back({name, v[xi(n, 0)] >= gamma_threshold(v, b0, n) - 1e-14});
  return rep;
}

}  // namespace stokeskit
