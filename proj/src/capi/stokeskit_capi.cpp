#include "stokeskit/stokeskit.h"

#include <memory>
#include <new>
#include <string>

#include "reports.hpp"
#include "sibuya.hpp"
#include "stokes.hpp"
#include "symbolgeometry.hpp"

struct sk_context {
  std::string error;
  std::string buffer;
  bool tolerances_set = false;
  stokeskit::IntegratorConfig integrator;
};

struct sk_result {
  std::string json;
  std::string csv;
  bool certified = false;
};

struct sk_solution {
  stokeskit::CanonicalSolution solution;
};

namespace {

template <class F>
sk_status guarded(sk_context* ctx, F&& f) {
  if (!ctx) return SK_PRECONDITION_VIOLATION;
  ctx->error.clear();
  try {
    f();
    return SK_OK;
  } catch (const stokeskit::Error& e) {
    ctx->error = e.what();
    return static_cast<sk_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    ctx->error = std::string("PreconditionViolation: ") + e.what();
    return SK_PRECONDITION_VIOLATION;
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return SK_INTERNAL;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return SK_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw stokeskit::Error(stokeskit::ErrorCode::kPreconditionViolation, what);
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "1.0.0"; }

const char* sk_status_name(sk_status status) {
  if (status == SK_OK) return "Ok";
  if (status == SK_INTERNAL) return "Internal";
  if (status < SK_PRECONDITION_VIOLATION || status > SK_IO) return "Unknown";
  return stokeskit::error_code_name(static_cast<stokeskit::ErrorCode>(status));
}

sk_context* sk_context_new(void) { return new (std::nothrow) sk_context(); }

void sk_context_free(sk_context* ctx) { delete ctx; }

const char* sk_last_error(const sk_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

sk_status sk_context_set_tolerances(sk_context* ctx, double rel_tol, double abs_tol) {
  return guarded(ctx, [&] {
    stokeskit::IntegratorConfig cfg = ctx->integrator;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.validate();
    ctx->integrator = cfg;
    ctx->tolerances_set = true;
  });
}

size_t sk_command_count(void) { return stokeskit::report_commands().size(); }

const char* sk_command_name(size_t index) {
  const auto& cmds = stokeskit::report_commands();
  return index < cmds.size() ? cmds[index].c_str() : nullptr;
}

sk_status sk_default_config(sk_context* ctx, const char* command, const char** json_out) {
  return guarded(ctx, [&] {
    require(command && json_out, "command and json_out must be non-null");
    ctx->buffer = stokeskit::default_config(command).dump(2);
    *json_out = ctx->buffer.c_str();
  });
}

sk_status sk_run(sk_context* ctx, const char* command, const char* config_json, sk_result** out) {
  return guarded(ctx, [&] {
    require(command && out, "command and out must be non-null");
    *out = nullptr;
    nlohmann::json config = nlohmann::json::object();
    if (config_json && *config_json) config = nlohmann::json::parse(config_json);
    require(config.is_object(), "config must be a JSON object");
    if (ctx->tolerances_set && stokeskit::default_config(command).contains("rel_tol")) {
      if (!config.contains("rel_tol")) config["rel_tol"] = ctx->integrator.rel_tol;
      if (!config.contains("abs_tol")) config["abs_tol"] = ctx->integrator.abs_tol;
    }
    stokeskit::Report r = stokeskit::run_report(command, config);
    auto res = std::make_unique<sk_result>();
    res->json = r.json.dump(2) + "\n";
    res->csv = std::move(r.csv);
    res->certified = r.certified;
    *out = res.release();
  });
}

const char* sk_result_json(const sk_result* result) { return result ? result->json.c_str() : ""; }

const char* sk_result_csv(const sk_result* result) { return result ? result->csv.c_str() : ""; }

int sk_result_certified(const sk_result* result) { return result && result->certified ? 1 : 0; }

void sk_result_free(sk_result* result) { delete result; }

sk_status sk_solution_new(sk_context* ctx, double zeta_re, double zeta_im, int k, sk_solution** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "out must be non-null");
    *out = nullptr;
    require(k >= 0 && k <= 4, "k must lie in 0..4");
    *out = new sk_solution{stokeskit::CanonicalSolution({zeta_re, zeta_im}, k)};
  });
}

sk_status sk_solution_eval(sk_context* ctx, const sk_solution* sol, double y_re, double y_im, double out[4]) {
  return guarded(ctx, [&] {
    require(sol && out, "solution and out must be non-null");
    const stokeskit::ODEState s = sol->solution.evaluate({y_re, y_im}, ctx->integrator);
    out[0] = s.w.real();
    out[1] = s.w.imag();
    out[2] = s.wp.real();
    out[3] = s.wp.imag();
  });
}

void sk_solution_free(sk_solution* sol) { delete sol; }

sk_status sk_stokes_c0(sk_context* ctx, double zeta_re, double zeta_im, double out[2]) {
  return guarded(ctx, [&] {
    require(out != nullptr, "out must be non-null");
    stokeskit::StokesOptions opts;
    opts.integrator = ctx->integrator;
    const stokeskit::cplx c = stokeskit::stokes_C0({zeta_re, zeta_im}, opts);
    out[0] = c.real();
    out[1] = c.imag();
  });
}

sk_status sk_cubic_roots(sk_context* ctx, double x, double xi, double b, double roots[3], int* vanishing) {
  return guarded(ctx, [&] {
    require(roots != nullptr, "roots must be non-null");
    const stokeskit::CubicRoots r = stokeskit::cubic_roots(x, xi, b);
    for (int i = 0; i < 3; ++i) roots[i] = r.roots[i];
    if (vanishing) *vanishing = r.vanishing;
  });
}

}  // extern "C"
