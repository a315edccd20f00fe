#ifndef STOKESKIT_H
#define STOKESKIT_H

#include <stddef.h>

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_PRECONDITION_VIOLATION = 1,
  SK_STEP_UNDERFLOW,
  SK_NON_FINITE_STATE,
  SK_MISMATCHED_EVALUATION_POINT,
  SK_BRANCH_CUT_VIOLATION,
  SK_SEED_INSUFFICIENT,
  SK_DEGENERATE_WRONSKIAN,
  SK_ZERO_ON_CONTOUR,
  SK_PHASE_JUMP_UNRESOLVED,
  SK_NO_ZERO_ENCLOSED,
  SK_NEWTON_STALLED,
  SK_SECTOR_VIOLATION,
  SK_EVALUATION_OUTSIDE_SUBDOMINANT_MARGIN,
  SK_K_VANISHES,
  SK_GRID_TOO_COARSE,
  SK_INEQUALITY_FAILS_AT_ALL_TAU,
  SK_ORIGIN_SINGULAR,
  SK_DOMAIN_VIOLATION,
  SK_SAMPLE_EXHAUSTED,
  SK_IO,
  SK_INTERNAL = 100
} sk_status;

typedef struct sk_context sk_context;
typedef struct sk_result sk_result;
typedef struct sk_solution sk_solution;

SK_API const char* sk_version(void);
SK_API const char* sk_status_name(sk_status status);

SK_API sk_context* sk_context_new(void);
SK_API void sk_context_free(sk_context* ctx);
/* Message of the last failing call on ctx, "" if none. */
SK_API const char* sk_last_error(const sk_context* ctx);
/* Integrator tolerances used by sk_solution_* and sk_stokes_c0, and by sk_run
   whenever the config does not set rel_tol / abs_tol itself. */
SK_API sk_status sk_context_set_tolerances(sk_context* ctx, double rel_tol, double abs_tol);

SK_API size_t sk_command_count(void);
SK_API const char* sk_command_name(size_t index);
/* Default config of a command as JSON; owned by ctx, valid until the next call on ctx. */
SK_API sk_status sk_default_config(sk_context* ctx, const char* command, const char** json_out);

/* Runs a report command. config_json may be NULL or a JSON object overriding defaults. */
SK_API sk_status sk_run(sk_context* ctx, const char* command, const char* config_json, sk_result** out);
SK_API const char* sk_result_json(const sk_result* result);
SK_API const char* sk_result_csv(const sk_result* result);
/* 1 when every gating check passed. */
SK_API int sk_result_certified(const sk_result* result);
SK_API void sk_result_free(sk_result* result);

/* Canonical solution Y_k(y; zeta). */
SK_API sk_status sk_solution_new(sk_context* ctx, double zeta_re, double zeta_im, int k, sk_solution** out);
/* out = {Re w, Im w, Re w', Im w'} */
SK_API sk_status sk_solution_eval(sk_context* ctx, const sk_solution* sol, double y_re, double y_im, double out[4]);
SK_API void sk_solution_free(sk_solution* sol);

/* out = {Re C_0, Im C_0} */
SK_API sk_status sk_stokes_c0(sk_context* ctx, double zeta_re, double zeta_im, double out[2]);
/* Roots of tau^3 - 3 (x^2 + xi^2) tau - 2 b x^3 in descending order. */
SK_API sk_status sk_cubic_roots(sk_context* ctx, double x, double xi, double b, double roots[3], int* vanishing);

#ifdef __cplusplus
}
#endif

#endif
