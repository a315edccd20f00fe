#include <gtest/gtest.h>

#include <complex>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "stokeskit/stokeskit.h"

namespace {

struct Ctx {
  sk_context* p = sk_context_new();
  ~Ctx() { sk_context_free(p); }
};

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(sk_status_name(SK_OK), "Ok");
  EXPECT_STREQ(sk_status_name(SK_ZERO_ON_CONTOUR), "ZeroOnContour");
  EXPECT_STREQ(sk_status_name(SK_IO), "Io");
  EXPECT_STREQ(sk_status_name(SK_INTERNAL), "Internal");
  EXPECT_STREQ(sk_status_name(static_cast<sk_status>(77)), "Unknown");
}

TEST(CApi, CommandList) {
  ASSERT_EQ(sk_command_count(), 8u);
  EXPECT_STREQ(sk_command_name(0), "sibuya-eval");
  EXPECT_STREQ(sk_command_name(7), "cones");
  EXPECT_EQ(sk_command_name(8), nullptr);
}

TEST(CApi, NullArgumentsAreRejected) {
  Ctx c;
  EXPECT_EQ(sk_run(nullptr, "roots", nullptr, nullptr), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(sk_run(c.p, "roots", nullptr, nullptr), SK_PRECONDITION_VIOLATION);
  EXPECT_NE(std::string(sk_last_error(c.p)), "");
  EXPECT_EQ(sk_stokes_c0(c.p, 0.0, 0.0, nullptr), SK_PRECONDITION_VIOLATION);
  sk_result_free(nullptr);
  sk_solution_free(nullptr);
}

TEST(CApi, RunRootsReport) {
  Ctx c;
  sk_result* r = nullptr;
  ASSERT_EQ(sk_run(c.p, "roots", R"({"b": 0.05, "disc_samples": 1000})", &r), SK_OK);
  const auto j = nlohmann::json::parse(sk_result_json(r));
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("command"), "roots");
  EXPECT_EQ(j.at("config").at("b"), 0.05);
  EXPECT_EQ(sk_result_certified(r), 1);
  EXPECT_EQ(std::string(sk_result_csv(r)).rfind("eps,phi,ratio,first_order\n", 0), 0u);
  sk_result_free(r);
}

TEST(CApi, UnknownCommandAndKey) {
  Ctx c;
  sk_result* r = nullptr;
  EXPECT_EQ(sk_run(c.p, "nope", nullptr, &r), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(r, nullptr);
  EXPECT_EQ(sk_run(c.p, "roots", R"({"bogus": 1})", &r), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(sk_run(c.p, "roots", "{not json", &r), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(sk_run(c.p, "roots", R"({"b": "x"})", &r), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(sk_run(c.p, "roots", R"([1, 2])", &r), SK_PRECONDITION_VIOLATION);
}

TEST(CApi, DomainErrorsKeepTheirCode) {
  Ctx c;
  double roots[3];
  EXPECT_EQ(sk_cubic_roots(c.p, 0.0, 0.0, 0.1, roots, nullptr), SK_ORIGIN_SINGULAR);
  EXPECT_NE(std::string(sk_last_error(c.p)).find("OriginSingular"), std::string::npos);
  int v = -1;
  EXPECT_EQ(sk_cubic_roots(c.p, 0.0, 1.0, 0.1, roots, &v), SK_OK);
  EXPECT_EQ(std::string(sk_last_error(c.p)), "");
  EXPECT_NEAR(roots[v], 0.0, 1e-15);
}

TEST(CApi, DefaultConfig) {
  Ctx c;
  const char* js = nullptr;
  ASSERT_EQ(sk_default_config(c.p, "verify-identities", &js), SK_OK);
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j.at("grid"), 20);
  EXPECT_EQ(j.at("radius"), 3.0);
}

TEST(CApi, SolutionHandleMatchesBessel) {
  Ctx c;
  sk_solution* s = nullptr;
  ASSERT_EQ(sk_solution_new(c.p, 0.0, 0.0, 0, &s), SK_OK);
  double out[4];
  ASSERT_EQ(sk_solution_eval(c.p, s, 2.0, 0.0, out), SK_OK);
  const double ref = std::sqrt(2.0) * oracle::bessel_k(0.2, 0.4 * std::pow(2.0, 2.5)) / std::sqrt(1.25 * M_PI);
  EXPECT_NEAR(out[0] / ref, 1.0, 1e-9);
  EXPECT_NEAR(out[1], 0.0, 1e-15);
  sk_solution_free(s);
  EXPECT_EQ(sk_solution_new(c.p, 0.0, 0.0, 9, &s), SK_PRECONDITION_VIOLATION);
  EXPECT_EQ(s, nullptr);
}

TEST(CApi, StokesC0AtZero) {
  Ctx c;
  double out[2];
  ASSERT_EQ(sk_stokes_c0(c.p, 0.0, 0.0, out), SK_OK);
  const std::complex<double> expect = 1.0 + std::polar(1.0, 2.0 * M_PI / 5.0);
  EXPECT_NEAR(out[0], expect.real(), 1e-10);
  EXPECT_NEAR(out[1], expect.imag(), 1e-10);
}

TEST(CApi, ContextTolerances) {
  Ctx c;
  EXPECT_EQ(sk_context_set_tolerances(c.p, -1.0, 1e-14), SK_PRECONDITION_VIOLATION);
  ASSERT_EQ(sk_context_set_tolerances(c.p, 5e-13, 5e-15), SK_OK);
  sk_result* r = nullptr;
  ASSERT_EQ(sk_run(c.p, "stokes-table", nullptr, &r), SK_OK);
  const auto j = nlohmann::json::parse(sk_result_json(r));
  EXPECT_EQ(j.at("config").at("rel_tol"), 5e-13);
  sk_result_free(r);
}
