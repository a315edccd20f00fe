#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stokeskit/stokeskit.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct Run {
  CLI::App* app = nullptr;
  json config = json::object();
  std::string output;
  std::string csv_path;
  std::string format = "json";
  std::string config_path;
  std::string write_certificate;
  std::string zeta0_path = "certificates/zeta0.json";
};

void number(Run& r, const std::string& flag, const std::string& key, const std::string& help) {
  r.app->add_option_function<double>(flag, [&r, key](double v) { r.config[key] = v; }, help);
}

void integer(Run& r, const std::string& flag, const std::string& key, const std::string& help) {
  r.app->add_option_function<long long>(flag, [&r, key](long long v) { r.config[key] = v; }, help);
}

void numbers(Run& r, const std::string& flag, const std::string& key, const std::string& help) {
  r.app->add_option_function<std::vector<double>>(flag, [&r, key](const std::vector<double>& v) { r.config[key] = v; }, help)
      ->expected(1, -1);
}

void common(Run& r, bool integrator) {
  r.app->add_option("-o,--output", r.output, "Write the report here instead of stdout");
  r.app->add_option("--format", r.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  r.app->add_option("--csv", r.csv_path, "Also write the CSV table to this file");
  r.app->add_option("--config", r.config_path, "JSON file with config overrides (flags take precedence)");
  if (integrator) {
    number(r, "--rel-tol", "rel_tol", "Integrator relative tolerance");
    number(r, "--abs-tol", "abs_tol", "Integrator absolute tolerance");
  }
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

bool read_json(const std::string& path, json& out, std::string& why) {
  std::ifstream in(path);
  if (!in) {
    why = "cannot open " + path;
    return false;
  }
  try {
    out = json::parse(in);
  } catch (const json::exception& e) {
    why = path + " is not valid JSON (" + e.what() + ")";
    return false;
  }
  return true;
}

int exit_for(sk_status s) {
  switch (s) {
    case SK_OK: return kExitOk;
    case SK_PRECONDITION_VIOLATION:
    case SK_ORIGIN_SINGULAR:
    case SK_DOMAIN_VIOLATION: return kExitUsage;
    default: return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes coefficients of y^3 + zeta y, the non-hyperbolic counterexample and its energy and cone checks"};
  app.require_subcommand(1);
  std::map<std::string, Run> runs;
  auto sub = [&](const std::string& name, const std::string& help, bool integrator) -> Run& {
    Run& r = runs[name];
    r.app = app.add_subcommand(name, help);
    common(r, integrator);
    return r;
  };

  {
    Run& r = sub("sibuya-eval", "Evaluate the canonical subdominant solution Y_k(y; zeta)", true);
    number(r, "--zeta-re", "zeta_re", "Re zeta");
    number(r, "--zeta-im", "zeta_im", "Im zeta");
    integer(r, "--k", "k", "Sector index 0..4");
    number(r, "--y-re", "y_re", "Re y");
    number(r, "--y-im", "y_im", "Im y");
    integer(r, "--n-coeffs", "n_coeffs", "Number of asymptotic coefficients to report");
  }
  {
    Run& r = sub("stokes-table", "Stokes coefficients C_k, C~_k at one zeta", true);
    number(r, "--zeta-re", "zeta_re", "Re zeta");
    number(r, "--zeta-im", "zeta_im", "Im zeta");
  }
  {
    Run& r = sub("verify-identities", "Check the Stokes identities on a polar grid", true);
    integer(r, "--grid", "grid", "Polar grid size N (N x N)");
    number(r, "--radius", "radius", "Largest |zeta|");
    integer(r, "--halton", "halton", "Extra Halton samples in the disk");
  }
  {
    Run& r = sub("zero-find", "Certify a zero of C_0 in a sector by the argument principle", true);
    number(r, "--rmin", "r_min", "Inner radius");
    number(r, "--rmax", "r_max", "Outer radius");
    number(r, "--argmin", "arg_min", "Smallest argument");
    number(r, "--argmax", "arg_max", "Largest argument");
    number(r, "--tol", "tol", "Required |C_0| at the zero");
    integer(r, "--n-samples", "n_samples", "Initial samples per contour edge");
    r.app->add_option("--write-certificate", r.write_certificate, "Also store the certificate at this path");
  }
  {
    Run& r = sub("counterexample", "Build and check the counterexample family", true);
    numbers(r, "--lambda", "lambdas", "Frequencies lambda");
    number(r, "--b0", "b0", "Coefficient b0");
    r.app->add_option("--zeta0", r.zeta0_path, "Zero certificate written by zero-find");
    number(r, "--zeta0-re", "zeta0_re", "Re zeta0 (overrides the certificate)");
    number(r, "--zeta0-im", "zeta0_im", "Im zeta0 (overrides the certificate)");
    number(r, "--dy-max", "dy_max", "Largest grid step in y");
    number(r, "--margin", "margin", "Required angular margin inside the subdominant sector");
    r.app->add_flag_function("--strict-margin", [&r](std::int64_t) { r.config["strict_margin"] = true; },
                             "Fail when the margin is violated");
  }
  {
    Run& r = sub("energy-check", "Weighted energy identities and inequalities on seeded test functions", false);
    numbers(r, "--s", "s", "Gevrey indices");
    numbers(r, "--xin", "xi_n", "Frequencies xi_n");
    number(r, "--b0", "b0", "Coefficient b0");
    integer(r, "--seed", "seed", "RNG seed");
    integer(r, "--n-samples", "n_samples", "Test functions per frequency");
    number(r, "--c-multiplier", "C_multiplier", "Constant in the multiplier estimate");
    number(r, "--c-full", "C_full", "Constant in the full estimate");
    integer(r, "--n0", "n0", "Grid intervals in x0");
    integer(r, "--n1", "n1", "Grid intervals in x1");
  }
  {
    Run& r = sub("roots", "Characteristic roots and the non-smoothness witness", false);
    number(r, "--x", "x", "x");
    number(r, "--xi", "xi", "xi");
    number(r, "--b", "b", "b");
    numbers(r, "--eps", "eps", "Radii of the directional limits");
    numbers(r, "--phi", "phi", "Directions of the directional limits");
    integer(r, "--seed", "seed", "RNG seed for the discriminant samples");
  }
  {
    Run& r = sub("cones", "Hyperbolicity and propagation cones at a triple point", false);
    number(r, "--b0", "b0", "Coefficient b0");
    integer(r, "--n-samples", "n_samples", "Gamma samples");
    integer(r, "--seed", "seed", "RNG seed");
    integer(r, "--n", "n", "Number of tangential variables");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run '" << app.get_name() << " --help' or '" << app.get_name() << " <subcommand> --help' for usage\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Run& r = runs.at(command);

  json config = json::object();
  std::string why;
  if (!r.config_path.empty()) {
    if (!read_json(r.config_path, config, why) || !config.is_object()) {
      std::cerr << "error: " << (why.empty() ? r.config_path + " must hold a JSON object" : why) << "\n";
      return kExitUsage;
    }
  }
  config.update(r.config);

  if (command == "counterexample" && !(config.contains("zeta0_re") && config.contains("zeta0_im"))) {
    json cert;
    if (!read_json(r.zeta0_path, cert, why)) {
      std::cerr << "error: " << why << "\n";
      std::cerr << "run 'stokeskit zero-find --write-certificate " << r.zeta0_path
                << "' first or pass --zeta0-re/--zeta0-im\n";
      return kExitUsage;
    }
    try {
      const json& z = cert.at("result").at("zeta0");
      if (!config.contains("zeta0_re")) config["zeta0_re"] = z.at("re").get<double>();
      if (!config.contains("zeta0_im")) config["zeta0_im"] = z.at("im").get<double>();
    } catch (const json::exception&) {
      std::cerr << "error: " << r.zeta0_path << " has no result.zeta0\n";
      std::cerr << "regenerate it with 'stokeskit zero-find --write-certificate " << r.zeta0_path << "'\n";
      return kExitUsage;
    }
  }

  sk_context* ctx = sk_context_new();
  if (!ctx) return kExitFailure;
  sk_result* res = nullptr;
  const sk_status st = sk_run(ctx, command.c_str(), config.dump().c_str(), &res);
  if (st != SK_OK) {
    std::cerr << "error: " << sk_last_error(ctx) << "\n";
    if (exit_for(st) == kExitUsage)
      std::cerr << "check the flags with 'stokeskit " << command << " --help'\n";
    sk_context_free(ctx);
    return exit_for(st);
  }

  const std::string report_json = sk_result_json(res);
  const std::string report_csv = sk_result_csv(res);
  const bool certified = sk_result_certified(res) != 0;
  sk_result_free(res);
  sk_context_free(ctx);

  bool ok = write_text(r.output, r.format == "csv" ? report_csv : report_json);
  if (!r.csv_path.empty()) ok = write_text(r.csv_path, report_csv) && ok;
  if (!r.write_certificate.empty()) {
    if (!certified) {
      std::cerr << "error: zero certificate failed its checks; not writing " << r.write_certificate << "\n";
      return kExitFailure;
    }
    ok = write_text(r.write_certificate, report_json) && ok;
  }
  if (!ok) {
    std::cerr << "error: could not write output\n";
    return kExitFailure;
  }
  if (!certified) {
    std::cerr << command << ": certification failed (see the checks array)\n";
    return kExitFailure;
  }
  return kExitOk;
}
