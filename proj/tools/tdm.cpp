// tdm: build series, run verification suites, aggregate reports.
// Exit codes: 0 success, 1 check failure or missing input, 2 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "tdm/cli/suites.hpp"
#include "tdm/errors.hpp"
#include "tdm/logseries/models.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "tdm: cannot write " << path << "\n";
    return kFail;
  }
  out << text;
  return kOk;
}

int cmd_build(const std::string& model, int order, const std::string& out) {
  if (order < 0) {
    std::cerr << "tdm build: --order must be non-negative\n";
    return kUsage;
  }
  tdm::logseries::ModelSpec spec;
  try {
    spec = tdm::logseries::model_spec(model);
  } catch (const tdm::ModelError& e) {
    std::cerr << "tdm build: " << e.what() << "\n";
    return kUsage;
  }
  auto series = tdm::logseries::build_series(spec, order);
  return write_text(out, tdm::logseries::dump_csv(series, spec.name));
}

int cmd_verify(const std::string& suite, const tdm::cli::RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "tdm verify: " << e.what() << "\n";
    return kUsage;
  }
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = tdm::cli::suite_names();
  } else if (tdm::cli::is_suite(suite)) {
    suites = {suite};
  } else {
    std::cerr << "tdm verify: unknown suite '" << suite << "'\n";
    return kUsage;
  }
  if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);

  bool ok = true;
  std::vector<tdm::cli::CheckResult> everything;
  for (const auto& name : suites) {
    auto checks = tdm::cli::run_suite(name, cfg);
    for (const auto& c : checks) {
      ok = ok && c.passed;
      std::cerr << (c.passed ? "pass " : "FAIL ") << name << "/" << c.check_id;
      if (!c.passed) std::cerr << ": " << c.witness;
      std::cerr << "\n";
    }
    if (!cfg.out.empty()) {
      int rc = write_text((std::filesystem::path(cfg.out) / (name + ".json")).string(),
                          tdm::cli::to_json(checks).dump(2) + "\n");
      if (rc != kOk) return rc;
    }
    everything.insert(everything.end(), checks.begin(), checks.end());
  }
  if (cfg.out.empty()) std::cout << tdm::cli::to_json(everything).dump(2) << "\n";
  return ok ? kOk : kFail;
}

int cmd_report(const std::string& in, const std::string& out) {
  tdm::cli::Summary s;
  try {
    s = tdm::cli::summarize_directory(in);
  } catch (const std::exception& e) {
    std::cerr << "tdm report: " << e.what() << "\n";
    return kFail;
  }
  int rc = write_text(out, s.text);
  if (rc != kOk) return rc;
  return s.all_passed ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transition-dmod: series, operator checks and numeric certificates"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  std::string model = "local_X";
  int order = 8;
  std::string out;
  auto* build = app.add_subcommand("build", "Write the coefficient table of a model as CSV");
  build->add_option("--model", model, "local_X, local_Y, local_Ybar, local_I5, local_I6, global_...")->required();
  build->add_option("--order", order, "Total degree bound");
  build->add_option("--out", out, "Output file (stdout if empty)");

  tdm::cli::RunConfig cfg;
  std::string suite = "all";
  double zr = 1.0;
  auto* verify = app.add_subcommand("verify", "Run verification suites and emit JSON");
  verify->add_option("--suite", suite, "annihilation, equivalence, ranks, residues, reduction, limit, monodromy, "
                                       "conifold, fjrw or all");
  verify->add_option("--model", cfg.model, "local, global or both");
  verify->add_option("--order", cfg.order, "Truncation order (>= 2)");
  verify->add_option("--tol", cfg.tol, "Numeric tolerance");
  verify->add_option("--z", zr, "Numeric value of z");
  verify->add_option("--contour-height", cfg.contour_height, "Half height of the contour rectangle");
  verify->add_option("--contour-panels", cfg.contour_panels, "Gauss panels per edge");
  verify->add_option("--out", cfg.out, "Directory for <suite>.json (stdout if empty)");
  verify->add_option("--fixtures", cfg.fixtures, "Directory of .tdata transition files");

  std::string in;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Summarize a directory of JSON reports");
  report->add_option("--in", in, "Directory written by verify --out")->required();
  report->add_option("--out", report_out, "Output file (stdout if empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(model, order, out);
    if (*verify) {
      cfg.z = zr;
      return cmd_verify(suite, cfg);
    }
    return cmd_report(in, report_out);
  } catch (const tdm::Error& e) {
    std::cerr << "tdm: " << e.what() << "\n";
    return kFail;
  }
}
