#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tdm::cli {

struct RunConfig {
  std::string model = "both";  // local, global or both for verify
  int order = 8;
  double tol = 1e-8;
  std::complex<double> z = 1.0;
  double contour_height = 1.0;
  int contour_panels = 8;
  std::string out;
  std::string fixtures;  // directory of *.tdata, empty for the built-in pair

  // Throws std::invalid_argument on tol <= 0, order < 2 or a bad model.
  void validate() const;
  std::vector<bool> models() const;  // false = local, true = global
};

struct CheckResult {
  std::string suite;
  std::string check_id;
  std::string paper_anchor;
  bool passed = false;
  std::optional<double> max_error;
  std::optional<double> tolerance;
  std::string witness;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// One suite, never throws on a failing check; library errors become failed
// checks with the message as witness.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);

nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks);
std::vector<CheckResult> from_json(const nlohmann::json& j);

struct Summary {
  std::string text;
  bool all_passed = false;
  std::vector<std::string> missing;
};

// Aggregates <suite>.json reports. Throws std::runtime_error when the
// directory holds no report.
Summary summarize_directory(const std::string& dir);

}  // namespace tdm::cli
