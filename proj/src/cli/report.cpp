#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tdm/cli/suites.hpp"

namespace tdm::cli {

Summary summarize_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("no report directory " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no JSON reports in " + dir);

  std::map<std::string, std::vector<CheckResult>> by_suite;
  for (const auto& f : files) {
    std::ifstream in(f);
    nlohmann::json j;
    try {
      in >> j;
      for (auto& c : from_json(j)) by_suite[c.suite].push_back(std::move(c));
    } catch (const std::exception& e) {
      throw std::runtime_error(f.filename().string() + ": " + e.what());
    }
  }

  Summary s;
  s.all_passed = true;
  std::ostringstream os;
  os << "# transition-dmod verification summary\n\n## Suites\n\n";
  for (const auto& name : suite_names()) {
    auto it = by_suite.find(name);
    if (it == by_suite.end()) {
      os << "- " << name << ": MISSING\n";
      s.missing.push_back(name);
      continue;
    }
    int pass = 0;
    for (const auto& c : it->second) pass += c.passed ? 1 : 0;
    int total = static_cast<int>(it->second.size());
    if (pass != total) s.all_passed = false;
    os << "- " << name << ": " << (pass == total ? "pass" : "FAIL") << " (" << pass << "/" << total << ")\n";
  }
  for (const auto& [name, checks] : by_suite) {
    if (!is_suite(name)) os << "- " << name << ": unknown suite (" << checks.size() << " checks)\n";
  }

  os << "\n## Failures\n\n";
  bool any = false;
  for (const auto& [name, checks] : by_suite) {
    for (const auto& c : checks) {
      if (c.passed) continue;
      any = true;
      os << "- " << name << "/" << c.check_id << ": " << c.witness << "\n";
    }
  }
  if (!any) os << "none\n";

  os << "\n## Anchor index\n\n";
  std::map<std::string, std::vector<std::string>> anchors;
  for (const auto& [name, checks] : by_suite) {
    for (const auto& c : checks) anchors[c.paper_anchor].push_back(name + "/" + c.check_id);
  }
  for (const auto& [anchor, ids] : anchors) {
    os << "- " << anchor << ": " << ids.size() << " check" << (ids.size() == 1 ? "" : "s") << "\n";
  }
  s.text = os.str();
  return s;
}

}  // namespace tdm::cli
