#include "tdm/pfops/system.hpp"

#include <sstream>

#include "tdm/embedded_data.hpp"
#include "tdm/errors.hpp"

namespace tdm::pfops {

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

OperatorSystem parse_system(std::string_view text) {
  OperatorSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, std::string>> pending;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (key == "system") {
      ls >> sys.name;
    } else if (key == "variables") {
      std::string v;
      while (ls >> v) sys.variables.push_back(v);
    } else if (key == "rank") {
      if (!(ls >> sys.expected_rank) || sys.expected_rank <= 0) throw ParseError(where() + "bad rank");
    } else if (key == "op") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(where() + "operator needs '='");
      std::string name = trim(line.substr(2, eq - 2));
      if (name.empty()) throw ParseError(where() + "operator needs a name");
      pending.emplace_back(name, line.substr(eq + 1));
    } else {
      throw ParseError(where() + "unknown keyword '" + key + "'");
    }
  }
  if (sys.variables.empty()) throw ParseError("system without variables");
  if (pending.empty()) throw ParseError("system without operators");
  for (const auto& [name, expr] : pending) sys.operators.push_back({name, parse_operator(expr, sys.variables)});
  return sys;
}

std::string format_system(const OperatorSystem& sys) {
  std::ostringstream os;
  os << "system " << sys.name << "\nvariables";
  for (const auto& v : sys.variables) os << ' ' << v;
  os << "\nrank " << sys.expected_rank << '\n';
  for (const auto& o : sys.operators) os << "op " << o.name << " = " << o.op.to_string() << '\n';
  return os.str();
}

const std::vector<std::string>& builtin_system_names() {
  static const std::vector<std::string> names{"local_X",  "local_Y",         "global_X",
                                              "global_Y", "local_Y_ambient", "global_Y_ambient"};
  return names;
}

OperatorSystem builtin_system(std::string_view name) {
  if (name == "local_X") return parse_system(data::system_local_X);
  if (name == "local_Y") return parse_system(data::system_local_Y);
  if (name == "global_X") return parse_system(data::system_global_X);
  if (name == "global_Y") return parse_system(data::system_global_Y);
  if (name == "local_Y_ambient") return parse_system(data::system_local_Y_ambient);
  if (name == "global_Y_ambient") return parse_system(data::system_global_Y_ambient);
  throw ParseError("unknown system '" + std::string(name) + "'");
}

bool AnnihilationReport::passed() const {
  for (const auto& o : operators) {
    if (!o.passed) return false;
  }
  return true;
}

AnnihilationReport verify_annihilation(const OperatorSystem& sys, const LogSeries& s, int order) {
  AnnihilationReport rep;
  for (const auto& [name, op] : sys.operators) {
    int tracked = tracked_order(op, s);
    if (order > tracked) {
      throw OrderTooLow(name + ": order " + std::to_string(order) + " exceeds tracked order " +
                        std::to_string(tracked));
    }
    LogSeries out = apply(op, s);
    OperatorCheck check{name, true, order, std::nullopt, ZLaurent(s.spec)};
    for (const auto& [e, c] : out.coeffs) {
      if (logseries::total_degree(e) > order) continue;
      ZLaurent full = out.global_factor * c;
      if (!full.is_zero()) {
        check.passed = false;
        check.witness = e;
        check.witness_value = full;
        break;
      }
    }
    rep.operators.push_back(std::move(check));
  }
  return rep;
}

}  // namespace tdm::pfops
