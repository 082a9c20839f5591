#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdm/pfops/diff_operator.hpp"

namespace tdm::pfops {

struct NamedOperator {
  std::string name;
  DiffOperator op;
};

struct OperatorSystem {
  std::string name;
  std::vector<std::string> variables;
  int expected_rank = 0;
  std::vector<NamedOperator> operators;
};

// Lines "system <name>", "variables <v...>", "rank <n>", "op <Name> = <expr>";
// '#' starts a comment.
OperatorSystem parse_system(std::string_view text);
std::string format_system(const OperatorSystem& sys);

// local_X, local_Y, global_X, global_Y, local_Y_ambient, global_Y_ambient
OperatorSystem builtin_system(std::string_view name);
const std::vector<std::string>& builtin_system_names();

struct OperatorCheck {
  std::string name;
  bool passed = true;
  int checked_order = 0;
  std::optional<Index> witness;
  ZLaurent witness_value;
};

struct AnnihilationReport {
  std::vector<OperatorCheck> operators;
  bool passed() const;
};

// Exact check that every coefficient of op(s) up to `order` vanishes.
// Throws OrderTooLow when `order` exceeds an operator's tracked order.
AnnihilationReport verify_annihilation(const OperatorSystem& sys, const LogSeries& s, int order);

}  // namespace tdm::pfops
