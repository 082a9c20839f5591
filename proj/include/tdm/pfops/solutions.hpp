#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdm/logseries/log_series.hpp"

namespace tdm::pfops {

using cohring::Rational;
using logseries::ScalarLogSeries;

// Rank over Q of the coefficient vectors, with sector, index and log powers
// as coordinates and z set to z0.
int independence_rank(const std::vector<ScalarLogSeries>& solutions, const Rational& z0 = 1);

struct MonodromyClass {
  enum class Kind { trivial, finite_order, unipotent, mixed };
  Kind kind = Kind::trivial;
  int order = 1;  // for finite_order
  Rational exponent;
  int log_degree = 0;

  std::string to_string() const;
};

MonodromyClass classify_monodromy(const ScalarLogSeries& f, std::string_view v);

struct Filtration {
  int rank = 0;
  int trivial = 0;
  int quotient = 0;
};

// Dimension of the span with trivial monodromy in v. Throws NotABasis when
// the rank is below expected_rank.
Filtration monodromy_filtration(const std::vector<ScalarLogSeries>& solutions, std::string_view v,
                                int expected_rank, const Rational& z0 = 1);

struct RestrictionSplit {
  int rank = 0;
  int trivial_x = 0;
  int trivial_y = 0;
  int intersection = 0;
  int quotient = 0;  // trivial_y - intersection
};

RestrictionSplit restriction_split(const std::vector<ScalarLogSeries>& solutions, std::string_view x,
                                   std::string_view y, int expected_rank, const Rational& z0 = 1);

}  // namespace tdm::pfops
