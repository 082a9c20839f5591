#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdm/logseries/log_series.hpp"

namespace tdm::logseries {

enum class Model {
  local_X,
  local_Y,
  local_Ybar,
  local_I5,
  local_I6,
  global_X,
  global_Y,
  global_Ybar,
  global_I5,
  global_I6,
};

struct ModelSpec {
  Model id;
  std::string name;
  bool global = false;
  RingPtr ring;
  std::vector<std::string> variables;
  std::vector<Exponent> prefactor;
  RingElement global_factor;
};

const std::vector<Model>& all_models();
ModelSpec model_spec(Model m);
// Throws ModelError for an unknown name.
ModelSpec model_spec(std::string_view name);

// Coefficient at a non-negative multi-index, without the global factor.
ZLaurent coefficient(const ModelSpec& m, const Index& d);
LogSeries build_series(const ModelSpec& m, int order);

// The expansion around the origin of the Y-side written in the X ring:
// variables (x, y), prefactor y^(xi/z), global factor a*xi with a = 3 or 5.
ZLaurent reduced_continuation_coefficient(bool global, int i, int j);
LogSeries reduced_continuation(bool global, int order);

/// Linear map between rings, given on the source basis.
struct LinearMap {
  RingPtr source;
  RingPtr target;
  std::vector<RingElement> images;

  RingElement operator()(const RingElement& a) const;
  ZLaurent operator()(const ZLaurent& a) const;
  bool is_degree_preserving() const;
};

// 1 -> 1, xi -> p, h xi -> p^2, h^2 xi -> p^3, h^3 xi -> p^4, h^k -> 0.
LinearMap continuation_map();

// Applies L to a series. Requires L(u^k c) = L(u)^k L(c) for the prefactor
// nilpotents u and every coefficient c; otherwise MapError. The global factor
// is folded into the coefficients.
LogSeries apply_linear_map(const LinearMap& L, const LogSeries& s);

// Lossless CSV: "# key=value" header lines, then
// index,sector,z_power,monomial,numerator,denominator.
std::string dump_csv(const LogSeries& s, std::string_view model_name = "");
LogSeries parse_csv(std::string_view text);

}  // namespace tdm::logseries
