#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tdm/cohring/zlaurent.hpp"

namespace tdm::logseries {

using cohring::Rational;
using cohring::RingElement;
using cohring::RingPtr;
using cohring::ZLaurent;

using Index = std::vector<int>;

// Exponent of one series variable: v^(scalar + nilpotent/z).
struct Exponent {
  Rational scalar = 0;
  RingElement nilpotent;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.scalar == b.scalar && a.nilpotent == b.nilpotent;
  }
};

/// Truncated series  global_factor * prod_v v^(exponent_v) * sum_d c_d v^d
/// with coefficients c_d in ZLaurent; every stored index has total degree
/// <= order. Indices may go negative only in operator output.
struct LogSeries {
  RingPtr spec;
  std::vector<std::string> variables;
  std::vector<Exponent> prefactor;
  std::map<Index, ZLaurent> coeffs;
  int order = 0;
  ZLaurent global_factor;

  std::size_t variable_index(std::string_view v) const;
  // global_factor * coeffs[d], zero when absent.
  ZLaurent full_coefficient(const Index& d) const;
  // Coefficients restricted to total degree <= n.
  LogSeries truncated(int n) const;
};

int total_degree(const Index& d);
// All non-negative indices with `n` entries and total degree <= order.
std::vector<Index> indices_up_to(std::size_t n, int order);

// Sum of two series with identical variables and prefactors; the global
// factors are folded into the coefficients.
LogSeries add(const LogSeries& a, const LogSeries& b);

// Same variables, prefactors and full coefficients up to the smaller order.
bool same_function(const LogSeries& a, const LogSeries& b);

/// Scalar log-series: sum of c * z^k * prod_v v^(sector_v + d_v) log(v)^(l_v).
struct ScalarLogSeries {
  struct Term {
    Index index;
    Index logs;
    int z_power = 0;
    friend bool operator<(const Term& a, const Term& b) {
      return std::tie(a.index, a.logs, a.z_power) < std::tie(b.index, b.logs, b.z_power);
    }
  };

  std::string label;
  std::vector<std::string> variables;
  std::vector<Rational> sector;
  std::map<Term, Rational> terms;
  int order = 0;

  bool is_zero() const { return terms.empty(); }
  void add(const Term& t, const Rational& c);
};

// Expands the nilpotent prefactor exp(sum_v u_v log(v) / z), multiplies by
// the global factor and returns the nonzero coordinate series, one per ring
// basis monomial (label = basis monomial text).
std::vector<ScalarLogSeries> expand_components(const LogSeries& s);

// Restriction to v = 0 of a series without monodromy in v.
// Throws MonodromyObstruction for a fractional or nilpotent exponent in v.
LogSeries limit_at_zero(const LogSeries& s, std::string_view v);

}  // namespace tdm::logseries
