#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tdm/cohring/rational.hpp"

namespace tdm::conifold {

using cohring::Rational;
using Class = std::vector<int>;

struct GWEntry {
  Class beta;
  Rational n;
  // N repeats on beta + j E_1 for every j >= 0, an infinite fiber
  bool tower = false;
};

// Curve classes are coordinates in the basis b_1..b_{r+m}; the last m span
// the exceptional cone.
struct TransitionData {
  std::string name;
  int r = 0;
  int m = 0;
  int k = 0;
  std::vector<Class> basis;
  std::vector<Class> exceptional;
  std::vector<Class> phi;  // r rows of length r + m
  std::vector<GWEntry> table;
  std::map<Class, Rational> expected;  // Y-side invariants, if given

  int rank() const { return r + m; }
  Class push_forward(const Class& beta) const;
  void validate() const;
};

TransitionData parse_transition(std::string_view text);
TransitionData load_transition(const std::string& path);
// "conifold_1curve" and "small_2curve"
TransitionData builtin_transition(std::string_view name);
std::vector<std::string> builtin_transition_names();

// Coefficient of q^beta: z^-2 times sum_j curve[j] [b_j] and z^-3 times point [pt].
struct JTerm {
  std::vector<Rational> curve;
  Rational point;
  bool operator==(const JTerm&) const = default;
};

// Small J-function beyond its prefactor q^{T/z}, truncated at total degree order.
struct CYJSeries {
  int rank = 0;
  int order = 0;
  std::map<Class, JTerm> terms;

  const JTerm* find(const Class& beta) const;
  bool operator==(const CYJSeries& o) const { return rank == o.rank && order == o.order && terms == o.terms; }
};

int degree(const Class& beta);
CYJSeries operator+(const CYJSeries& a, const CYJSeries& b);

// N_beta table plus the multiple covers N_{nE_i} = 1/n^3.
std::map<Class, Rational> full_table(const TransitionData& data, int order);

CYJSeries cy_j_series(const TransitionData& data, int order);
CYJSeries cy_j_series(int rank, const std::map<Class, Rational>& table, int order);
// sum_n q^{nE_i} (z^-2 [E_i]/n^2 - 2 z^-3 [pt]/n^3), i counted from 1
CYJSeries multiple_cover_series(const TransitionData& data, int i, int order);

struct Decomposition {
  CYJSeries j1;
  CYJSeries j2;
};
// j1: phi_* beta != 0, j2: the rest. Throws TransitionDataError if j2 is not
// the sum of the multiple cover series.
Decomposition decompose(const TransitionData& data, int order);

// No negative exponents in the exceptional variables, finite support there,
// no tower entries.
bool is_polynomial_in_exceptional(const CYJSeries& j1, const TransitionData& data);

// q_{r+1} = ... = q_{r+m} = 1 followed by [beta] -> [phi_* beta]. Coefficients
// of the result are indexed by Y classes of degree <= order.
CYJSeries restrict_to_locus(const CYJSeries& j1, const TransitionData& data, int order);
// N_{beta'} read off the point coefficients of a restricted series.
std::map<Class, Rational> invariants(const CYJSeries& y);

std::string format_class(const Class& beta);

}  // namespace tdm::conifold
