#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdm/logseries/log_series.hpp"

namespace tdm::pfops {

using cohring::Rational;
using cohring::ZLaurent;
using logseries::Index;
using logseries::LogSeries;

/// Commutative polynomial in D_1..D_n (D_v = z delta_v) and z.
/// Monomial keys hold n + 1 exponents, z last.
class OpPoly {
 public:
  OpPoly() = default;
  explicit OpPoly(std::size_t nvars) : n_(nvars) {}

  static OpPoly constant(std::size_t n, const Rational& c);
  static OpPoly d(std::size_t n, std::size_t v);
  static OpPoly z(std::size_t n);

  std::size_t nvars() const { return n_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  OpPoly& operator+=(const OpPoly& o);
  OpPoly& operator-=(const OpPoly& o);
  OpPoly& operator*=(const Rational& c);
  friend OpPoly operator*(const OpPoly& a, const OpPoly& b);
  friend bool operator==(const OpPoly& a, const OpPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  // D_v -> D_v + shift_v z
  OpPoly shifted(const Index& shift) const;
  // D_v -> sum_w m[v][w] D'_w in a ring with `new_n` D-variables.
  OpPoly linear_substitution(const std::vector<std::vector<Rational>>& m, std::size_t new_n) const;
  ZLaurent evaluate(const std::vector<ZLaurent>& d, const ZLaurent& z) const;

  void add_term(const std::vector<int>& mono, const Rational& c);

 private:
  std::size_t n_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

/// sum_a v^a P_a(D, z), variable monomials to the left of the D symbols.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::vector<std::string> variables) : vars_(std::move(variables)) {}

  static DiffOperator constant(std::vector<std::string> vars, const Rational& c);
  static DiffOperator d(std::vector<std::string> vars, std::string_view v);
  static DiffOperator z(std::vector<std::string> vars);
  static DiffOperator variable(std::vector<std::string> vars, std::string_view v, int power = 1);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Index, OpPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t variable_index(std::string_view v) const;

  void add_term(const Index& a, const OpPoly& p);
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const Rational& c);
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  // v^a x this
  DiffOperator left_multiplied(const Index& a) const;
  // min over terms of the total degree of the variable monomial
  int min_shift() const;
  std::string to_string() const;

 private:
  void check_same(const DiffOperator& o) const;

  std::vector<std::string> vars_;
  std::map<Index, OpPoly> terms_;
};

inline DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
inline DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
inline DiffOperator operator*(DiffOperator a, const Rational& c) { return a *= c; }
inline bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

// Tokens: D_<var>, z, variable names, ^int (negative only on variables),
// rationals, parentheses, * + -. Products are read left to right.
DiffOperator parse_operator(std::string_view text, const std::vector<std::string>& variables);

/// new_w = prod_v old_v^(exponents[w][v])
struct MonomialMap {
  std::vector<std::string> old_vars;
  std::vector<std::string> new_vars;
  std::vector<std::vector<int>> exponents;
};

// x = q1^-1, y = q1 q2
MonomialMap conifold_substitution();

// Rewrites `op` (in map.old_vars) in the new variables. Throws MapError when
// the exponent matrix is not unimodular.
DiffOperator substitute_variables(const DiffOperator& op, const MonomialMap& map);

struct UnitFactor {
  Rational c;
  Index monomial;
};
// (c, u) with a = c v^u b, if any.
std::optional<UnitFactor> unit_factor(const DiffOperator& a, const DiffOperator& b);

// Conjugated action on a series. Output keeps negative indices and is
// truncated to the tracked order s.order + op.min_shift().
LogSeries apply(const DiffOperator& op, const LogSeries& s);
int tracked_order(const DiffOperator& op, const LogSeries& s);

}  // namespace tdm::pfops
