#pragma once

#include <string>
#include <vector>

#include "tdm/cohring/gamma_monomial.hpp"

namespace tdm::fjrw {

using cohring::GammaMonomial;
using cohring::Rational;

// W = x^3 + y^3 + z^3 + u^3, G = <J_W>; narrow sector basis phi_0, phi_1.
struct Descriptor {
  std::string potential = "x^3+y^3+z^3+u^3";
  std::string group = "<J_W>";
  std::vector<std::string> narrow{"phi0", "phi1"};
};

struct FJRWTerm {
  int l = 0;
  Rational exponent;
  Rational coeff;
};

// The coefficient of t^exponent is constant * coeff.
struct FJRWComponent {
  std::string sector;
  GammaMonomial constant;
  std::vector<FJRWTerm> terms;

  GammaMonomial value(int l) const;
};

struct FJRWSeries {
  bool regularized = false;
  int order = 0;
  FJRWComponent phi0;
  FJRWComponent phi1;
};

// l = 0..order at z = 1
FJRWSeries fjrw_formal(int order);
FJRWSeries fjrw_regularized(int order);

struct Comparison {
  std::string sector;
  bool global = false;
  int order = 0;
  // I5 (resp. I6) coefficient over phi_0 (resp. phi_1), same for every l
  GammaMonomial constant;
  std::vector<Rational> c;  // y^0 coefficients of the stored series
  std::vector<Rational> d;  // regularized coefficients over their constant
  std::vector<Rational> normalized;  // (c_l/d_l)/(c_0/d_0)
};

// Throws ComparisonFailed at the first l with (c_l/d_l) != (c_0/d_0).
std::vector<Rational> normalized_ratios(const std::vector<Rational>& c, const std::vector<Rational>& d);

// Both sectors, I5 against phi_0 then I6 against phi_1.
std::vector<Comparison> compare_limit(bool global, int order);

struct RankAccounting {
  int total = 0;
  int trivial_x = 0;
  int trivial_y = 0;
  int quotient = 0;
  bool operator==(const RankAccounting&) const = default;
};

// Throws AccountingError unless (6, 4, 3, 2) and quotient equals the number
// of narrow generators.
RankAccounting rank_accounting(bool global, int order = 8);

// sector,l,c_l,d_l,ratio_normalized
std::string comparison_csv(const std::vector<Comparison>& rows);

}  // namespace tdm::fjrw
