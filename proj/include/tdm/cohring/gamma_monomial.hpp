#pragma once

#include <map>
#include <string>

#include "tdm/cohring/rational.hpp"

namespace tdm::cohring {

/// Exact value c * prod Gamma(a)^k with every argument a in (0, 1).
///
/// Gamma at rational points is carried symbolically; `gamma(a)` reduces the
/// argument with the functional equation, so e.g. gamma(4/3) becomes
/// (1/3) * Gamma(1/3) and ratios that are provably rational collapse.
class GammaMonomial {
 public:
  GammaMonomial() = default;
  explicit GammaMonomial(Rational c) : coeff_(std::move(c)) {}

  // Gamma(a); throws NotInvertible at poles (a a non-positive integer).
  static GammaMonomial gamma(const Rational& a);

  const Rational& coefficient() const { return coeff_; }
  const std::map<Rational, int>& factors() const { return factors_; }
  bool is_rational() const { return factors_.empty(); }

  GammaMonomial& operator*=(const GammaMonomial& o);
  GammaMonomial& operator/=(const GammaMonomial& o);
  GammaMonomial pow(int k) const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const GammaMonomial& a, const GammaMonomial& b) {
    return a.coeff_ == b.coeff_ && a.factors_ == b.factors_;
  }

 private:
  void add_factor(const Rational& a, int k);

  Rational coeff_ = 1;
  std::map<Rational, int> factors_;
};

inline GammaMonomial operator*(GammaMonomial a, const GammaMonomial& b) { return a *= b; }
inline GammaMonomial operator/(GammaMonomial a, const GammaMonomial& b) { return a /= b; }

}  // namespace tdm::cohring
