#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdm/cohring/ring_spec.hpp"

namespace tdm::cohring {

/// Element of a RingSpec: exact rational coordinates on the spec's basis.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(RingPtr spec);
  RingElement(RingPtr spec, std::vector<Rational> coords);

  static RingElement zero(const RingPtr& spec) { return RingElement(spec); }
  static RingElement one(const RingPtr& spec) { return scalar(spec, 1); }
  static RingElement scalar(const RingPtr& spec, const Rational& c);
  static RingElement generator(const RingPtr& spec, std::string_view name);
  static RingElement basis_element(const RingPtr& spec, std::size_t i);
  static RingElement from_polynomial(const RingPtr& spec, const Polynomial& p);

  const RingPtr& spec() const { return spec_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(std::size_t i) const { return coords_[i]; }

  // Coefficient of the unit.
  Rational scalar_part() const;
  bool is_zero() const;
  bool is_nilpotent() const { return scalar_part() == 0; }
  bool is_homogeneous() const;
  // Degree when homogeneous and nonzero.
  std::optional<int> degree() const;

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const RingElement& o);
  RingElement& operator*=(const Rational& c);

  RingElement pow(int k) const;
  std::string to_string() const;

  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  void check_same(const RingElement& o) const;

  RingPtr spec_;
  std::vector<Rational> coords_;
};

RingElement ring_mul(const RingElement& a, const RingElement& b);

inline RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
inline RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
inline RingElement operator*(const RingElement& a, const RingElement& b) { return ring_mul(a, b); }
inline RingElement operator*(RingElement a, const Rational& c) { return a *= c; }
inline RingElement operator*(const Rational& c, RingElement a) { return a *= c; }
inline RingElement operator-(RingElement a) { return a *= Rational(-1); }
inline bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

// Parses a polynomial in the spec's generators ("3*h + 2*xi", "xi^2 - h*xi").
RingElement parse_element(const RingPtr& spec, std::string_view text);

}  // namespace tdm::cohring
