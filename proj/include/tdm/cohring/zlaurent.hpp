#pragma once

#include <map>
#include <string>

#include "tdm/cohring/ring_element.hpp"

namespace tdm::cohring {

/// Ring-valued Laurent polynomial in the formal parameter z.
class ZLaurent {
 public:
  ZLaurent() = default;
  explicit ZLaurent(RingPtr spec) : spec_(std::move(spec)) {}
  ZLaurent(const RingElement& c, int power = 0);

  static ZLaurent zero(const RingPtr& spec) { return ZLaurent(spec); }
  static ZLaurent one(const RingPtr& spec) { return ZLaurent(RingElement::one(spec)); }
  static ZLaurent scalar(const RingPtr& spec, const Rational& c, int power = 0) {
    return ZLaurent(RingElement::scalar(spec, c), power);
  }
  // c * z^k with c a ring element.
  static ZLaurent monomial(const RingElement& c, int power) { return ZLaurent(c, power); }

  const RingPtr& spec() const { return spec_; }
  const std::map<int, RingElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_power() const;
  int max_power() const;
  RingElement coefficient(int power) const;

  ZLaurent& operator+=(const ZLaurent& o);
  ZLaurent& operator-=(const ZLaurent& o);
  ZLaurent& operator*=(const ZLaurent& o);
  ZLaurent& operator*=(const Rational& c);
  // Multiplication by z^k.
  ZLaurent shifted(int k) const;

  std::string to_string() const;
  friend bool operator==(const ZLaurent& a, const ZLaurent& b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }

 private:
  void add(int power, const RingElement& c);
  void check_same(const ZLaurent& o) const;

  RingPtr spec_;
  std::map<int, RingElement> terms_;
};

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b);
inline ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
inline ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
inline ZLaurent operator*(ZLaurent a, const Rational& c) { return a *= c; }
inline ZLaurent operator*(const Rational& c, ZLaurent a) { return a *= c; }
inline bool operator!=(const ZLaurent& a, const ZLaurent& b) { return !(a == b); }

// Inverse of c z^k (1 + n) with n nilpotent, by the terminating geometric
// series. The scalar (unit) components of `a` must sit in a single z-power;
// otherwise NotInvertible.
ZLaurent zl_invert(const ZLaurent& a);

}  // namespace tdm::cohring
