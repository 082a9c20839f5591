#include "tdm/cohring/zlaurent.hpp"

#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::cohring {

ZLaurent::ZLaurent(const RingElement& c, int power) : spec_(c.spec()) { add(power, c); }

void ZLaurent::add(int power, const RingElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(power);
  if (it == terms_.end()) {
    terms_.emplace(power, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void ZLaurent::check_same(const ZLaurent& o) const {
  if (spec_ != o.spec_) throw SpecMismatch("z-Laurent polynomials over different ring specs");
}

int ZLaurent::min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int ZLaurent::max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

RingElement ZLaurent::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? RingElement::zero(spec_) : it->second;
}

ZLaurent& ZLaurent::operator+=(const ZLaurent& o) {
  check_same(o);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ZLaurent& ZLaurent::operator-=(const ZLaurent& o) {
  check_same(o);
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ZLaurent& ZLaurent::operator*=(const ZLaurent& o) { return *this = *this * o; }

ZLaurent& ZLaurent::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, e] : terms_) e *= c;
  return *this;
}

ZLaurent ZLaurent::shifted(int k) const {
  ZLaurent r(spec_);
  for (const auto& [p, c] : terms_) r.terms_.emplace(p + k, c);
  return r;
}

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
  if (a.spec() != b.spec()) throw SpecMismatch("z-Laurent polynomials over different ring specs");
  ZLaurent r(a.spec());
  for (const auto& [p, c] : a.terms()) {
    for (const auto& [q, d] : b.terms()) r += ZLaurent(c * d, p + q);
  }
  return r;
}

std::string ZLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    os << '(' << c.to_string() << ')';
    if (k != 0) os << "*z^" << k;
    first = false;
  }
  return os.str();
}

ZLaurent zl_invert(const ZLaurent& a) {
  const RingPtr& spec = a.spec();
  if (!spec) throw NotInvertible("cannot invert an empty z-Laurent polynomial");
  std::optional<int> lead;
  Rational c;
  for (const auto& [k, e] : a.terms()) {
    if (e.scalar_part() == 0) continue;
    if (lead) throw NotInvertible("scalar part of " + a.to_string() + " is not a single z-monomial");
    lead = k;
    c = e.scalar_part();
  }
  if (!lead) throw NotInvertible("zero scalar part: " + a.to_string() + " is nilpotent");
  // a = c z^k (1 + n), n nilpotent.
  Rational inv_c = 1 / c;
  ZLaurent n = a.shifted(-*lead) * inv_c - ZLaurent::one(spec);
  ZLaurent sum = ZLaurent::one(spec);
  ZLaurent term = ZLaurent::one(spec);
  ZLaurent minus_n = n * Rational(-1);
  for (int j = 1; j < spec->nilpotency_index(); ++j) {
    term *= minus_n;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum.shifted(-*lead) * inv_c;
}

}  // namespace tdm::cohring
