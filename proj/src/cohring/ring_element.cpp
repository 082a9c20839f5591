#include "tdm/cohring/ring_element.hpp"

#include <sstream>

#include "tdm/cohring/ring_io.hpp"
#include "tdm/errors.hpp"

namespace tdm::cohring {

RingElement::RingElement(RingPtr spec) : spec_(std::move(spec)) {
  if (spec_) coords_.assign(spec_->dimension(), Rational(0));
}

RingElement::RingElement(RingPtr spec, std::vector<Rational> coords)
    : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (!spec_ || coords_.size() != spec_->dimension()) {
    throw SpecMismatch("coordinate vector does not match ring dimension");
  }
}

RingElement RingElement::scalar(const RingPtr& spec, const Rational& c) {
  RingElement e(spec);
  e.coords_[0] = c;
  return e;
}

RingElement RingElement::generator(const RingPtr& spec, std::string_view name) {
  auto g = spec->generator_index(name);
  if (!g) throw SpecMismatch("ring '" + spec->name() + "' has no generator '" + std::string(name) + "'");
  Monomial m(spec->generator_count(), 0);
  m[*g] = 1;
  return from_polynomial(spec, Polynomial{{m, Rational(1)}});
}

RingElement RingElement::basis_element(const RingPtr& spec, std::size_t i) {
  RingElement e(spec);
  e.coords_.at(i) = 1;
  return e;
}

RingElement RingElement::from_polynomial(const RingPtr& spec, const Polynomial& p) {
  return RingElement(spec, spec->normal_form(p));
}

Rational RingElement::scalar_part() const { return coords_.empty() ? Rational(0) : coords_[0]; }

bool RingElement::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

bool RingElement::is_homogeneous() const {
  std::optional<int> d;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    int bd = spec_->basis_degree(i);
    if (d && *d != bd) return false;
    d = bd;
  }
  return true;
}

std::optional<int> RingElement::degree() const {
  if (is_zero() || !is_homogeneous()) return std::nullopt;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return spec_->basis_degree(i);
  }
  return std::nullopt;
}

void RingElement::check_same(const RingElement& o) const {
  if (spec_ != o.spec_) {
    throw SpecMismatch("ring elements belong to different ring specs (" +
                       (spec_ ? spec_->name() : std::string("<none>")) + " vs " +
                       (o.spec_ ? o.spec_->name() : std::string("<none>")) + ")");
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) { return *this = ring_mul(*this, o); }

RingElement& RingElement::operator*=(const Rational& c) {
  for (auto& x : coords_) x *= c;
  return *this;
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  if (a.spec() != b.spec()) {
    throw SpecMismatch("ring elements belong to different ring specs");
  }
  const auto& spec = *a.spec();
  std::vector<Rational> out(spec.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (a.coord(i) == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (b.coord(j) == 0) continue;
      Rational ab = a.coord(i) * b.coord(j);
      for (const auto& [k, c] : spec.product(i, j)) out[k] += ab * c;
    }
  }
  return RingElement(a.spec(), std::move(out));
}

RingElement RingElement::pow(int k) const {
  if (k < 0) throw NotInvertible("negative power of a ring element");
  RingElement r = one(spec_);
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.spec_ == b.spec_ && a.coords_ == b.coords_;
}

std::string RingElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Rational& c = coords_[i];
    if (c == 0) continue;
    bool unit = i == 0;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (unit || mag != 1) {
      os << cohring::to_string(mag);
      if (!unit) os << '*';
    }
    if (!unit) os << spec_->basis_text(i);
    first = false;
  }
  return first ? "0" : os.str();
}

RingElement parse_element(const RingPtr& spec, std::string_view text) {
  return RingElement::from_polynomial(spec, parse_polynomial(*spec, text));
}

}  // namespace tdm::cohring
