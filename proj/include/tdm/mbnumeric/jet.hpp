#pragma once

#include <complex>
#include <vector>

#include "tdm/cohring/zlaurent.hpp"

namespace tdm::mbnumeric {

using cplx = std::complex<double>;
using cohring::RingElement;
using cohring::RingPtr;
using cohring::ZLaurent;

/// Ring element with complex double coordinates.
class Jet {
 public:
  Jet() = default;
  explicit Jet(RingPtr spec);
  Jet(RingPtr spec, std::vector<cplx> coords);

  static Jet scalar(const RingPtr& spec, cplx c);
  static Jet from_element(const RingElement& e);
  // Evaluation of a Laurent polynomial in z at a numeric z.
  static Jet from_zlaurent(const ZLaurent& a, cplx z);

  const RingPtr& spec() const { return spec_; }
  const std::vector<cplx>& coords() const { return coords_; }
  cplx coord(std::size_t i) const { return coords_[i]; }
  cplx scalar_part() const { return coords_[0]; }
  Jet nilpotent_part() const;
  double max_abs() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(cplx c);

 private:
  void check_same(const Jet& o) const;

  RingPtr spec_;
  std::vector<cplx> coords_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator*(Jet a, cplx c) { return a *= c; }
inline Jet operator*(cplx c, Jet a) { return a *= c; }
inline Jet operator-(Jet a) { return a *= cplx(-1); }

double max_abs_diff(const Jet& a, const Jet& b);
Jet conj(const Jet& a);

// f(a0 + n) = sum_k derivs[k] n^k / k!, with a0 the scalar part.
Jet taylor_compose(const Jet& a, const std::vector<cplx>& derivs);

// Scalar special functions (principal branches).
cplx gamma(cplx a);
// m-th derivative of the digamma function.
cplx polygamma(int m, cplx a);

enum class Special { gamma, reciprocal_gamma, sin, exp, log, reciprocal };
// Throws PoleError for gamma at a pole and for 1/0.
Jet jet_special(Special fn, const Jet& a);

Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);
Jet jet_sin(const Jet& a);
// sin(pi a), exact at integer scalar parts
Jet jet_sinpi(const Jet& a);
Jet jet_reciprocal(const Jet& a);
Jet jet_gamma(const Jet& a);
Jet jet_rgamma(const Jet& a);
// base^e = exp(e log base)
Jet jet_power(cplx base, const Jet& e);
// sin(pi w)/(pi w) and (exp(2 pi i w) - 1)/(2 pi i w), both 1 at w = 0
Jet jet_sinc(const Jet& w);
Jet jet_expm1c(const Jet& w);

}  // namespace tdm::mbnumeric
