#include "tdm/cohring/gamma_monomial.hpp"

#include <cmath>
#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::cohring {

GammaMonomial GammaMonomial::gamma(const Rational& a) {
  if (is_integer(a) && a <= 0) throw NotInvertible("Gamma has a pole at " + cohring::to_string(a));
  // a = f + n with f in (0, 1].
  long n = floor_to_long(a);
  Rational f = a - n;
  if (f == 0) {
    f = 1;
    --n;
  }
  GammaMonomial g;
  if (n >= 0) {
    g.coeff_ = rising_factorial(f, n);
  } else {
    g.coeff_ = 1 / rising_factorial(f + n, -n);
  }
  if (f != 1) g.factors_[f] = 1;
  return g;
}

void GammaMonomial::add_factor(const Rational& a, int k) {
  if (k == 0) return;
  int& e = factors_[a];
  e += k;
  if (e == 0) factors_.erase(a);
}

GammaMonomial& GammaMonomial::operator*=(const GammaMonomial& o) {
  coeff_ *= o.coeff_;
  for (const auto& [a, k] : o.factors_) add_factor(a, k);
  return *this;
}

GammaMonomial& GammaMonomial::operator/=(const GammaMonomial& o) {
  if (o.coeff_ == 0) throw NotInvertible("division by a zero Gamma monomial");
  coeff_ /= o.coeff_;
  for (const auto& [a, k] : o.factors_) add_factor(a, -k);
  return *this;
}

GammaMonomial GammaMonomial::pow(int k) const {
  GammaMonomial r;
  for (int i = 0; i < std::abs(k); ++i) r *= *this;
  return k >= 0 ? r : GammaMonomial() / r;
}

double GammaMonomial::to_double() const {
  double v = coeff_.get_d();
  for (const auto& [a, k] : factors_) v *= std::pow(std::tgamma(a.get_d()), k);
  return v;
}

std::string GammaMonomial::to_string() const {
  std::ostringstream os;
  os << cohring::to_string(coeff_);
  for (const auto& [a, k] : factors_) {
    os << "*Gamma(" << cohring::to_string(a) << ")";
    if (k != 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace tdm::cohring
