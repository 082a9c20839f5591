#include "tdm/mbnumeric/jet.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "tdm/errors.hpp"

namespace tdm::mbnumeric {

namespace {

using std::numbers::pi;
constexpr cplx I(0, 1);
constexpr int kAsymTerms = 10;
constexpr double kShiftTo = 20.0;

struct Table {
  RingPtr keep;
  std::vector<std::vector<std::pair<std::size_t, double>>> entries;
};

const Table& table_for(const RingPtr& spec) {
  static std::mutex mu;
  static std::map<const cohring::RingSpec*, Table> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(spec.get());
  if (it != cache.end()) return it->second;
  Table t{spec, {}};
  const std::size_t n = spec->dimension();
  t.entries.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : spec->product(i, j)) t.entries[i * n + j].emplace_back(k, c.get_d());
    }
  }
  return cache.emplace(spec.get(), std::move(t)).first->second;
}

bool is_pole(cplx a) { return a.imag() == 0 && a.real() <= 0 && a.real() == std::round(a.real()); }

int shift_count(cplx a) { return a.real() >= kShiftTo ? 0 : static_cast<int>(std::ceil(kShiftTo - a.real())); }

double bernoulli(int k) { return boost::math::bernoulli_b2n<double>(k); }

cplx loggamma_asym(cplx w) {
  cplx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * pi);
  cplx w2 = w * w;
  cplx wp = w;
  for (int k = 1; k <= kAsymTerms; ++k) {
    r += bernoulli(k) / (2.0 * k * (2.0 * k - 1) * wp);
    wp *= w2;
  }
  return r;
}

cplx polygamma_asym(int m, cplx w) {
  if (m == 0) {
    cplx r = std::log(w) - 1.0 / (2.0 * w);
    cplx w2 = w * w;
    cplx wp = w2;
    for (int k = 1; k <= kAsymTerms; ++k) {
      r -= bernoulli(k) / (2.0 * k * wp);
      wp *= w2;
    }
    return r;
  }
  cplx r = std::tgamma(m) / std::pow(w, m) + std::tgamma(m + 1) / (2.0 * std::pow(w, m + 1));
  for (int k = 1; k <= kAsymTerms; ++k) {
    r += bernoulli(k) * std::tgamma(2 * k + m) / (std::tgamma(2 * k + 1) * std::pow(w, 2 * k + m));
  }
  return (m % 2 == 1) ? r : -r;
}

Jet nil_exp(const Jet& n) {
  // exp of a nilpotent element
  Jet r = Jet::scalar(n.spec(), 1);
  Jet term = r;
  for (int k = 1; k < n.spec()->nilpotency_index(); ++k) {
    term = term * n * cplx(1.0 / k);
    r += term;
  }
  return r;
}

}  // namespace

Jet::Jet(RingPtr spec) : spec_(std::move(spec)), coords_(spec_->dimension()) {}

Jet::Jet(RingPtr spec, std::vector<cplx> coords) : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (coords_.size() != spec_->dimension()) throw SpecMismatch("jet has the wrong number of coordinates");
}

Jet Jet::scalar(const RingPtr& spec, cplx c) {
  Jet j(spec);
  j.coords_[0] = c;
  return j;
}

Jet Jet::from_element(const RingElement& e) {
  Jet j(e.spec());
  for (std::size_t i = 0; i < j.coords_.size(); ++i) j.coords_[i] = e.coord(i).get_d();
  return j;
}

Jet Jet::from_zlaurent(const ZLaurent& a, cplx z) {
  Jet j(a.spec());
  for (const auto& [k, c] : a.terms()) j += from_element(c) * std::pow(z, k);
  return j;
}

Jet Jet::nilpotent_part() const {
  Jet r = *this;
  r.coords_[0] = 0;
  return r;
}

double Jet::max_abs() const {
  double m = 0;
  for (const auto& c : coords_) m = std::max(m, std::abs(c));
  return m;
}

void Jet::check_same(const Jet& o) const {
  if (spec_ != o.spec_) throw SpecMismatch("jets over different rings");
}

Jet& Jet::operator+=(const Jet& o) {
  check_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  check_same(o);
  const Table& t = table_for(spec_);
  const std::size_t n = coords_.size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coords_[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.coords_[j] == 0.0) continue;
      cplx p = coords_[i] * o.coords_[j];
      for (const auto& [k, c] : t.entries[i * n + j]) out[k] += p * c;
    }
  }
  coords_ = std::move(out);
  return *this;
}

Jet& Jet::operator*=(cplx c) {
  for (auto& x : coords_) x *= c;
  return *this;
}

double max_abs_diff(const Jet& a, const Jet& b) { return (a - b).max_abs(); }

Jet conj(const Jet& a) {
  std::vector<cplx> c;
  for (const auto& x : a.coords()) c.push_back(std::conj(x));
  return Jet(a.spec(), c);
}

Jet taylor_compose(const Jet& a, const std::vector<cplx>& derivs) {
  Jet n = a.nilpotent_part();
  Jet r(a.spec());
  Jet power = Jet::scalar(a.spec(), 1);
  double fact = 1;
  const int nil = a.spec()->nilpotency_index();
  for (int k = 0; k < nil && k < static_cast<int>(derivs.size()); ++k) {
    if (k > 0) {
      power = power * n;
      fact *= k;
    }
    r += power * (derivs[k] / fact);
  }
  return r;
}

cplx gamma(cplx a) {
  if (is_pole(a)) throw PoleError("Gamma has a pole at " + std::to_string(a.real()));
  int n = shift_count(a);
  cplx prod = 1;
  for (int j = 0; j < n; ++j) prod *= a + double(j);
  return std::exp(loggamma_asym(a + double(n))) / prod;
}

cplx polygamma(int m, cplx a) {
  if (is_pole(a)) throw PoleError("polygamma has a pole at " + std::to_string(a.real()));
  int n = shift_count(a);
  cplx r = polygamma_asym(m, a + double(n));
  cplx s = 0;
  for (int j = 0; j < n; ++j) s += std::pow(a + double(j), -(m + 1));
  double f = std::tgamma(m + 1) * (m % 2 == 0 ? 1.0 : -1.0);
  return r - f * s;
}

Jet jet_exp(const Jet& a) { return nil_exp(a.nilpotent_part()) * std::exp(a.scalar_part()); }

Jet jet_log(const Jet& a) {
  cplx a0 = a.scalar_part();
  if (a0 == 0.0) throw PoleError("log of a nilpotent element");
  std::vector<cplx> d{std::log(a0)};
  double fact = 1;
  for (int k = 1; k < a.spec()->nilpotency_index(); ++k) {
    d.push_back((k % 2 == 1 ? 1.0 : -1.0) * fact / std::pow(a0, k));
    fact *= k;
  }
  return taylor_compose(a, d);
}

Jet jet_sin(const Jet& a) {
  cplx s = std::sin(a.scalar_part());
  cplx c = std::cos(a.scalar_part());
  std::vector<cplx> d;
  for (int k = 0; k < a.spec()->nilpotency_index(); ++k) {
    cplx v = (k % 2 == 0) ? s : c;
    d.push_back((k % 4 >= 2) ? -v : v);
  }
  return taylor_compose(a, d);
}

Jet jet_sinpi(const Jet& a) {
  cplx a0 = a.scalar_part();
  cplx s;
  cplx c;
  if (a0.imag() == 0 && a0.real() == std::round(a0.real())) {
    s = 0;
    c = std::fmod(std::abs(a0.real()), 2.0) == 0 ? 1.0 : -1.0;
  } else {
    s = std::sin(pi * a0);
    c = std::cos(pi * a0);
  }
  std::vector<cplx> d;
  double pk = 1;
  for (int k = 0; k < a.spec()->nilpotency_index(); ++k) {
    cplx v = (k % 2 == 0) ? s : c;
    d.push_back(((k % 4 >= 2) ? -v : v) * pk);
    pk *= pi;
  }
  return taylor_compose(a, d);
}

Jet jet_reciprocal(const Jet& a) {
  cplx a0 = a.scalar_part();
  if (a0 == 0.0) throw PoleError("reciprocal of a nilpotent element");
  std::vector<cplx> d;
  double fact = 1;
  for (int k = 0; k < a.spec()->nilpotency_index(); ++k) {
    if (k > 0) fact *= k;
    d.push_back((k % 2 == 0 ? 1.0 : -1.0) * fact / std::pow(a0, k + 1));
  }
  return taylor_compose(a, d);
}

Jet jet_gamma(const Jet& a) {
  cplx a0 = a.scalar_part();
  if (is_pole(a0)) throw PoleError("Gamma has a pole at " + std::to_string(a0.real()));
  Jet n = a.nilpotent_part();
  Jet L(a.spec());
  Jet power = Jet::scalar(a.spec(), 1);
  double fact = 1;
  for (int k = 1; k < a.spec()->nilpotency_index(); ++k) {
    power = power * n;
    fact *= k;
    L += power * (polygamma(k - 1, a0) / fact);
  }
  return nil_exp(L) * gamma(a0);
}

Jet jet_rgamma(const Jet& a) {
  if (a.scalar_part().real() < 0.5) {
    Jet one_minus = Jet::scalar(a.spec(), 1) - a;
    return jet_sinpi(a) * jet_gamma(one_minus) * cplx(1 / pi);
  }
  return jet_reciprocal(jet_gamma(a));
}

Jet jet_power(cplx base, const Jet& e) {
  if (base == 0.0) throw PoleError("power of zero");
  return jet_exp(e * std::log(base));
}

Jet jet_sinc(const Jet& w) {
  if (std::abs(w.scalar_part()) < 1e-3) {
    Jet x2 = w * w * cplx(pi * pi);
    Jet r = Jet::scalar(w.spec(), 1);
    Jet term = r;
    for (int k = 1; k < 30; ++k) {
      term = term * x2 * cplx(-1.0 / ((2.0 * k) * (2.0 * k + 1)));
      r += term;
    }
    return r;
  }
  return jet_sinpi(w) * jet_reciprocal(w * cplx(pi));
}

Jet jet_expm1c(const Jet& w) {
  Jet x = w * (2 * pi * I);
  if (std::abs(w.scalar_part()) < 1e-3) {
    Jet r = Jet::scalar(w.spec(), 1);
    Jet term = r;
    for (int k = 1; k < 40; ++k) {
      term = term * x * cplx(1.0 / (k + 1));
      r += term;
    }
    return r;
  }
  return (jet_exp(x) - Jet::scalar(w.spec(), 1)) * jet_reciprocal(x);
}

Jet jet_special(Special fn, const Jet& a) {
  switch (fn) {
    case Special::gamma:
      return jet_gamma(a);
    case Special::reciprocal_gamma:
      return jet_rgamma(a);
    case Special::sin:
      return jet_sin(a);
    case Special::exp:
      return jet_exp(a);
    case Special::log:
      return jet_log(a);
    case Special::reciprocal:
      return jet_reciprocal(a);
  }
  throw PoleError("unknown special function");
}

}  // namespace tdm::mbnumeric
