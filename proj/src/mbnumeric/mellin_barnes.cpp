#include "tdm/mbnumeric/mellin_barnes.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::mbnumeric {

namespace {

using std::numbers::pi;
constexpr cplx I(0, 1);

std::optional<Rational> ratio(const RingElement& u, const RingElement& b) {
  std::optional<Rational> c;
  for (std::size_t i = 0; i < u.coords().size(); ++i) {
    if (b.coord(i) == 0) {
      if (u.coord(i) != 0) return std::nullopt;
      continue;
    }
    Rational q = u.coord(i) / b.coord(i);
    if (c && *c != q) return std::nullopt;
    c = q;
  }
  return c;
}

Jet jet_pow_int(const Jet& a, int k) {
  Jet r = Jet::scalar(a.spec(), 1);
  for (int i = 0; i < std::abs(k); ++i) r = r * a;
  return k >= 0 ? r : jet_reciprocal(r);
}

struct Shadows {
  RingPtr X;
  RingElement h, xi, T;
  Jet eps, eta, Tz, xiz, one;

  Shadows(bool global, cplx z) {
    X = cohring::x_ambient_ring();
    h = RingElement::generator(X, "h");
    xi = RingElement::generator(X, "xi");
    T = global ? 3 * h + 2 * xi : 3 * h;
    cplx iz = 1.0 / z;
    eps = Jet::from_element(xi - h) * iz;
    eta = Jet::from_element(h) * iz;
    Tz = Jet::from_element(T) * iz;
    xiz = Jet::from_element(xi) * iz;
    one = Jet::scalar(X, 1);
  }
  Jet c(cplx v) const { return Jet::scalar(X, v); }
};

bool is_integer(cplx s) { return s.imag() == 0 && s.real() == std::round(s.real()); }

// T sin(pi (xi-h)/z) / sin(pi T/z)
NormalizedFactor sine_ratio(const Shadows& sh) {
  NormalizedFactor nf(sh.X);
  nf.mul_monomial(sh.T);
  nf.mul_sin(sh.xi - sh.h);
  nf.mul_sin(sh.T, -1);
  return nf;
}

// 2 pi i T sin(pi e) / (sin(pi T/z) (exp(2 pi i e) - 1)), e = (xi-h)/z
NormalizedFactor shifted_factor(const Shadows& sh) {
  NormalizedFactor nf = sine_ratio(sh);
  nf.mul_scalar(2);
  nf.mul_pi(1);
  nf.mul_i(1);
  nf.mul_expm1(sh.xi - sh.h, -1);
  return nf;
}

// 1/Gamma(-T/z - 3s [- 2 d2]) at s = scalar + jet
Jet last_rgamma(const Shadows& sh, bool global, int d2, const Jet& s) {
  Jet arg = -sh.Tz - s * cplx(3);
  if (global) arg -= sh.c(2.0 * d2);
  return jet_rgamma(arg);
}

Jet shifted_core(const Shadows& sh, bool global, int d2, int l, cplx z) {
  double sign = (l % 2 == 0) ? 1.0 : -1.0;
  Jet r = shifted_factor(sh).evaluate(z) * cplx(sign / std::tgamma(l + 1.0));
  r = r * jet_pow_int(jet_rgamma(sh.one + sh.xiz + sh.c(d2 - l)), 4);
  int a = global ? 5 : 3;
  r = r * jet_rgamma(sh.c(3.0 * l - a * d2) - sh.xiz * cplx(a));
  return r;
}

}  // namespace

// ------------------------------------------------------- NormalizedFactor

void NormalizedFactor::mul_monomial(const RingElement& u, int power) {
  if (power == 0) return;
  if (!u.is_nilpotent() || u.is_zero()) throw PoleError("normalized factor bases must be nonzero nilpotents");
  for (auto& [b, k] : bases_) {
    auto c = ratio(u, b);
    if (!c) continue;
    for (int i = 0; i < std::abs(power); ++i) {
      if (power > 0) {
        coeff_ *= *c;
      } else {
        coeff_ /= *c;
      }
    }
    k += power;
    return;
  }
  bases_.emplace_back(u, power);
}

void NormalizedFactor::mul_sin(const RingElement& u, int power) {
  mul_pi(power);
  mul_z(-power);
  mul_monomial(u, power);
  sinc_.emplace_back(u, power);
}

void NormalizedFactor::mul_expm1(const RingElement& u, int power) {
  for (int i = 0; i < std::abs(power); ++i) {
    if (power > 0) {
      coeff_ *= 2;
    } else {
      coeff_ /= 2;
    }
  }
  mul_pi(power);
  mul_i(power);
  mul_z(-power);
  mul_monomial(u, power);
  expm1_.emplace_back(u, power);
}

bool NormalizedFactor::monomial_is_scalar() const {
  for (const auto& [b, k] : bases_) {
    if (k != 0) return false;
  }
  return true;
}

std::string NormalizedFactor::monomial_text() const {
  std::ostringstream os;
  os << cohring::to_string(coeff_);
  auto factor = [&](const std::string& name, int k) {
    if (k == 0) return;
    os << (k > 0 ? "*" : "/") << name;
    if (std::abs(k) != 1) os << '^' << std::abs(k);
  };
  factor("pi", pi_power_);
  factor("i", i_power_);
  factor("z", z_power_);
  for (const auto& [b, k] : bases_) factor("(" + b.to_string() + ")", k);
  return os.str();
}

Jet NormalizedFactor::evaluate(cplx z) const {
  Jet r = Jet::scalar(ring_, coeff_.get_d() * std::pow(pi, pi_power_) * std::pow(I, i_power_) * std::pow(z, z_power_));
  for (const auto& [b, k] : bases_) {
    if (k < 0) throw PoleError("uncancelled nilpotent denominator " + b.to_string());
    r = r * jet_pow_int(Jet::from_element(b), k);
  }
  for (const auto& [u, k] : sinc_) r = r * jet_pow_int(jet_sinc(Jet::from_element(u) * (1.0 / z)), k);
  for (const auto& [u, k] : expm1_) r = r * jet_pow_int(jet_expm1c(Jet::from_element(u) * (1.0 / z)), k);
  return r;
}

// ------------------------------------------------------------ integrand

Jet eval_g(bool global, int d2, cplx s, cplx q1, cplx z) {
  if (is_integer(s)) throw PoleError("g has a pole at the integer s = " + std::to_string(s.real()));
  Shadows sh(global, z);
  Jet S = sh.c(s);
  Jet r = jet_gamma(S - sh.c(d2) - sh.eps) * (std::pow(q1, s) / (std::exp(2 * pi * I * s) - 1.0));
  r = r * jet_pow_int(jet_rgamma(sh.one + sh.eta + S), 4);
  r = r * last_rgamma(sh, global, d2, S);
  return r;
}

Jet eval_F(bool global, int d2, cplx s, cplx q1, cplx z) {
  Shadows sh(global, z);
  return sine_ratio(sh).evaluate(z) * eval_g(global, d2, s, q1, z);
}

Jet integer_residue(bool global, int d2, int n, cplx q1, cplx z) {
  Shadows sh(global, z);
  Jet common = Jet::scalar(sh.X, std::pow(q1, n));
  common = common * jet_pow_int(jet_rgamma(sh.one + sh.eta + sh.c(n)), 4);
  common = common * last_rgamma(sh, global, d2, sh.c(n));
  int k = d2 - n;
  if (k >= 0) {
    double sign = (k % 2 == 0) ? -1.0 : 1.0;
    Jet f = jet_rgamma(sh.one + sh.c(k) + sh.eps) * jet_reciprocal(jet_sinc(sh.Tz)) * (sign * z);
    return f * common;
  }
  return sine_ratio(sh).evaluate(z) * jet_gamma(sh.c(n - d2) - sh.eps) * common;
}

Jet shifted_residue(bool global, int d2, int l, cplx q1, cplx z) {
  Shadows sh(global, z);
  Jet q = jet_power(q1, sh.c(d2 - l) + sh.eps);
  return shifted_core(sh, global, d2, l, z) * q;
}

Jet enclosed_residues(bool global, int d2, cplx q1, int nmin, int nmax, cplx z) {
  Jet r(cohring::x_ambient_ring());
  for (int n = nmin; n <= nmax; ++n) {
    r += integer_residue(global, d2, n, q1, z);
    int l = d2 - n;
    if (l >= 0) r += shifted_residue(global, d2, l, q1, z);
  }
  return r;
}

Jet residue_sum(bool global, int d2, cplx q1, Side side, int M, cplx z) {
  if (M < 0) throw ContourError("negative truncation");
  Jet r(cohring::x_ambient_ring());
  if (side == Side::right) {
    for (int n = 0; n <= M; ++n) r += integer_residue(global, d2, n, q1, z);
    return r;
  }
  for (int n = 1; n <= M; ++n) r += integer_residue(global, d2, -n, q1, z);
  for (int l = 0; l <= M; ++l) r += shifted_residue(global, d2, l, q1, z);
  return r;
}

Jet contour_integral(bool global, int d2, cplx q1, const ContourSpec& c, cplx z) {
  auto off_grid = [&](double x) { return std::abs(x - std::round(x)) >= c.margin; };
  if (!(c.re_min < c.re_max) || c.height < c.margin || c.panels < 1) throw ContourError("degenerate contour");
  if (!off_grid(c.re_min) || !off_grid(c.re_max)) throw ContourError("contour edge too close to a pole");

  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double H = c.height;
  std::vector<std::pair<cplx, cplx>> edges{{{c.re_min, -H}, {c.re_max, -H}},
                                            {{c.re_max, -H}, {c.re_max, H}},
                                            {{c.re_max, H}, {c.re_min, H}},
                                            {{c.re_min, H}, {c.re_min, -H}}};
  Jet total(cohring::x_ambient_ring());
  for (const auto& [a, b] : edges) {
    cplx d = b - a;
    for (int p = 0; p < c.panels; ++p) {
      double t0 = double(p) / c.panels;
      double t1 = double(p + 1) / c.panels;
      double mid = 0.5 * (t0 + t1);
      double rad = 0.5 * (t1 - t0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sgn : {1.0, -1.0}) {
          if (x[i] == 0 && sgn < 0) continue;
          cplx s = a + d * (mid + sgn * rad * x[i]);
          total += eval_F(global, d2, s, q1, z) * (w[i] * rad * d);
        }
      }
    }
  }
  return c.counterclockwise ? total : -total;
}

// --------------------------------------------------------- continuation

Jet continuation_coefficient(int l, int d2, bool global, cplx z) {
  if (l < 0 || d2 < 0) throw ContourError("negative continuation index");
  Shadows sh(global, z);
  Jet C = jet_gamma(sh.one + sh.eps) * jet_pow_int(jet_gamma(sh.one + sh.eta), 4) * jet_gamma(sh.one + sh.xiz) *
          jet_rgamma(sh.one + sh.Tz);
  double sign = (d2 % 2 == 0) ? -1.0 : 1.0;
  Jet pref = C * jet_rgamma(sh.one + sh.xiz + sh.c(d2)) * sign;
  if (!global) pref = pref * std::pow(z, -2 * d2);
  return pref * shifted_core(sh, global, d2, l, z);
}

std::pair<std::vector<int>, std::vector<int>> continuation_monomials(int l, int d2) {
  // q1^a q2^b = x^(b - a) y^b
  auto to_xy = [](int a, int b) { return std::vector<int>{b - a, b}; };
  auto first = to_xy(d2 - l, d2);
  // q1^(-l) (q1 q2)^d2: q1^(-l) = x^l, (q1 q2)^d2 = y^d2
  std::vector<int> second{l, d2};
  return {first, second};
}

Jet apply_map(const logseries::LinearMap& L, const Jet& a) {
  if (a.spec() != L.source) throw MapError("jet is not in the source ring of the map");
  Jet r(L.target);
  for (std::size_t i = 0; i < L.images.size(); ++i) {
    if (a.coord(i) != 0.0) r += Jet::from_element(L.images[i]) * a.coord(i);
  }
  return r;
}

ReductionReport verify_reduction(bool global, int order, const ReductionOptions& opt) {
  if (!(opt.tol > 0)) throw ReductionMismatch("tolerance must be positive");
  auto L = logseries::continuation_map();
  auto X = L.source;
  RingElement factor = (global ? 5 : 3) * RingElement::generator(X, "xi");
  ReductionReport rep;
  rep.global = global;
  rep.order = order;
  rep.tol = opt.tol;
  rep.component_error.assign(L.target->dimension(), 0.0);
  for (int total = 0; total <= order; ++total) {
    for (int d2 = 0; d2 <= total; ++d2) {
      int l = total - d2;
      Jet cont = continuation_coefficient(l, d2, global, opt.z);
      if (opt.flip_sign) cont = -cont;
      ZLaurent exact_z = ZLaurent(factor) * logseries::reduced_continuation_coefficient(global, l, d2);
      Jet a = apply_map(L, cont);
      Jet b = apply_map(L, Jet::from_zlaurent(exact_z, opt.z));
      if (l == 0 && d2 == 0 && b.coord(1) != 0.0) rep.constant_estimate = a.coord(1) / b.coord(1);
      for (std::size_t i = 0; i < a.coords().size(); ++i) {
        double err = std::abs(a.coord(i) - b.coord(i));
        rep.component_error[i] = std::max(rep.component_error[i], err);
        if (err > rep.max_abs_error) {
          rep.max_abs_error = err;
          rep.worst = {l, d2};
        }
        double relative = err / std::max(1.0, std::abs(b.coord(i)));
        rep.max_rel_error = std::max(rep.max_rel_error, relative);
        if (relative > opt.tol) {
          std::ostringstream os;
          os << "continuation coefficient (" << l << "," << d2 << ") deviates by " << err << " in component "
             << L.target->basis_text(i);
          throw ReductionMismatch(os.str());
        }
      }
    }
  }
  return rep;
}

}  // namespace tdm::mbnumeric
