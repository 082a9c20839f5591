#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdm/logseries/models.hpp"
#include "tdm/mbnumeric/jet.hpp"

namespace tdm::mbnumeric {

using cohring::Rational;

/// Monomial prefactor c * pi^a * i^b * z^k * prod u^e times entire pieces
/// sin(pi w)/(pi w) and (exp(2 pi i w) - 1)/(2 pi i w), w = u/z. Nilpotent
/// bases u are cancelled exactly across proportional factors.
class NormalizedFactor {
 public:
  explicit NormalizedFactor(RingPtr ring) : ring_(std::move(ring)) {}

  void mul_scalar(const Rational& c) { coeff_ *= c; }
  void mul_pi(int k) { pi_power_ += k; }
  void mul_i(int k) { i_power_ += k; }
  void mul_z(int k) { z_power_ += k; }
  void mul_monomial(const RingElement& u, int power = 1);
  // sin(pi u / z)^power
  void mul_sin(const RingElement& u, int power = 1);
  // (exp(2 pi i u / z) - 1)^power
  void mul_expm1(const RingElement& u, int power = 1);

  const Rational& coefficient() const { return coeff_; }
  int pi_power() const { return pi_power_; }
  int i_power() const { return i_power_; }
  int z_power() const { return z_power_; }
  // True when every nilpotent base has cancelled.
  bool monomial_is_scalar() const;
  std::string monomial_text() const;
  Jet evaluate(cplx z) const;

 private:
  RingPtr ring_;
  Rational coeff_ = 1;
  int pi_power_ = 0;
  int i_power_ = 0;
  int z_power_ = 0;
  std::vector<std::pair<RingElement, int>> bases_;
  std::vector<std::pair<RingElement, int>> sinc_;
  std::vector<std::pair<RingElement, int>> expm1_;
};

// g_{d2}(s, q1) in the X ring at numeric z. Throws PoleError at integer s.
Jet eval_g(bool global, int d2, cplx s, cplx q1, cplx z = 1);
// T sin(pi (xi-h)/z) / sin(pi T/z) * g, written through NormalizedFactor.
Jet eval_F(bool global, int d2, cplx s, cplx q1, cplx z = 1);

// Residues of F times 2 pi i, so a counterclockwise contour integral of F
// equals their sum. Integer poles s = n and shifted poles s = d2 - l + (xi-h)/z.
Jet integer_residue(bool global, int d2, int n, cplx q1, cplx z = 1);
Jet shifted_residue(bool global, int d2, int l, cplx q1, cplx z = 1);

// All residues whose scalar shadow lies in [nmin, nmax].
Jet enclosed_residues(bool global, int d2, cplx q1, int nmin, int nmax, cplx z = 1);

enum class Side { right, left };
// right: integer poles 0..M. left: integer poles -M..-1 and shifted poles
// l = 0..M. A shifted pole shares its shadow with an integer, so a numeric
// rectangle always encloses both; compare quadrature with enclosed_residues.
Jet residue_sum(bool global, int d2, cplx q1, Side side, int M, cplx z = 1);

struct ContourSpec {
  double re_min = -0.5;
  double re_max = 3.5;
  double height = 1.0;
  int panels = 8;
  bool counterclockwise = true;
  double margin = 0.1;
};

// Composite Gauss-Legendre quadrature of F over the rectangle.
// Throws ContourError when an edge comes within `margin` of a pole shadow.
Jet contour_integral(bool global, int d2, cplx q1, const ContourSpec& c, cplx z = 1);

// Coefficient of x^l y^d2 in the continued series, in the X ring.
Jet continuation_coefficient(int l, int d2, bool global, cplx z = 1);

// The prefactor q1^(d2-l) q2^d2 and q1^(-l) (q1 q2)^d2 as exponents of (x, y).
std::pair<std::vector<int>, std::vector<int>> continuation_monomials(int l, int d2);

Jet apply_map(const logseries::LinearMap& L, const Jet& a);

struct ReductionOptions {
  cplx z = 1;
  double tol = 1e-10;
  bool flip_sign = false;
};

struct ReductionReport {
  bool global = false;
  int order = 0;
  double tol = 0;
  double max_abs_error = 0;
  // deviation over max(1, |exact|), the quantity compared with tol
  double max_rel_error = 0;
  std::vector<double> component_error;
  std::pair<int, int> worst{0, 0};
  cplx constant_estimate = 0;
};

// Compares L(continuation coefficient) with L(reduced series coefficient)
// for l + d2 <= order. Throws ReductionMismatch with the first index whose
// deviation exceeds tol * max(1, |exact|).
ReductionReport verify_reduction(bool global, int order, const ReductionOptions& opt = {});

}  // namespace tdm::mbnumeric
