#include "tdm/fjrw/fjrw.hpp"

#include <sstream>

#include "tdm/errors.hpp"
#include "tdm/logseries/models.hpp"
#include "tdm/pfops/solutions.hpp"

namespace tdm::fjrw {

namespace {

using cohring::factorial;
using cohring::frac;
using cohring::rising_factorial;

Rational sign(int k) { return k % 2 == 0 ? 1 : -1; }

GammaMonomial gm(const Rational& a) { return GammaMonomial::gamma(a); }

// Stored I5/I6 are the displayed series divided by Gamma(s)^4/Gamma(s+1).
GammaMonomial series_constant(bool sixth) {
  Rational s = sixth ? frac(2, 3) : frac(1, 3);
  return gm(s).pow(4) / gm(s + 1);
}

std::vector<Rational> y0_coefficients(bool global, bool sixth, int order) {
  using logseries::Model;
  Model m = global ? (sixth ? Model::global_I6 : Model::global_I5) : (sixth ? Model::local_I6 : Model::local_I5);
  auto series = logseries::build_series(logseries::model_spec(m), order);
  std::vector<Rational> out;
  for (int l = 0; l <= order; ++l) {
    auto c = series.full_coefficient({l, 0});
    if (c.is_zero()) {
      out.emplace_back(0);
      continue;
    }
    if (c.min_power() != 0 || c.max_power() != 0) throw ComparisonFailed("y^0 coefficient depends on z");
    auto e = c.coefficient(0);
    for (std::size_t i = 1; i < e.coords().size(); ++i) {
      if (e.coord(i) != 0) throw ComparisonFailed("y^0 coefficient is not a scalar");
    }
    out.push_back(e.coord(0));
  }
  return out;
}

}  // namespace

GammaMonomial FJRWComponent::value(int l) const {
  for (const auto& t : terms) {
    if (t.l == l) return constant * GammaMonomial(t.coeff);
  }
  throw ComparisonFailed("no term l = " + std::to_string(l) + " in " + sector);
}

FJRWSeries fjrw_formal(int order) {
  if (order < 0) throw ComparisonFailed("negative order");
  FJRWSeries s;
  s.order = order;
  s.phi0.sector = "phi0";
  s.phi1.sector = "phi1";
  for (int l = 0; l <= order; ++l) {
    Rational a = rising_factorial(frac(1, 3), l);
    Rational b = rising_factorial(frac(2, 3), l);
    Rational f = factorial(3 * l);
    s.phi0.terms.push_back({l, 3 * l + 1, -sign(l) * a * a * a * a / f});
    s.phi1.terms.push_back({l, 3 * l + 2, sign(l) * b * b * b * b / f});
  }
  return s;
}

FJRWSeries fjrw_regularized(int order) {
  if (order < 0) throw ComparisonFailed("negative order");
  FJRWSeries s;
  s.regularized = true;
  s.order = order;
  s.phi0.sector = "phi0";
  s.phi1.sector = "phi1";
  // Gamma(l + 4/3) = Gamma(4/3) (4/3)_l, likewise for 5/3
  s.phi0.constant = GammaMonomial(1) / gm(frac(4, 3));
  s.phi1.constant = GammaMonomial(1) / gm(frac(5, 3));
  for (int l = 0; l <= order; ++l) {
    Rational a = rising_factorial(frac(1, 3), l);
    Rational b = rising_factorial(frac(2, 3), l);
    s.phi0.terms.push_back(
        {l, l + frac(1, 3), sign(3 * l + 1) * a * a * a * a / (factorial(3 * l) * rising_factorial(frac(4, 3), l))});
    s.phi1.terms.push_back({l, l + frac(2, 3),
                            sign(3 * l + 2) * b * b * b * b / (factorial(3 * l + 1) * rising_factorial(frac(5, 3), l))});
  }
  return s;
}

std::vector<Rational> normalized_ratios(const std::vector<Rational>& c, const std::vector<Rational>& d) {
  if (c.size() != d.size() || c.empty()) throw ComparisonFailed("coefficient lists differ in length");
  if (c[0] == 0 || d[0] == 0) throw ComparisonFailed("leading coefficient vanishes");
  Rational base = c[0] / d[0];
  std::vector<Rational> out;
  for (std::size_t l = 0; l < c.size(); ++l) {
    if (d[l] == 0) throw ComparisonFailed("d_" + std::to_string(l) + " vanishes");
    Rational r = (c[l] / d[l]) / base;
    if (r != 1) {
      throw ComparisonFailed("ratio at l = " + std::to_string(l) + " is " + cohring::to_string(r) + " times the l = 0 ratio");
    }
    out.push_back(r);
  }
  return out;
}

std::vector<Comparison> compare_limit(bool global, int order) {
  auto reg = fjrw_regularized(order);
  std::vector<Comparison> out;
  for (bool sixth : {false, true}) {
    const FJRWComponent& comp = sixth ? reg.phi1 : reg.phi0;
    Comparison cmp;
    cmp.sector = comp.sector;
    cmp.global = global;
    cmp.order = order;
    cmp.c = y0_coefficients(global, sixth, order);
    // x^{i + s} against tau^{l + s}
    Rational s = sixth ? frac(2, 3) : frac(1, 3);
    for (const auto& t : comp.terms) {
      if (t.exponent != t.l + s) throw ComparisonFailed("exponent mismatch in " + comp.sector);
      cmp.d.push_back(t.coeff);
    }
    cmp.normalized = normalized_ratios(cmp.c, cmp.d);
    cmp.constant = series_constant(sixth) * GammaMonomial(cmp.c[0] / cmp.d[0]) / comp.constant;
    out.push_back(std::move(cmp));
  }
  return out;
}

RankAccounting rank_accounting(bool global, int order) {
  using logseries::Model;
  std::vector<logseries::ScalarLogSeries> basis;
  for (Model m : {global ? Model::global_Ybar : Model::local_Ybar, global ? Model::global_I5 : Model::local_I5,
                  global ? Model::global_I6 : Model::local_I6}) {
    auto c = logseries::expand_components(logseries::build_series(logseries::model_spec(m), order));
    basis.insert(basis.end(), c.begin(), c.end());
  }
  pfops::RestrictionSplit split;
  try {
    split = pfops::restriction_split(basis, "x", "y", 6);
  } catch (const NotABasis& e) {
    throw AccountingError(e.what());
  }
  RankAccounting r{split.rank, split.trivial_x, split.trivial_y, split.quotient};
  const RankAccounting want{6, 4, 3, 2};
  if (!(r == want)) {
    std::ostringstream os;
    os << "rank accounting gave (" << r.total << "," << r.trivial_x << "," << r.trivial_y << "," << r.quotient
       << "), expected (6,4,3,2)";
    throw AccountingError(os.str());
  }
  if (r.quotient != static_cast<int>(Descriptor{}.narrow.size()))
    throw AccountingError("quotient rank differs from the number of narrow generators");
  return r;
}

std::string comparison_csv(const std::vector<Comparison>& rows) {
  std::ostringstream os;
  os << "sector,l,c_l,d_l,ratio_normalized\n";
  for (const auto& r : rows) {
    for (std::size_t l = 0; l < r.c.size(); ++l) {
      os << r.sector << ',' << l << ',' << cohring::to_string(r.c[l]) << ',' << cohring::to_string(r.d[l]) << ','
         << cohring::to_string(r.normalized[l]) << '\n';
    }
  }
  return os.str();
}

}  // namespace tdm::fjrw
