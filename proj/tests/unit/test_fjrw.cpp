#include <doctest.h>

#include "tdm/errors.hpp"
#include "tdm/fjrw/fjrw.hpp"

using namespace tdm;
using namespace tdm::fjrw;
using cohring::frac;

namespace {

GammaMonomial g(const Rational& a) { return GammaMonomial::gamma(a); }

}  // namespace

TEST_CASE("formal series leading terms") {
  auto f = fjrw_formal(3);
  CHECK(f.phi0.terms[0].exponent == 1);
  CHECK(f.phi0.terms[0].coeff == -1);
  CHECK(f.phi1.terms[0].exponent == 2);
  CHECK(f.phi1.terms[0].coeff == 1);
  // l = 1: -(-1) (1/3)^4 / 3! and (-1) (2/3)^4 / 3!
  CHECK(f.phi0.terms[1].exponent == 4);
  CHECK(f.phi0.terms[1].coeff == frac(1, 486));
  CHECK(f.phi1.terms[1].coeff == frac(-16, 486));
  CHECK(f.phi0.constant.is_rational());
}

TEST_CASE("regularized series leading terms") {
  auto r = fjrw_regularized(2);
  CHECK(r.phi0.terms[0].exponent == frac(1, 3));
  CHECK(r.phi0.terms[0].coeff == -1);
  CHECK(r.phi0.value(0) == GammaMonomial(-1) / g(frac(4, 3)));
  CHECK(r.phi1.terms[0].exponent == frac(2, 3));
  CHECK(r.phi1.value(0) == GammaMonomial(1) / g(frac(5, 3)));
  // l = 1, phi0: (-1)^4 (1/3)^4 / (3! Gamma(7/3))
  CHECK(r.phi0.value(1) == GammaMonomial(frac(1, 486)) / g(frac(7, 3)));
  CHECK_THROWS_AS(r.phi0.value(5), ComparisonFailed);
}

TEST_CASE("formal series diverges, regularized does not") {
  auto f = fjrw_formal(31);
  auto r = fjrw_regularized(31);
  Rational prev = 0;
  for (int l = 0; l < 31; ++l) {
    Rational fr = abs(f.phi0.terms[l + 1].coeff / f.phi0.terms[l].coeff);
    CHECK(fr > prev);
    prev = fr;
    for (const auto* c : {&r.phi0, &r.phi1}) {
      CHECK(abs(c->terms[l + 1].coeff / c->terms[l].coeff) <= frac(1, 27));
    }
  }
  CHECK(prev > 1);
}

TEST_CASE("regularized times Gamma recovers the formal coefficients") {
  auto f = fjrw_formal(10);
  auto r = fjrw_regularized(10);
  for (int l = 0; l <= 10; ++l) {
    CHECK(r.phi0.value(l) * g(l + frac(4, 3)) == f.phi0.value(l));
    CHECK(r.phi1.value(l) * g(l + frac(5, 3)) * GammaMonomial(3 * l + 1) == f.phi1.value(l));
  }
}

TEST_CASE("limit comparison is a constant multiple") {
  for (bool global : {false, true}) {
    auto rows = compare_limit(global, 10);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].sector == "phi0");
    CHECK(rows[0].constant == GammaMonomial(-1) * g(frac(1, 3)).pow(4));
    CHECK(rows[1].sector == "phi1");
    CHECK(rows[1].constant == g(frac(2, 3)).pow(4));
    for (const auto& row : rows) {
      CHECK(row.normalized == std::vector<Rational>(11, Rational(1)));
    }
  }
}

TEST_CASE("perturbed coefficient is caught") {
  auto row = compare_limit(false, 10)[0];
  auto c = row.c;
  c[7] *= frac(1000001, 1000000);
  try {
    normalized_ratios(c, row.d);
    FAIL("expected a failure");
  } catch (const ComparisonFailed& e) {
    CHECK(std::string(e.what()).find("l = 7") != std::string::npos);
  }
  CHECK_THROWS_AS(normalized_ratios({1, 2}, {1}), ComparisonFailed);
}

TEST_CASE("rank accounting") {
  for (bool global : {false, true}) {
    for (int order : {6, 8, 10}) {
      auto r = rank_accounting(global, order);
      CHECK(r == RankAccounting{6, 4, 3, 2});
    }
  }
  CHECK(Descriptor{}.narrow.size() == 2);
}

TEST_CASE("comparison table") {
  auto csv = comparison_csv(compare_limit(false, 2));
  CHECK(csv.rfind("sector,l,c_l,d_l,ratio_normalized\n", 0) == 0);
  CHECK(csv.find("phi0,0,1,-1,1\n") != std::string::npos);
  CHECK(csv.find("phi1,2,") != std::string::npos);
}
