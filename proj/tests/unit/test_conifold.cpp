#include <doctest.h>

#include <cmath>
#include <random>

#include "tdm/conifold/transition.hpp"
#include "tdm/errors.hpp"
#include "tdm/mbnumeric/polylog.hpp"

using namespace tdm;
using namespace tdm::conifold;
using cohring::frac;

namespace {

std::vector<Rational> vec(std::initializer_list<Rational> v) { return v; }

const char* kOneCurve = R"(
name tiny
dims 1 1 1
basis 1 0
basis 0 1
exceptional 0 1
phi 1 0
)";

}  // namespace

TEST_CASE("fixtures parse and validate") {
  auto a = builtin_transition("conifold_1curve");
  CHECK(a.r == 1);
  CHECK(a.m == 1);
  CHECK(a.k == 1);
  CHECK(a.table.size() == 6);
  CHECK(a.expected.at({2}) == frac(13, 2));
  auto b = builtin_transition("small_2curve");
  CHECK(b.k == 2);
  CHECK(b.push_forward({1, 1, 3}) == Class{1, 1});
  CHECK_THROWS_AS(builtin_transition("nope"), TransitionDataError);
}

TEST_CASE("malformed transition data") {
  std::string base = kOneCurve;
  CHECK_NOTHROW(parse_transition(base));
  CHECK_THROWS_AS(parse_transition(base + "gw 0 2 = 1\n"), TransitionDataError);    // contracted row
  CHECK_THROWS_AS(parse_transition(base + "gw 1 x = 1\n"), TransitionDataError);    // not an integer
  CHECK_THROWS_AS(parse_transition(base + "gw 1 0 = 1/0\n"), TransitionDataError);  // bad rational
  CHECK_THROWS_AS(parse_transition(base + "frob 1\n"), TransitionDataError);
  CHECK_THROWS_AS(parse_transition("dims 1 1 1\nbasis 1 0\nbasis 2 0\nexceptional 0 1\nphi 1 0\n"),
                  TransitionDataError);  // singular basis
  CHECK_THROWS_AS(parse_transition("dims 1 1 1\nbasis 1 0\nbasis 0 1\nexceptional 1 1\nphi 1 0\n"),
                  TransitionDataError);  // not exceptional
  CHECK_THROWS_AS(parse_transition("dims 1 1 1\nbasis 1 0\nbasis 0 1\nexceptional 0 1\nphi 1 1\n"),
                  TransitionDataError);  // E not contracted
  CHECK_THROWS_AS(parse_transition("basis 1 0\n"), TransitionDataError);
}

TEST_CASE("J series with no table is the prefactor") {
  auto d = parse_transition("dims 2 0 0\nbasis 1 0\nbasis 0 1\nphi 1 0\nphi 0 1\n");
  CHECK(cy_j_series(d, 5).terms.empty());
}

TEST_CASE("single table entry") {
  auto d = parse_transition(std::string(kOneCurve) + "gw 1 0 = 5\n");
  auto j = cy_j_series(d, 1);
  REQUIRE(j.terms.size() == 2);  // (1,0) and the cover (0,1)
  const JTerm* t = j.find({1, 0});
  REQUIRE(t);
  CHECK(t->curve == vec({5, 0}));
  CHECK(t->point == -10);
}

TEST_CASE("two fiber classes over one class") {
  auto d = parse_transition(std::string(kOneCurve) + "gw 1 0 = 3\ngw 1 1 = 4\n");
  auto dec = decompose(d, 4);
  CHECK(dec.j1.terms.size() == 2);
  auto y = restrict_to_locus(dec.j1, d, 4);
  CHECK(invariants(y) == std::map<Class, Rational>{{{1}, Rational(7)}});
  CHECK(y.find({1})->curve == vec({7}));
  CHECK(y.find({2}) == nullptr);
}

TEST_CASE("multiple cover series") {
  auto d = parse_transition(kOneCurve);
  auto c = multiple_cover_series(d, 1, 4);
  CHECK(c.terms.size() == 4);
  const JTerm* t = c.find({0, 2});
  REQUIRE(t);
  CHECK(t->curve == vec({0, frac(1, 4)}));
  CHECK(t->point == frac(-1, 4));
  CHECK(c.find({0, 3})->point == frac(-2, 27));
  CHECK(multiple_cover_series(d, 1, 0).terms.empty());
  CHECK_THROWS_AS(multiple_cover_series(d, 2, 4), TransitionDataError);
}

TEST_CASE("decomposition") {
  for (const auto& name : builtin_transition_names()) {
    auto d = builtin_transition(name);
    for (int order : {0, 3, 6}) {
      auto dec = decompose(d, order);
      CHECK(dec.j1 + dec.j2 == cy_j_series(d, order));
      CHECK(is_polynomial_in_exceptional(dec.j1, d));
    }
  }
  // two exceptional curves in one class double the covers
  auto dec = decompose(builtin_transition("small_2curve"), 4);
  CHECK(dec.j2.find({0, 0, 2})->point == frac(-1, 2));
  CHECK(dec.j2.find({0, 0, 2})->curve == vec({0, 0, frac(1, 2)}));

  auto none = parse_transition("dims 1 0 0\nbasis 1\nphi 1\ngw 2 = 3\n");
  CHECK(decompose(none, 5).j2.terms.empty());
}

TEST_CASE("cover series against the polylogarithms") {
  auto d = parse_transition(kOneCurve);
  auto c = multiple_cover_series(d, 1, 40);
  const double q = 0.1;
  std::complex<double> curve = 0;
  std::complex<double> point = 0;
  for (const auto& [beta, t] : c.terms) {
    curve += t.curve[1].get_d() * std::pow(q, beta[1]);
    point += t.point.get_d() * std::pow(q, beta[1]);
  }
  CHECK(std::abs(curve - mbnumeric::polylog(2, q)) < 1e-10);
  CHECK(std::abs(point + 2.0 * mbnumeric::polylog(3, q)) < 1e-10);
}

TEST_CASE("restriction reproduces the Y invariants on the fixtures") {
  for (const auto& name : builtin_transition_names()) {
    auto d = builtin_transition(name);
    auto dec = decompose(d, 6);
    auto got = invariants(restrict_to_locus(dec.j1, d, 3));
    CHECK(got == d.expected);
  }
}

TEST_CASE("restriction with m = 0 changes nothing") {
  auto d = parse_transition("dims 2 0 0\nbasis 1 0\nbasis 0 1\nphi 1 0\nphi 0 1\ngw 1 0 = 2\ngw 1 2 = -1/3\n");
  auto j = cy_j_series(d, 4);
  CHECK(restrict_to_locus(j, d, 4) == j);
}

TEST_CASE("restriction errors") {
  auto tower = parse_transition(std::string(kOneCurve) + "gw 1 0 = 2 tower\n");
  auto dec = decompose(tower, 5);
  CHECK(dec.j1.find({1, 4})->point == -4);
  CHECK_FALSE(is_polynomial_in_exceptional(dec.j1, tower));
  CHECK_THROWS_AS(restrict_to_locus(dec.j1, tower, 3), LambdaInfinite);

  auto d = builtin_transition("conifold_1curve");
  // (2,2) lies over 2 but is cut off at order 3
  CHECK_THROWS_AS(restrict_to_locus(decompose(d, 3).j1, d, 2), TransitionDataError);
  CHECK_NOTHROW(restrict_to_locus(decompose(d, 3).j1, d, 1));
}

TEST_CASE("random fiber splits round trip") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 6);
  std::uniform_int_distribution<int> parts(1, 4);
  std::uniform_int_distribution<int> lift(0, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::string text = "dims 2 1 1\nbasis 1 0 0\nbasis 0 1 0\nbasis 0 0 1\nexceptional 0 0 1\nphi 1 0 0\nphi 0 1 0\n";
    std::map<Class, Rational> want;
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; a + b <= 3; ++b) {
        if (a + b == 0) continue;
        int n = parts(rng);
        Rational total = 0;
        std::map<int, Rational> fiber;
        for (int p = 0; p < n; ++p) {
          Rational v = frac(num(rng), den(rng));
          fiber[lift(rng)] += v;
          total += v;
        }
        if (total != 0) want[{a, b}] = total;
        for (const auto& [e, v] : fiber) {
          text += "gw " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(e) + " = " +
                  cohring::to_string(v) + "\n";
        }
      }
    }
    auto d = parse_transition(text);
    auto dec = decompose(d, 6);
    CHECK(invariants(restrict_to_locus(dec.j1, d, 3)) == want);
  }
}
