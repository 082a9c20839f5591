#include <doctest.h>

#include <random>

#include "tdm/errors.hpp"
#include "tdm/logseries/models.hpp"
#include "tdm/pfops/solutions.hpp"
#include "tdm/pfops/system.hpp"

using namespace tdm;
using namespace tdm::pfops;
using logseries::build_series;
using logseries::expand_components;
using logseries::Model;
using logseries::model_spec;

namespace {

const std::vector<std::string> Q{"q1", "q2"};
const std::vector<std::string> XY{"x", "y"};

LogSeries series(Model m, int order = 8) { return build_series(model_spec(m), order); }

std::vector<ScalarLogSeries> y_basis(bool global) {
  auto out = expand_components(series(global ? Model::global_Ybar : Model::local_Ybar));
  for (Model m : {global ? Model::global_I5 : Model::local_I5, global ? Model::global_I6 : Model::local_I6}) {
    auto c = expand_components(series(m));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

const DiffOperator& op_named(const OperatorSystem& sys, std::string_view name) {
  for (const auto& o : sys.operators) {
    if (o.name == name) return o.op;
  }
  throw std::runtime_error("no operator " + std::string(name));
}

}  // namespace

TEST_CASE("log-derivative eigenrelation") {
  auto s = series(Model::local_X, 4);
  auto out = apply(DiffOperator::d(Q, "q1"), s);
  auto X = s.spec;
  for (const auto& [d, c] : s.coeffs) {
    ZLaurent eig = ZLaurent(cohring::RingElement::generator(X, "h")) + ZLaurent::scalar(X, d[0], 1);
    CHECK(out.coeffs.at(d) == eig * c);
  }
}

TEST_CASE("operator text round trip") {
  for (const auto& name : builtin_system_names()) {
    auto sys = builtin_system(name);
    auto again = parse_system(format_system(sys));
    REQUIRE(again.operators.size() == sys.operators.size());
    for (std::size_t i = 0; i < sys.operators.size(); ++i) CHECK(again.operators[i].op == sys.operators[i].op);
  }
  auto op = parse_operator("D_x*x", XY);
  CHECK(op == parse_operator("x*D_x + x*z", XY));
  CHECK(parse_operator("x^-1*D_x", XY).to_string() == "x^-1*D_x");
  CHECK(parse_operator("-(D_x - 3/2*z)^2", XY).to_string() == parse_operator("-D_x^2 + 3*D_x*z - 9/4*z^2", XY).to_string());
  CHECK_THROWS_AS(parse_operator("D_w", XY), ParseError);
  CHECK_THROWS_AS(parse_operator("D_x^-1", XY), ParseError);
  CHECK_THROWS_AS(parse_operator("(D_x", XY), ParseError);
  CHECK_THROWS_AS(parse_system("variables x\n"), ParseError);
}

TEST_CASE("annihilation of the five local and five global series") {
  struct Case {
    const char* system;
    Model model;
  };
  std::vector<Case> cases{{"local_X", Model::local_X},          {"local_Y_ambient", Model::local_Y},
                          {"local_Y", Model::local_Ybar},       {"local_Y", Model::local_I5},
                          {"local_Y", Model::local_I6},         {"global_X", Model::global_X},
                          {"global_Y_ambient", Model::global_Y}, {"global_Y", Model::global_Ybar},
                          {"global_Y", Model::global_I5},       {"global_Y", Model::global_I6}};
  for (const auto& c : cases) {
    CAPTURE(c.system);
    CAPTURE(model_spec(c.model).name);
    auto rep = verify_annihilation(builtin_system(c.system), series(c.model), 7);
    CHECK(rep.passed());
  }
}

TEST_CASE("non-solutions are detected") {
  auto rep = verify_annihilation(builtin_system("local_X"), series(Model::global_X), 6);
  CHECK_FALSE(rep.passed());
  bool witnessed = false;
  for (const auto& o : rep.operators) witnessed = witnessed || (!o.passed && o.witness && !o.witness_value.is_zero());
  CHECK(witnessed);
  CHECK_FALSE(verify_annihilation(builtin_system("local_Y_ambient"), series(Model::global_Y), 6).passed());
  CHECK_THROWS_AS(verify_annihilation(builtin_system("global_Y"), series(Model::global_Ybar, 6), 6), OrderTooLow);

  // literal readings rejected by annihilation
  OperatorSystem lit{"literal", XY, 6, {{"Delta1'", parse_operator(
      "x*(D_y - D_x)^4 - (5*D_y - 3*D_x + 3*z)*(5*D_y - 3*D_x + 2*z)*(5*D_y - 3*D_x + z + z)*D_x", XY)}}};
  CHECK_FALSE(verify_annihilation(lit, series(Model::global_Ybar), 6).passed());
  OperatorSystem litp{"literal", Q, 6, {{"P0", parse_operator(
      "-5*D_q1^3 + 2*D_q1^2*D_q2 + 15*q1*(D_q2 - D_q1)*(3*D_q1 + 2*D_q2 + z)*(3*D_q1 + 2*D_q2 + 2*z)"
      " - 4*q2*D_q2^2*(3*D_q1 + 2*D_q2 + z)", Q)}}};
  CHECK_FALSE(verify_annihilation(litp, series(Model::global_X), 6).passed());
}

TEST_CASE("substitution") {
  auto m = conifold_substitution();
  CHECK(substitute_variables(DiffOperator::d(Q, "q1"), m) == parse_operator("D_y - D_x", XY));
  CHECK(substitute_variables(DiffOperator::d(Q, "q2"), m) == DiffOperator::d(XY, "y"));
  MonomialMap id{Q, Q, {{1, 0}, {0, 1}}};
  auto d1 = op_named(builtin_system("global_X"), "Delta1");
  CHECK(substitute_variables(d1, id) == d1);
  CHECK_THROWS_AS(substitute_variables(d1, MonomialMap{Q, XY, {{2, 0}, {0, 1}}}), MapError);
  CHECK_THROWS_AS(substitute_variables(d1, MonomialMap{Q, XY, {{1, 1}, {1, 1}}}), MapError);

  for (bool global : {false, true}) {
    auto xs = builtin_system(global ? "global_X" : "local_X");
    auto ys = builtin_system(global ? "global_Y" : "local_Y");
    REQUIRE(xs.operators.size() == ys.operators.size());
    for (std::size_t i = 0; i < xs.operators.size(); ++i) {
      CAPTURE(xs.operators[i].name);
      auto u = unit_factor(substitute_variables(xs.operators[i].op, m), ys.operators[i].op);
      REQUIRE(u.has_value());
      if (i == 0) {
        CHECK(u->monomial == logseries::Index{-1, 0});
      } else {
        CHECK(u->monomial == logseries::Index{0, 0});
        CHECK(u->c == 1);
      }
    }
  }
}

TEST_CASE("products act as composition") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 4);
  std::vector<DiffOperator> atoms{DiffOperator::d(XY, "x"), DiffOperator::d(XY, "y"), DiffOperator::z(XY),
                                  DiffOperator::variable(XY, "x"), DiffOperator::variable(XY, "y", 1) * Rational(-2)};
  auto s = series(Model::local_Ybar, 7);
  for (int trial = 0; trial < 20; ++trial) {
    DiffOperator word = DiffOperator::constant(XY, 1);
    LogSeries stepwise = s;
    std::vector<int> seq;
    for (int k = 0; k < 4; ++k) seq.push_back(pick(rng));
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) stepwise = apply(atoms[*it], stepwise);
    for (int k : seq) word = word * atoms[k];
    auto direct = apply(word, s);
    CHECK(direct.order == stepwise.order);
    CHECK(logseries::same_function(direct, stepwise));
  }
}

TEST_CASE("apply commutes with truncation") {
  auto sys = builtin_system("global_Y");
  auto s = series(Model::global_I6, 8);
  for (const auto& o : sys.operators) {
    auto a = apply(o.op, s.truncated(5));
    auto b = apply(o.op, s).truncated(a.order);
    CHECK(logseries::same_function(a, b));
  }
}

TEST_CASE("independence rank") {
  CHECK(independence_rank(expand_components(series(Model::local_X))) == 6);
  CHECK(independence_rank(expand_components(series(Model::global_X))) == 6);
  CHECK(independence_rank(y_basis(false)) == 6);
  CHECK(independence_rank(y_basis(true)) == 6);
  auto one = expand_components(series(Model::local_I5));
  one.push_back(one.front());
  CHECK(independence_rank(one) == 1);
  CHECK(independence_rank({}) == 0);
}

TEST_CASE("monodromy classes") {
  auto i5 = expand_components(series(Model::local_I5)).front();
  auto c = classify_monodromy(i5, "x");
  CHECK(c.kind == MonodromyClass::Kind::finite_order);
  CHECK(c.order == 3);
  CHECK(c.to_string() == "finite_order(3)");
  CHECK(classify_monodromy(i5, "y").kind == MonodromyClass::Kind::trivial);
  auto bar = expand_components(series(Model::local_Ybar));
  REQUIRE(bar.size() == 4);
  for (const auto& f : bar) CHECK(classify_monodromy(f, "x").kind == MonodromyClass::Kind::trivial);
  CHECK(bar[0].label == "p");
  CHECK(classify_monodromy(bar[0], "y").kind == MonodromyClass::Kind::trivial);
  CHECK(bar[1].label == "p^2");
  auto u = classify_monodromy(bar[1], "y");
  CHECK(u.kind == MonodromyClass::Kind::unipotent);
  CHECK(u.log_degree == 1);
}

TEST_CASE("monodromy filtration") {
  for (bool global : {false, true}) {
    auto basis = y_basis(global);
    CHECK(monodromy_filtration(basis, "x", 6).trivial == 4);
    CHECK(monodromy_filtration(basis, "y", 6).trivial == 3);
    auto split = restriction_split(basis, "x", "y", 6);
    CHECK(split.rank == 6);
    CHECK(split.intersection == 1);
    CHECK(split.quotient == 2);
  }
  auto short_basis = y_basis(false);
  short_basis.pop_back();
  CHECK_THROWS_AS(monodromy_filtration(short_basis, "x", 6), NotABasis);
}
