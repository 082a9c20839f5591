#include "tdm/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tdm/conifold/transition.hpp"
#include "tdm/errors.hpp"
#include "tdm/fjrw/fjrw.hpp"
#include "tdm/logseries/models.hpp"
#include "tdm/mbnumeric/mellin_barnes.hpp"
#include "tdm/mbnumeric/polylog.hpp"
#include "tdm/pfops/solutions.hpp"
#include "tdm/pfops/system.hpp"

namespace tdm::cli {

namespace {

using logseries::Model;
using logseries::build_series;
using logseries::model_spec;
namespace mb = mbnumeric;

const char* side(bool global) { return global ? "global" : "local"; }

std::string fmt(const std::complex<double>& v) {
  std::ostringstream os;
  os.precision(12);
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

std::string fmt_index(const logseries::Index& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

struct Suite {
  std::string name;
  std::vector<CheckResult> out;

  CheckResult& add(std::string id, std::string anchor) {
    CheckResult c;
    c.suite = name;
    c.check_id = std::move(id);
    c.paper_anchor = std::move(anchor);
    out.push_back(std::move(c));
    return out.back();
  }

  // Runs body on a fresh check; a library error fails it with the message.
  void check(std::string id, std::string anchor, const std::function<void(CheckResult&)>& body) {
    CheckResult& c = add(std::move(id), std::move(anchor));
    try {
      body(c);
    } catch (const Error& e) {
      c.passed = false;
      c.witness = e.what();
    }
  }

  void toleranced(CheckResult& c, double err, double tol) {
    c.max_error = err;
    c.tolerance = tol;
    c.passed = err <= tol;
  }
};

// ---------------------------------------------------------------- exact

void annihilation(Suite& s, const RunConfig& cfg) {
  for (bool g : cfg.models()) {
    std::string p = side(g);
    std::vector<std::pair<std::string, Model>> cases{
        {p + "_X", g ? Model::global_X : Model::local_X},
        {p + "_Y_ambient", g ? Model::global_Y : Model::local_Y},
        {p + "_Y", g ? Model::global_Ybar : Model::local_Ybar},
        {p + "_Y", g ? Model::global_I5 : Model::local_I5},
        {p + "_Y", g ? Model::global_I6 : Model::local_I6}};
    for (const auto& [sys_name, model] : cases) {
      auto sys = pfops::builtin_system(sys_name);
      auto spec = model_spec(model);
      auto series = build_series(spec, cfg.order + 2);
      std::string anchor = p + "-model/picard-fuchs-ideal";
      try {
        auto rep = pfops::verify_annihilation(sys, series, cfg.order);
        for (const auto& op : rep.operators) {
          CheckResult& c = s.add(sys_name + "." + op.name + "." + spec.name, anchor);
          c.passed = op.passed;
          c.witness = "order " + std::to_string(op.checked_order);
          if (!op.passed && op.witness)
            c.witness += ", nonzero at " + fmt_index(*op.witness) + ": " + op.witness_value.to_string();
        }
      } catch (const Error& e) {
        CheckResult& c = s.add(sys_name + "." + spec.name, anchor);
        c.witness = e.what();
      }
    }
  }
}

void equivalence(Suite& s, const RunConfig& cfg) {
  auto map = pfops::conifold_substitution();
  for (bool g : cfg.models()) {
    std::string p = side(g);
    auto xs = pfops::builtin_system(p + "_X");
    auto ys = pfops::builtin_system(p + "_Y");
    for (std::size_t i = 0; i < xs.operators.size(); ++i) {
      s.check(p + "." + xs.operators[i].name, p + "-model/operator-equivalence", [&](CheckResult& c) {
        if (i >= ys.operators.size()) {
          c.witness = "no counterpart";
          return;
        }
        auto image = pfops::substitute_variables(xs.operators[i].op, map);
        auto u = pfops::unit_factor(image, ys.operators[i].op);
        c.passed = u.has_value();
        c.witness = u ? "c = " + cohring::to_string(u->c) + ", monomial " + fmt_index(u->monomial)
                      : "no unit monomial relates " + xs.operators[i].name + " and " + ys.operators[i].name;
      });
    }
  }
}

void ranks(Suite& s, const RunConfig& cfg) {
  for (bool g : cfg.models()) {
    std::string p = side(g);
    s.check(p + ".x_solution_rank", p + "-model/full-solution-basis", [&](CheckResult& c) {
      auto comps = logseries::expand_components(build_series(model_spec(g ? Model::global_X : Model::local_X), cfg.order));
      int r = pfops::independence_rank(comps);
      c.passed = r == 6;
      c.witness = "rank " + std::to_string(r);
    });
    s.check(p + ".rank_accounting", "fjrw/rank-six-versus-four", [&](CheckResult& c) {
      auto r = fjrw::rank_accounting(g, cfg.order);
      c.passed = true;
      c.witness = "(" + std::to_string(r.total) + "," + std::to_string(r.trivial_x) + "," +
                  std::to_string(r.trivial_y) + "," + std::to_string(r.quotient) + ")";
    });
  }
}

void limit(Suite& s, const RunConfig& cfg) {
  auto L = logseries::continuation_map();
  for (bool g : cfg.models()) {
    std::string p = side(g);
    s.check(p + ".limit_x0", p + "-model/continuation-recovers-Y", [&](CheckResult& c) {
      auto image = logseries::apply_linear_map(L, logseries::reduced_continuation(g, cfg.order));
      auto lim = logseries::limit_at_zero(image, "x");
      auto y = build_series(model_spec(g ? Model::global_Y : Model::local_Y), cfg.order);
      c.passed = logseries::same_function(lim, y);
      c.witness = "order " + std::to_string(cfg.order);
    });
  }
}

void conifold_suite(Suite& s, const RunConfig& cfg) {
  std::vector<conifold::TransitionData> fixtures;
  if (cfg.fixtures.empty()) {
    for (const auto& n : conifold::builtin_transition_names()) fixtures.push_back(conifold::builtin_transition(n));
  } else {
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(cfg.fixtures)) {
      if (e.path().extension() == ".tdata") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
      try {
        fixtures.push_back(conifold::load_transition(path.string()));
      } catch (const Error& e) {
        CheckResult& c = s.add(path.filename().string() + ".parse", "conifold/transition-data");
        c.witness = e.what();
      }
    }
  }
  const int order = std::max(cfg.order, 6);
  for (const auto& d : fixtures) {
    s.check(d.name + ".decomposition", "conifold/J-splits-as-J1-plus-J2", [&](CheckResult& c) {
      auto dec = conifold::decompose(d, order);
      c.passed = dec.j1 + dec.j2 == conifold::cy_j_series(d, order);
      c.witness = std::to_string(dec.j1.terms.size()) + " + " + std::to_string(dec.j2.terms.size()) + " terms";
    });
    s.check(d.name + ".j1_polynomial", "conifold/J1-trivial-E-monodromy", [&](CheckResult& c) {
      c.passed = conifold::is_polynomial_in_exceptional(conifold::decompose(d, order).j1, d);
      c.witness = c.passed ? "finite support in the exceptional variables" : "infinite or negative support";
    });
    s.check(d.name + ".fiber_sum", "conifold/fiber-sum-relation", [&](CheckResult& c) {
      int ymax = 0;
      for (const auto& [b, n] : d.expected) ymax = std::max(ymax, conifold::degree(b));
      auto y = conifold::restrict_to_locus(conifold::decompose(d, order).j1, d, ymax);
      auto got = conifold::invariants(y);
      c.passed = got == d.expected;
      std::string w;
      for (const auto& [b, n] : got) w += (w.empty() ? "" : " ") + conifold::format_class(b) + "=" + cohring::to_string(n);
      c.witness = w.empty() ? "no invariants" : w;
    });
  }
}

void fjrw_suite(Suite& s, const RunConfig& cfg) {
  for (bool g : cfg.models()) {
    std::string p = side(g);
    std::vector<fjrw::Comparison> rows;
    try {
      rows = fjrw::compare_limit(g, 10);
    } catch (const Error& e) {
      CheckResult& c = s.add(p + ".compare_limit", "fjrw/recovers-up-to-scalar");
      c.witness = e.what();
      continue;
    }
    for (const auto& r : rows) {
      CheckResult& c = s.add(p + "." + r.sector + ".compare_limit", "fjrw/recovers-up-to-scalar");
      c.passed = true;
      c.witness = "constant " + r.constant.to_string() + " for l <= " + std::to_string(r.order);
    }
  }
  (void)cfg;
  s.check("narrow_rank", "fjrw/narrow-generators", [&](CheckResult& c) {
    auto reg = fjrw::fjrw_regularized(1);
    int n = static_cast<int>(fjrw::Descriptor{}.narrow.size());
    c.passed = n == 2 && !reg.phi0.terms.empty() && !reg.phi1.terms.empty();
    c.witness = std::to_string(n) + " narrow generators";
  });
}

// -------------------------------------------------------------- numeric

void residues(Suite& s, const RunConfig& cfg) {
  mb::ContourSpec right;
  right.height = cfg.contour_height;
  right.panels = cfg.contour_panels;
  mb::ContourSpec left = right;
  left.re_min = -2.5;
  left.re_max = -0.5;
  for (bool g : cfg.models()) {
    std::string p = side(g);
    for (int d2 : {0, 1}) {
      for (std::complex<double> q1 : {std::complex<double>(0.1), std::complex<double>(0.05, 0.02)}) {
        s.check(p + ".right.d2=" + std::to_string(d2) + ".q1=" + fmt(q1), p + "-model/residue-sum-right",
                [&](CheckResult& c) {
                  auto contour = mb::contour_integral(g, d2, q1, right, cfg.z);
                  auto res = mb::enclosed_residues(g, d2, q1, 0, 3, cfg.z);
                  s.toleranced(c, mb::max_abs_diff(contour, res) / std::max(1.0, res.max_abs()), cfg.tol);
                  c.witness = "relative to max(1, |residues|)";
                });
      }
      for (std::complex<double> q1 : {std::complex<double>(2.0), std::complex<double>(1.5, 1.0)}) {
        s.check(p + ".left.d2=" + std::to_string(d2) + ".q1=" + fmt(q1), p + "-model/residue-sum-left",
                [&](CheckResult& c) {
                  auto contour = mb::contour_integral(g, d2, q1, left, cfg.z);
                  auto res = mb::enclosed_residues(g, d2, q1, -2, -1, cfg.z);
                  s.toleranced(c, mb::max_abs_diff(contour, res) / std::max(1.0, res.max_abs()), cfg.tol);
                  c.witness = "relative to max(1, |residues|)";
                });
      }
    }
  }

  // jet calculus underneath all of the above
  s.check("jets.gamma_derivatives", "numerics/gamma-jets", [&](CheckResult& c) {
    auto Y = cohring::y_ambient_ring();
    auto p = mb::Jet::from_element(cohring::RingElement::generator(Y, "p"));
    double worst = 0;
    for (double x0 : {0.2, 0.7, 1.3, 2.1, 3.0}) {
      auto jet = mb::jet_gamma(mb::Jet::scalar(Y, x0) + p);
      auto pk = mb::Jet::scalar(Y, 1);
      double fact = 1;
      for (int k = 1; k <= 3; ++k) {
        pk = pk * p;
        fact *= k;
        std::size_t idx = 0;
        while (pk.coord(idx) == 0.0) ++idx;
        auto diff = [&](double h) {
          auto G = [](double x) { return std::tgamma(x); };
          if (k == 1) return (G(x0 + h) - G(x0 - h)) / (2 * h);
          if (k == 2) return (G(x0 + h) - 2 * G(x0) + G(x0 - h)) / (h * h);
          return (G(x0 + 2 * h) - 2 * G(x0 + h) + 2 * G(x0 - h) - G(x0 - 2 * h)) / (2 * h * h * h);
        };
        double h = k == 3 ? 2e-3 : 1e-3;
        double want = (4 * diff(h / 2) - diff(h)) / 3 / fact;
        worst = std::max(worst, std::abs(jet.coord(idx) - want) / std::max(1.0, std::abs(want)));
      }
    }
    s.toleranced(c, worst, 1e-6);
    c.witness = "Richardson central differences, k = 1..3";
  });
  s.check("jets.homomorphism", "numerics/jet-algebra", [&](CheckResult& c) {
    auto X = cohring::x_ambient_ring();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> pw(-3, 2);
    auto random_z = [&] {
      cohring::ZLaurent a(X);
      for (int t = 0; t < 3; ++t) {
        std::vector<cohring::Rational> coords(X->dimension());
        for (auto& v : coords) v = coef(rng);
        a = a + cohring::ZLaurent(cohring::RingElement(X, coords)).shifted(pw(rng));
      }
      return a;
    };
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      auto a = random_z();
      auto b = random_z();
      auto ja = mb::Jet::from_zlaurent(a, cfg.z);
      auto jb = mb::Jet::from_zlaurent(b, cfg.z);
      auto prod = mb::Jet::from_zlaurent(a * b, cfg.z);
      worst = std::max(worst, mb::max_abs_diff(prod, ja * jb) / std::max(1.0, prod.max_abs()));
    }
    s.toleranced(c, worst, 1e-10);
    c.witness = "100 random pairs";
  });
}

void reduction(Suite& s, const RunConfig& cfg) {
  const double tol = std::min(cfg.tol, 1e-10);
  for (bool g : cfg.models()) {
    std::string p = side(g);
    s.check(p + ".reduction.order4", p + "-model/continuation-reduces", [&](CheckResult& c) {
      mb::ReductionOptions opt;
      opt.z = cfg.z;
      opt.tol = tol;
      auto rep = mb::verify_reduction(g, 4, opt);
      c.max_error = rep.max_rel_error;
      c.tolerance = tol;
      c.passed = true;
      c.witness = "relative to max(1, |exact|), constant " + fmt(rep.constant_estimate) + ", largest absolute deviation at (" +
                  std::to_string(rep.worst.first) + "," + std::to_string(rep.worst.second) + ")";
    });
  }
}

void monodromy(Suite& s, const RunConfig& cfg) {
  (void)cfg;
  for (std::complex<double> q : {std::complex<double>(0.5), std::complex<double>(0.6, 0.3),
                                 std::complex<double>(0.7, -0.4), std::complex<double>(1.3, 0.5),
                                 std::complex<double>(0.4, 0.5)}) {
    for (int order : {2, 3}) {
      s.check("Li" + std::to_string(order) + ".q=" + fmt(q), "polylog/branched-at-one", [&](CheckResult& c) {
        auto jump = mb::polylog_monodromy_jump(order, q);
        auto want = mb::polylog_jump_formula(order, q);
        s.toleranced(c, std::abs(jump - want), 1e-6);
        c.witness = "jump " + fmt(jump);
      });
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("--tol must be positive");
  if (order < 2) throw std::invalid_argument("--order must be at least 2");
  if (model != "local" && model != "global" && model != "both")
    throw std::invalid_argument("--model must be local, global or both for verify");
  if (contour_panels < 1 || !(contour_height > 0)) throw std::invalid_argument("bad contour parameters");
}

std::vector<bool> RunConfig::models() const {
  if (model == "local") return {false};
  if (model == "global") return {true};
  return {false, true};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"annihilation", "equivalence", "ranks",    "residues", "reduction",
                                              "limit",        "monodromy",   "conifold", "fjrw"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg) {
  Suite s{suite, {}};
  if (suite == "annihilation") {
    annihilation(s, cfg);
  } else if (suite == "equivalence") {
    equivalence(s, cfg);
  } else if (suite == "ranks") {
    ranks(s, cfg);
  } else if (suite == "residues") {
    residues(s, cfg);
  } else if (suite == "reduction") {
    reduction(s, cfg);
  } else if (suite == "limit") {
    limit(s, cfg);
  } else if (suite == "monodromy") {
    monodromy(s, cfg);
  } else if (suite == "conifold") {
    conifold_suite(s, cfg);
  } else if (suite == "fjrw") {
    fjrw_suite(s, cfg);
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return s.out;
}

nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["suite"] = c.suite;
    j["check_id"] = c.check_id;
    j["paper_anchor"] = c.paper_anchor;
    j["status"] = c.passed ? "pass" : "fail";
    j["max_error"] = c.max_error ? nlohmann::ordered_json(*c.max_error) : nlohmann::ordered_json(nullptr);
    j["tolerance"] = c.tolerance ? nlohmann::ordered_json(*c.tolerance) : nlohmann::ordered_json(nullptr);
    j["witness"] = c.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<CheckResult> from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("report is not a JSON array");
  std::vector<CheckResult> out;
  for (const auto& e : j) {
    CheckResult c;
    c.suite = e.at("suite").get<std::string>();
    c.check_id = e.at("check_id").get<std::string>();
    c.paper_anchor = e.at("paper_anchor").get<std::string>();
    const auto status = e.at("status").get<std::string>();
    if (status != "pass" && status != "fail") throw std::runtime_error("bad status '" + status + "'");
    c.passed = status == "pass";
    if (!e.at("max_error").is_null()) c.max_error = e.at("max_error").get<double>();
    if (!e.at("tolerance").is_null()) c.tolerance = e.at("tolerance").get<double>();
    c.witness = e.at("witness").get<std::string>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tdm::cli
