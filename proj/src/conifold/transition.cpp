#include "tdm/conifold/transition.hpp"

#include <fstream>
#include <sstream>

#include "tdm/embedded_data.hpp"
#include "tdm/errors.hpp"

namespace tdm::conifold {

namespace {

using cohring::parse_rational;

int rank_of(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == static_cast<std::size_t>(rank) || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> to_rational(const std::vector<Class>& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Class read_ints(const std::vector<std::string>& f, std::size_t from, std::size_t to, int line_no) {
  Class c;
  for (std::size_t i = from; i < to; ++i) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoi(f[i], &used));
      if (used != f[i].size()) throw std::invalid_argument(f[i]);
    } catch (const std::exception&) {
      throw TransitionDataError("line " + std::to_string(line_no) + ": expected an integer, got '" + f[i] + "'");
    }
  }
  return c;
}

void add_term(CYJSeries& s, const Class& beta, const Rational& n) {
  JTerm& t = s.terms[beta];
  if (t.curve.empty()) t.curve.assign(s.rank, Rational(0));
  for (int j = 0; j < s.rank; ++j) t.curve[j] += n * beta[j];
  t.point += -2 * n;
}

void prune(CYJSeries& s) {
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    bool zero = it->second.point == 0;
    for (const auto& c : it->second.curve) zero = zero && c == 0;
    it = zero ? s.terms.erase(it) : std::next(it);
  }
}

bool is_exceptional_only(const Class& beta, int r) {
  for (int j = 0; j < r; ++j) {
    if (beta[j] != 0) return false;
  }
  return true;
}

}  // namespace

Class TransitionData::push_forward(const Class& beta) const {
  if (static_cast<int>(beta.size()) != rank()) throw TransitionDataError("class has the wrong length");
  Class out(r, 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < rank(); ++j) out[i] += phi[i][j] * beta[j];
  }
  return out;
}

void TransitionData::validate() const {
  if (r < 1 || m < 0 || k < 0) throw TransitionDataError("dims must satisfy r >= 1, m >= 0, k >= 0");
  if (static_cast<int>(basis.size()) != rank()) throw TransitionDataError("need r + m basis rows");
  for (const auto& b : basis) {
    if (static_cast<int>(b.size()) != rank()) throw TransitionDataError("basis rows have length r + m");
  }
  if (rank_of(to_rational(basis)) != rank()) throw TransitionDataError("basis is singular");
  if (static_cast<int>(phi.size()) != r) throw TransitionDataError("need r rows of phi");
  for (const auto& p : phi) {
    if (static_cast<int>(p.size()) != rank()) throw TransitionDataError("phi rows have length r + m");
  }
  if (rank_of(to_rational(phi)) != r) throw TransitionDataError("phi_* is not surjective");
  if (static_cast<int>(exceptional.size()) != k) throw TransitionDataError("need k exceptional classes");
  for (const auto& e : exceptional) {
    if (static_cast<int>(e.size()) != rank()) throw TransitionDataError("exceptional classes have length r + m");
    if (!is_exceptional_only(e, r)) throw TransitionDataError("exceptional class outside the last m coordinates");
    if (degree(e) <= 0) throw TransitionDataError("exceptional class must be effective and nonzero");
    for (int c : push_forward(e)) {
      if (c != 0) throw TransitionDataError("phi_* does not contract an exceptional class");
    }
  }
  for (const auto& g : table) {
    if (static_cast<int>(g.beta.size()) != rank()) throw TransitionDataError("gw class has the wrong length");
    for (int c : g.beta) {
      if (c < 0) throw TransitionDataError("gw classes need nonnegative coordinates");
    }
    Class img = push_forward(g.beta);
    bool zero = true;
    for (int c : img) zero = zero && c == 0;
    if (zero) throw TransitionDataError("gw table row " + format_class(g.beta) + " is contracted by phi_*");
    if (g.tower && k == 0) throw TransitionDataError("tower row without an exceptional class");
  }
  for (const auto& [b, n] : expected) {
    if (static_cast<int>(b.size()) != r) throw TransitionDataError("expect rows have length r");
  }
}

TransitionData parse_transition(std::string_view text) {
  TransitionData d;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_dims = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto f = split(line);
    if (f.empty()) continue;
    const std::string& key = f[0];
    auto need_dims = [&] {
      if (!have_dims) throw TransitionDataError("line " + std::to_string(line_no) + ": 'dims' must come first");
    };
    if (key == "name") {
      if (f.size() != 2) throw TransitionDataError("line " + std::to_string(line_no) + ": name takes one word");
      d.name = f[1];
    } else if (key == "dims") {
      if (f.size() != 4) throw TransitionDataError("line " + std::to_string(line_no) + ": dims r m k");
      Class v = read_ints(f, 1, 4, line_no);
      d.r = v[0];
      d.m = v[1];
      d.k = v[2];
      have_dims = true;
    } else if (key == "basis" || key == "exceptional" || key == "phi") {
      need_dims();
      if (static_cast<int>(f.size()) != d.rank() + 1)
        throw TransitionDataError("line " + std::to_string(line_no) + ": expected r + m entries");
      Class v = read_ints(f, 1, f.size(), line_no);
      (key == "basis" ? d.basis : key == "phi" ? d.phi : d.exceptional).push_back(v);
    } else if (key == "gw" || key == "expect") {
      need_dims();
      std::size_t len = key == "gw" ? d.rank() : d.r;
      bool tower = key == "gw" && f.back() == "tower";
      std::size_t n = f.size() - (tower ? 1 : 0);
      if (n != len + 3 || f[len + 1] != "=")
        throw TransitionDataError("line " + std::to_string(line_no) + ": expected '" + key + " <class> = <N>'");
      Class beta = read_ints(f, 1, len + 1, line_no);
      Rational value;
      try {
        value = parse_rational(f[len + 2]);
      } catch (const Error&) {
        throw TransitionDataError("line " + std::to_string(line_no) + ": bad rational '" + f[len + 2] + "'");
      }
      if (key == "gw") {
        d.table.push_back({beta, value, tower});
      } else {
        d.expected[beta] = value;
      }
    } else {
      throw TransitionDataError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_dims) throw TransitionDataError("missing dims");
  d.validate();
  return d;
}

TransitionData load_transition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TransitionDataError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_transition(ss.str());
}

TransitionData builtin_transition(std::string_view name) {
  if (name == "conifold_1curve") return parse_transition(data::fixture_conifold_1curve);
  if (name == "small_2curve") return parse_transition(data::fixture_small_2curve);
  throw TransitionDataError("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> builtin_transition_names() { return {"conifold_1curve", "small_2curve"}; }

const JTerm* CYJSeries::find(const Class& beta) const {
  auto it = terms.find(beta);
  return it == terms.end() ? nullptr : &it->second;
}

int degree(const Class& beta) {
  int d = 0;
  for (int c : beta) d += c;
  return d;
}

CYJSeries operator+(const CYJSeries& a, const CYJSeries& b) {
  if (a.rank != b.rank) throw TransitionDataError("adding J-series of different rank");
  CYJSeries s = a;
  s.order = std::min(a.order, b.order);
  for (const auto& [beta, t] : b.terms) {
    JTerm& u = s.terms[beta];
    if (u.curve.empty()) u.curve.assign(s.rank, Rational(0));
    for (int j = 0; j < s.rank; ++j) u.curve[j] += t.curve[j];
    u.point += t.point;
  }
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    it = degree(it->first) > s.order ? s.terms.erase(it) : std::next(it);
  }
  prune(s);
  return s;
}

std::map<Class, Rational> full_table(const TransitionData& data, int order) {
  std::map<Class, Rational> t;
  for (const auto& g : data.table) {
    if (!g.tower) {
      if (degree(g.beta) <= order) t[g.beta] += g.n;
      continue;
    }
    for (Class beta = g.beta; degree(beta) <= order;) {
      t[beta] += g.n;
      for (int j = 0; j < data.rank(); ++j) beta[j] += data.exceptional[0][j];
    }
  }
  for (const auto& e : data.exceptional) {
    for (int n = 1; n * degree(e) <= order; ++n) {
      Class beta = e;
      for (int& c : beta) c *= n;
      t[beta] += Rational(1) / (n * n * n);
    }
  }
  return t;
}

CYJSeries cy_j_series(int rank, const std::map<Class, Rational>& table, int order) {
  CYJSeries s;
  s.rank = rank;
  s.order = order;
  for (const auto& [beta, n] : table) {
    if (static_cast<int>(beta.size()) != rank) throw TransitionDataError("class has the wrong length");
    if (degree(beta) <= order && n != 0) add_term(s, beta, n);
  }
  prune(s);
  return s;
}

CYJSeries cy_j_series(const TransitionData& data, int order) {
  return cy_j_series(data.rank(), full_table(data, order), order);
}

CYJSeries multiple_cover_series(const TransitionData& data, int i, int order) {
  if (i < 1 || i > data.k) throw TransitionDataError("no exceptional class " + std::to_string(i));
  const Class& e = data.exceptional[i - 1];
  CYJSeries s;
  s.rank = data.rank();
  s.order = order;
  for (int n = 1; n * degree(e) <= order; ++n) {
    Class beta = e;
    for (int& c : beta) c *= n;
    JTerm& t = s.terms[beta];
    if (t.curve.empty()) t.curve.assign(s.rank, Rational(0));
    for (int j = 0; j < s.rank; ++j) t.curve[j] += Rational(e[j]) / (n * n);
    t.point += Rational(-2) / (n * n * n);
  }
  return s;
}

Decomposition decompose(const TransitionData& data, int order) {
  CYJSeries j = cy_j_series(data, order);
  Decomposition d;
  d.j1 = CYJSeries{j.rank, order, {}};
  d.j2 = CYJSeries{j.rank, order, {}};
  for (const auto& [beta, t] : j.terms) {
    bool contracted = true;
    for (int c : data.push_forward(beta)) contracted = contracted && c == 0;
    (contracted ? d.j2 : d.j1).terms.emplace(beta, t);
  }
  CYJSeries covers{j.rank, order, {}};
  for (int i = 1; i <= data.k; ++i) covers = covers + multiple_cover_series(data, i, order);
  if (!(covers == d.j2)) throw TransitionDataError("contracted part of J is not the multiple cover sum");
  return d;
}

bool is_polynomial_in_exceptional(const CYJSeries& j1, const TransitionData& data) {
  // a tower is infinite support in q_{r+1}..q_{r+m}
  for (const auto& g : data.table) {
    if (g.tower) return false;
  }
  for (const auto& [beta, t] : j1.terms) {
    for (int j = data.r; j < data.rank(); ++j) {
      if (beta[j] < 0) return false;
    }
  }
  return true;
}

CYJSeries restrict_to_locus(const CYJSeries& j1, const TransitionData& data, int order) {
  for (const auto& g : data.table) {
    if (g.tower) throw LambdaInfinite("fiber over " + format_class(data.push_forward(g.beta)) + " is infinite");
  }
  for (const auto& g : data.table) {
    Class y = data.push_forward(g.beta);
    if (degree(y) <= order && degree(g.beta) > j1.order)
      throw TransitionDataError("J1 truncated at " + std::to_string(j1.order) + " misses the fiber of " +
                                format_class(y));
  }
  CYJSeries out;
  out.rank = data.r;
  out.order = order;
  for (const auto& [beta, t] : j1.terms) {
    Class y = data.push_forward(beta);
    bool zero = true;
    for (int c : y) zero = zero && c == 0;
    if (zero) throw TransitionDataError("J1 has a contracted class " + format_class(beta));
    if (degree(y) > order) continue;
    JTerm& u = out.terms[y];
    if (u.curve.empty()) u.curve.assign(data.r, Rational(0));
    for (int i = 0; i < data.r; ++i) {
      for (int j = 0; j < data.rank(); ++j) u.curve[i] += data.phi[i][j] * t.curve[j];
    }
    u.point += t.point;
  }
  prune(out);
  return out;
}

std::map<Class, Rational> invariants(const CYJSeries& y) {
  std::map<Class, Rational> out;
  for (const auto& [beta, t] : y.terms) {
    Rational n = t.point / -2;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (t.curve[j] != n * beta[j]) throw TransitionDataError("curve and point terms disagree at " + format_class(beta));
    }
    out[beta] = n;
  }
  return out;
}

std::string format_class(const Class& beta) {
  std::string s = "(";
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
  return s + ")";
}

}  // namespace tdm::conifold
