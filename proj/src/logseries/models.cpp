#include "tdm/logseries/models.hpp"

#include <sstream>

#include "tdm/cohring/pochhammer.hpp"
#include "tdm/errors.hpp"

namespace tdm::logseries {

using cohring::frac;
using cohring::pochhammer_split;
using cohring::PochhammerSplit;

namespace {

RingElement gen(const RingPtr& r, const char* name) { return RingElement::generator(r, name); }

// Product of Pochhammer ratios whose nilpotent m = 0 factors are collected
// per base and cancelled between proportional bases.
class SplitProduct {
 public:
  explicit SplitProduct(RingPtr ring) : value_(ZLaurent::one(ring)), scale_(1) {}

  void mul(const RingElement& u, int a, int b, int power = 1) {
    PochhammerSplit s = pochhammer_split(u, a, b);
    for (int i = 0; i < power; ++i) value_ *= s.value;
    if (s.zero_factors != 0) add_base(u, s.zero_factors * power);
  }
  void mul(const ZLaurent& c) { value_ *= c; }

  ZLaurent result() const {
    ZLaurent r = value_ * scale_;
    for (const auto& [b, k] : bases_) {
      if (k < 0) throw ModelError("coefficient has an uncancelled pole at " + b.to_string() + " = 0");
      for (int i = 0; i < k; ++i) r *= ZLaurent(b);
    }
    return r;
  }

 private:
  void add_base(const RingElement& u, int k) {
    for (auto& [b, count] : bases_) {
      auto c = ratio(u, b);
      if (!c) continue;
      // u^k = c^k b^k
      for (int i = 0; i < std::abs(k); ++i) {
        if (k > 0) {
          scale_ *= *c;
        } else {
          scale_ /= *c;
        }
      }
      count += k;
      return;
    }
    bases_.emplace_back(u, k);
  }

  static std::optional<Rational> ratio(const RingElement& u, const RingElement& b) {
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

  ZLaurent value_;
  Rational scale_;
  std::vector<std::pair<RingElement, int>> bases_;
};

Exponent nil_exp(const RingElement& u) { return {0, u}; }
Exponent scalar_exp(const RingPtr& r, const Rational& q) { return {q, RingElement::zero(r)}; }

// u^4-tower coefficient shared by the Y-bar and reduced continuation series.
ZLaurent bar_coefficient(const RingElement& u, int a, int i, int j) {
  SplitProduct prod(u.spec());
  prod.mul(u, 0, j - i, 4);
  prod.mul(a * u, a * j - 3 * i, 0);
  prod.mul(u, 0, j);
  prod.mul(ZLaurent::scalar(u.spec(), 1 / cohring::factorial(i), -i));
  return prod.result();
}

ZLaurent fractional_coefficient(const RingPtr& r, bool global, bool sixth, int i, int j) {
  if (j > i) return ZLaurent(r);
  Rational s = sixth ? frac(2, 3) : frac(1, 3);
  int e = sixth ? 1 : 0;
  int f = global ? 3 * i - 5 * j + e : 3 * i - 3 * j + e;
  if (f < 0) return ZLaurent(r);
  Rational c = cohring::rising_factorial(s, i - j);
  c = c * c * c * c;
  c /= cohring::rising_factorial(s + 1, i) * cohring::factorial(f) * cohring::factorial(j);
  if ((i - j) % 2 != 0) c = -c;
  return ZLaurent::scalar(r, c, global ? 0 : -2 * j);
}

}  // namespace

const std::vector<Model>& all_models() {
  static const std::vector<Model> models{Model::local_X,    Model::local_Y,   Model::local_Ybar, Model::local_I5,
                                         Model::local_I6,   Model::global_X,  Model::global_Y,   Model::global_Ybar,
                                         Model::global_I5,  Model::global_I6};
  return models;
}

ModelSpec model_spec(Model m) {
  auto X = cohring::x_ambient_ring();
  auto Y = cohring::y_ambient_ring();
  auto h = gen(X, "h");
  auto xi = gen(X, "xi");
  auto p = gen(Y, "p");
  ModelSpec s{m, "", false, nullptr, {}, {}, {}};
  switch (m) {
    case Model::local_X:
    case Model::global_X:
      s.global = m == Model::global_X;
      s.name = s.global ? "global_X" : "local_X";
      s.ring = X;
      s.variables = {"q1", "q2"};
      s.prefactor = {nil_exp(h), nil_exp(xi)};
      s.global_factor = s.global ? 3 * h + 2 * xi : 3 * h;
      break;
    case Model::local_Y:
    case Model::global_Y:
      s.global = m == Model::global_Y;
      s.name = s.global ? "global_Y" : "local_Y";
      s.ring = Y;
      s.variables = {"y"};
      s.prefactor = {nil_exp(p)};
      s.global_factor = (s.global ? 5 : 3) * p;
      break;
    case Model::local_Ybar:
    case Model::global_Ybar:
      s.global = m == Model::global_Ybar;
      s.name = s.global ? "global_Ybar" : "local_Ybar";
      s.ring = Y;
      s.variables = {"x", "y"};
      s.prefactor = {scalar_exp(Y, 0), nil_exp(p)};
      s.global_factor = (s.global ? 5 : 3) * p;
      break;
    case Model::local_I5:
    case Model::global_I5:
    case Model::local_I6:
    case Model::global_I6: {
      s.global = m == Model::global_I5 || m == Model::global_I6;
      bool sixth = m == Model::local_I6 || m == Model::global_I6;
      s.name = std::string(s.global ? "global_" : "local_") + (sixth ? "I6" : "I5");
      s.ring = Y;
      s.variables = {"x", "y"};
      s.prefactor = {scalar_exp(Y, sixth ? frac(2, 3) : frac(1, 3)), scalar_exp(Y, 0)};
      s.global_factor = RingElement::one(Y);
      break;
    }
  }
  return s;
}

ModelSpec model_spec(std::string_view name) {
  for (Model m : all_models()) {
    ModelSpec s = model_spec(m);
    if (s.name == name) return s;
  }
  throw ModelError("unknown model '" + std::string(name) + "'");
}

ZLaurent coefficient(const ModelSpec& m, const Index& d) {
  if (d.size() != m.variables.size()) throw ModelError("index arity mismatch for " + m.name);
  for (int k : d) {
    if (k < 0) throw ModelError("negative index for " + m.name);
  }
  const RingPtr& r = m.ring;
  switch (m.id) {
    case Model::local_X:
    case Model::global_X: {
      auto h = gen(r, "h");
      auto xi = gen(r, "xi");
      int d1 = d[0];
      int d2 = d[1];
      SplitProduct prod(r);
      if (m.global) {
        prod.mul(3 * h + 2 * xi, 3 * d1 + 2 * d2, 0);
      } else {
        prod.mul(3 * h, 3 * d1, 0);
      }
      prod.mul(h, 0, d1, 4);
      prod.mul(xi, 0, d2);
      prod.mul(xi - h, 0, d2 - d1);
      return prod.result();
    }
    case Model::local_Y:
    case Model::global_Y: {
      auto p = gen(r, "p");
      int a = m.global ? 5 : 3;
      SplitProduct prod(r);
      prod.mul(a * p, a * d[0], 0);
      prod.mul(p, 0, d[0], 5);
      return prod.result();
    }
    case Model::local_Ybar:
    case Model::global_Ybar:
      return bar_coefficient(gen(r, "p"), m.global ? 5 : 3, d[0], d[1]);
    case Model::local_I5:
    case Model::global_I5:
      return fractional_coefficient(r, m.global, false, d[0], d[1]);
    case Model::local_I6:
    case Model::global_I6:
      return fractional_coefficient(r, m.global, true, d[0], d[1]);
  }
  throw ModelError("unhandled model");
}

LogSeries build_series(const ModelSpec& m, int order) {
  LogSeries s;
  s.spec = m.ring;
  s.variables = m.variables;
  s.prefactor = m.prefactor;
  s.order = order;
  s.global_factor = ZLaurent(m.global_factor);
  for (const Index& d : indices_up_to(m.variables.size(), order)) {
    ZLaurent c = coefficient(m, d);
    if (!c.is_zero()) s.coeffs.emplace(d, std::move(c));
  }
  return s;
}

ZLaurent reduced_continuation_coefficient(bool global, int i, int j) {
  if (i < 0 || j < 0) throw ModelError("negative index");
  return bar_coefficient(gen(cohring::x_ambient_ring(), "xi"), global ? 5 : 3, i, j);
}

LogSeries reduced_continuation(bool global, int order) {
  auto X = cohring::x_ambient_ring();
  auto xi = gen(X, "xi");
  LogSeries s;
  s.spec = X;
  s.variables = {"x", "y"};
  s.prefactor = {scalar_exp(X, 0), nil_exp(xi)};
  s.order = order;
  s.global_factor = ZLaurent((global ? 5 : 3) * xi);
  for (const Index& d : indices_up_to(2, order)) {
    ZLaurent c = reduced_continuation_coefficient(global, d[0], d[1]);
    if (!c.is_zero()) s.coeffs.emplace(d, std::move(c));
  }
  return s;
}

RingElement LinearMap::operator()(const RingElement& a) const {
  if (a.spec() != source) throw MapError("element is not in the source ring of the map");
  RingElement r = RingElement::zero(target);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (a.coord(i) != 0) r += a.coord(i) * images[i];
  }
  return r;
}

ZLaurent LinearMap::operator()(const ZLaurent& a) const {
  ZLaurent r(target);
  for (const auto& [k, c] : a.terms()) r += ZLaurent((*this)(c), k);
  return r;
}

bool LinearMap::is_degree_preserving() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].is_zero()) continue;
    auto deg = images[i].degree();
    if (!deg || *deg != source->basis_degree(i)) return false;
  }
  return true;
}

LinearMap continuation_map() {
  auto X = cohring::x_ambient_ring();
  auto Y = cohring::y_ambient_ring();
  auto p = gen(Y, "p");
  LinearMap L{X, Y, std::vector<RingElement>(X->dimension(), RingElement::zero(Y))};
  auto set = [&](const char* text, const RingElement& img) {
    auto e = cohring::parse_element(X, text);
    for (std::size_t i = 0; i < X->dimension(); ++i) {
      if (e.coord(i) != 0) L.images[i] = img;
    }
  };
  set("1", RingElement::one(Y));
  set("xi", p);
  set("h*xi", p.pow(2));
  set("h^2*xi", p.pow(3));
  set("h^3*xi", p.pow(4));
  return L;
}

LogSeries apply_linear_map(const LinearMap& L, const LogSeries& s) {
  if (s.spec != L.source) throw MapError("series ring does not match the source of the map");
  if (L.images.size() != L.source->dimension()) throw MapError("map is not given on the full basis");
  for (const auto& img : L.images) {
    if (img.spec() != L.target) throw MapError("image outside the target ring");
  }
  if (!L.is_degree_preserving()) throw MapError("map does not preserve degrees");

  const int nil = s.spec->nilpotency_index();
  std::vector<std::pair<RingElement, RingElement>> powers;  // (U, L(U)) for prefactor monomials
  for (const Index& k : indices_up_to(s.variables.size(), nil - 1)) {
    RingElement U = RingElement::one(s.spec);
    RingElement LU = RingElement::one(L.target);
    for (std::size_t v = 0; v < k.size(); ++v) {
      U *= s.prefactor[v].nilpotent.pow(k[v]);
      LU *= L(s.prefactor[v].nilpotent).pow(k[v]);
    }
    powers.emplace_back(U, LU);
  }

  LogSeries r;
  r.spec = L.target;
  r.variables = s.variables;
  r.order = s.order;
  r.global_factor = ZLaurent::one(L.target);
  for (const auto& e : s.prefactor) r.prefactor.push_back({e.scalar, L(e.nilpotent)});
  for (const auto& [d, c] : s.coeffs) {
    ZLaurent full = s.global_factor * c;
    for (const auto& [k, e] : full.terms()) {
      RingElement Le = L(e);
      for (const auto& [U, LU] : powers) {
        if (L(U * e) != LU * Le) {
          throw MapError("map is not multiplicative on the prefactor at index " + std::to_string(d[0]) +
                         " (z^" + std::to_string(k) + ")");
        }
      }
    }
    ZLaurent image = L(full);
    if (!image.is_zero()) r.coeffs.emplace(d, std::move(image));
  }
  return r;
}

namespace {

std::string join_index(const Index& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? ";" : "") + std::to_string(d[i]);
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Index parse_index(const std::string& text) {
  Index d;
  for (const auto& part : split(text, ';')) {
    try {
      std::size_t used = 0;
      d.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ParseError("bad index '" + text + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad index '" + text + "'");
    }
  }
  return d;
}

}  // namespace

std::string dump_csv(const LogSeries& s, std::string_view model_name) {
  std::ostringstream os;
  if (!model_name.empty()) os << "# model=" << model_name << '\n';
  os << "# ring=" << s.spec->name() << '\n';
  os << "# variables=";
  for (std::size_t i = 0; i < s.variables.size(); ++i) os << (i ? "," : "") << s.variables[i];
  os << '\n' << "# order=" << s.order << '\n';
  std::string sector;
  for (std::size_t v = 0; v < s.variables.size(); ++v) {
    os << "# exponent=" << s.variables[v] << '|' << cohring::to_string(s.prefactor[v].scalar) << '|'
       << s.prefactor[v].nilpotent.to_string() << '\n';
    sector += (v ? ";" : "") + cohring::to_string(s.prefactor[v].scalar);
  }
  os << "index,sector,z_power,monomial,numerator,denominator\n";
  auto rows = [&](const std::string& index, const ZLaurent& c) {
    for (const auto& [k, e] : c.terms()) {
      for (std::size_t b = 0; b < s.spec->dimension(); ++b) {
        if (e.coord(b) == 0) continue;
        os << index << ',' << sector << ',' << k << ',' << s.spec->basis_text(b) << ',' << e.coord(b).get_num() << ','
           << e.coord(b).get_den() << '\n';
      }
    }
  };
  rows("global", s.global_factor);
  for (const auto& [d, c] : s.coeffs) rows(join_index(d), c);
  return os.str();
}

LogSeries parse_csv(std::string_view text) {
  LogSeries s;
  std::vector<std::string> exps;
  bool have_order = false;
  bool header = false;
  std::map<std::string, std::size_t> basis;
  std::map<Index, std::map<int, std::vector<Rational>>> rows;
  std::map<int, std::vector<Rational>> global_rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "ring") {
        s.spec = cohring::builtin_ring(value);
        for (std::size_t b = 0; b < s.spec->dimension(); ++b) basis[s.spec->basis_text(b)] = b;
      } else if (key == "variables") {
        s.variables = split(value, ',');
      } else if (key == "order") {
        s.order = static_cast<int>(parse_index(value).at(0));
        have_order = true;
      } else if (key == "exponent") {
        exps.push_back(value);
      }
      continue;
    }
    if (!header) {
      if (line != "index,sector,z_power,monomial,numerator,denominator") {
        throw ParseError("line " + std::to_string(lineno) + ": missing CSV header");
      }
      header = true;
      continue;
    }
    if (!s.spec) throw ParseError("CSV rows before the ring line");
    auto f = split(line, ',');
    if (f.size() != 6) throw ParseError("line " + std::to_string(lineno) + ": expected 6 fields");
    auto b = basis.find(f[3]);
    if (b == basis.end()) throw ParseError("line " + std::to_string(lineno) + ": unknown monomial " + f[3]);
    int k = parse_index(f[2]).at(0);
    Rational c = cohring::parse_rational(f[4] + "/" + f[5]);
    auto& slot = f[0] == "global" ? global_rows[k] : rows[parse_index(f[0])][k];
    if (slot.empty()) slot.assign(s.spec->dimension(), Rational(0));
    slot[b->second] = c;
  }
  if (!s.spec || !have_order || !header) throw ParseError("incomplete CSV header");
  if (exps.size() != s.variables.size()) throw ParseError("one exponent line per variable expected");
  for (std::size_t v = 0; v < exps.size(); ++v) {
    auto parts = split(exps[v], '|');
    if (parts.size() != 3 || parts[0] != s.variables[v]) throw ParseError("bad exponent line '" + exps[v] + "'");
    s.prefactor.push_back({cohring::parse_rational(parts[1]), cohring::parse_element(s.spec, parts[2])});
  }
  auto assemble = [&](const std::map<int, std::vector<Rational>>& m) {
    ZLaurent z(s.spec);
    for (const auto& [k, coords] : m) z += ZLaurent(RingElement(s.spec, coords), k);
    return z;
  };
  s.global_factor = assemble(global_rows);
  for (const auto& [d, m] : rows) {
    if (d.size() != s.variables.size()) throw ParseError("index arity mismatch");
    s.coeffs.emplace(d, assemble(m));
  }
  return s;
}

}  // namespace tdm::logseries
