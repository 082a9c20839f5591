#include "tdm/pfops/diff_operator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::pfops {

// ---------------------------------------------------------------- OpPoly

OpPoly OpPoly::constant(std::size_t n, const Rational& c) {
  OpPoly p(n);
  p.add_term(std::vector<int>(n + 1, 0), c);
  return p;
}

OpPoly OpPoly::d(std::size_t n, std::size_t v) {
  OpPoly p(n);
  std::vector<int> m(n + 1, 0);
  m[v] = 1;
  p.add_term(m, 1);
  return p;
}

OpPoly OpPoly::z(std::size_t n) {
  OpPoly p(n);
  std::vector<int> m(n + 1, 0);
  m[n] = 1;
  p.add_term(m, 1);
  return p;
}

void OpPoly::add_term(const std::vector<int>& mono, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int OpPoly::degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, logseries::total_degree(m));
  return deg;
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

OpPoly& OpPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

OpPoly operator*(const OpPoly& a, const OpPoly& b) {
  OpPoly r(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      std::vector<int> m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

namespace {

OpPoly power(const OpPoly& p, int k) {
  OpPoly r = OpPoly::constant(p.nvars(), 1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

}  // namespace

OpPoly OpPoly::shifted(const Index& shift) const {
  std::vector<OpPoly> image;
  for (std::size_t v = 0; v < n_; ++v) {
    OpPoly t = d(n_, v);
    if (shift[v] != 0) t += z(n_) *= Rational(shift[v]);
    image.push_back(std::move(t));
  }
  OpPoly r(n_);
  for (const auto& [m, c] : terms_) {
    OpPoly t = constant(n_, c);
    for (std::size_t v = 0; v < n_; ++v) t = t * power(image[v], m[v]);
    std::vector<int> zm(n_ + 1, 0);
    zm[n_] = m[n_];
    OpPoly zp(n_);
    zp.add_term(zm, 1);
    r += t * zp;
  }
  return r;
}

OpPoly OpPoly::linear_substitution(const std::vector<std::vector<Rational>>& m, std::size_t new_n) const {
  std::vector<OpPoly> image;
  for (std::size_t v = 0; v < n_; ++v) {
    OpPoly t(new_n);
    for (std::size_t w = 0; w < new_n; ++w) {
      if (m[v][w] != 0) t += OpPoly::d(new_n, w) *= m[v][w];
    }
    image.push_back(std::move(t));
  }
  OpPoly r(new_n);
  for (const auto& [mono, c] : terms_) {
    OpPoly t = constant(new_n, c);
    for (std::size_t v = 0; v < n_; ++v) t = t * power(image[v], mono[v]);
    t = t * power(OpPoly::z(new_n), mono[n_]);
    r += t;
  }
  return r;
}

ZLaurent OpPoly::evaluate(const std::vector<ZLaurent>& dvals, const ZLaurent& zval) const {
  std::vector<std::vector<ZLaurent>> pw(n_ + 1);
  auto get = [&](std::size_t v, int k) -> const ZLaurent& {
    auto& list = pw[v];
    const ZLaurent& base = v < n_ ? dvals[v] : zval;
    if (list.empty()) list.push_back(ZLaurent::one(base.spec()));
    while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * base);
    return list[k];
  };
  ZLaurent r(zval.spec());
  for (const auto& [m, c] : terms_) {
    ZLaurent t = ZLaurent::scalar(zval.spec(), c);
    for (std::size_t v = 0; v <= n_; ++v) {
      if (m[v] != 0) t *= get(v, m[v]);
    }
    r += t;
  }
  return r;
}

// ---------------------------------------------------------- DiffOperator

std::size_t DiffOperator::variable_index(std::string_view v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == v) return i;
  }
  throw ParseError("unknown variable '" + std::string(v) + "'");
}

DiffOperator DiffOperator::constant(std::vector<std::string> vars, const Rational& c) {
  DiffOperator r(std::move(vars));
  r.add_term(Index(r.vars_.size(), 0), OpPoly::constant(r.vars_.size(), c));
  return r;
}

DiffOperator DiffOperator::d(std::vector<std::string> vars, std::string_view v) {
  DiffOperator r(std::move(vars));
  r.add_term(Index(r.vars_.size(), 0), OpPoly::d(r.vars_.size(), r.variable_index(v)));
  return r;
}

DiffOperator DiffOperator::z(std::vector<std::string> vars) {
  DiffOperator r(std::move(vars));
  r.add_term(Index(r.vars_.size(), 0), OpPoly::z(r.vars_.size()));
  return r;
}

DiffOperator DiffOperator::variable(std::vector<std::string> vars, std::string_view v, int power) {
  DiffOperator r(std::move(vars));
  Index a(r.vars_.size(), 0);
  a[r.variable_index(v)] = power;
  r.add_term(a, OpPoly::constant(r.vars_.size(), 1));
  return r;
}

void DiffOperator::add_term(const Index& a, const OpPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.emplace(a, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DiffOperator::check_same(const DiffOperator& o) const {
  if (vars_ != o.vars_) throw ParseError("operators over different variables");
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  check_same(o);
  for (const auto& [a, p] : o.terms_) add_term(a, p);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  check_same(o);
  for (const auto& [a, p] : o.terms_) {
    OpPoly neg = p;
    neg *= Rational(-1);
    add_term(a, neg);
  }
  return *this;
}

DiffOperator& DiffOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, p] : terms_) p *= c;
  return *this;
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  a.check_same(b);
  DiffOperator r(a.vars_);
  // (v^a P)(v^b Q) = v^(a+b) P(D + b z) Q
  for (const auto& [ia, pa] : a.terms_) {
    for (const auto& [ib, pb] : b.terms_) {
      Index sum(ia.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ia[i] + ib[i];
      r.add_term(sum, pa.shifted(ib) * pb);
    }
  }
  return r;
}

DiffOperator DiffOperator::left_multiplied(const Index& u) const {
  DiffOperator r(vars_);
  for (const auto& [a, p] : terms_) {
    Index sum(a.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = a[i] + u[i];
    r.add_term(sum, p);
  }
  return r;
}

int DiffOperator::min_shift() const {
  int m = 0;
  bool first = true;
  for (const auto& [a, p] : terms_) {
    int t = logseries::total_degree(a);
    m = first ? t : std::min(m, t);
    first = false;
  }
  return m;
}

std::string DiffOperator::to_string() const {
  std::ostringstream os;
  bool first = true;
  const std::size_t n = vars_.size();
  for (const auto& [a, p] : terms_) {
    for (const auto& [m, c] : p.terms()) {
      std::vector<std::string> factors;
      for (std::size_t v = 0; v < n; ++v) {
        if (a[v] == 0) continue;
        factors.push_back(vars_[v] + (a[v] == 1 ? "" : "^" + std::to_string(a[v])));
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (m[v] == 0) continue;
        factors.push_back("D_" + vars_[v] + (m[v] == 1 ? "" : "^" + std::to_string(m[v])));
      }
      if (m[n] != 0) factors.push_back(m[n] == 1 ? "z" : "z^" + std::to_string(m[n]));
      Rational mag = abs(c);
      std::string body;
      for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
      if (factors.empty()) {
        body = cohring::to_string(mag);
      } else if (mag != 1) {
        body = cohring::to_string(mag) + "*" + body;
      }
      if (first) {
        os << (c < 0 ? "-" : "") << body;
      } else {
        os << (c < 0 ? " - " : " + ") << body;
      }
      first = false;
    }
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
  enum Kind { number, name, op, end } kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Token::name, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::string_view("+-*^()").find(c) != std::string_view::npos) {
      out.push_back({Token::op, std::string(1, c)});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in operator");
    }
  }
  out.push_back({Token::end, ""});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : toks_(tokenize(text)), vars_(vars) {}

  DiffOperator parse() {
    DiffOperator r = expr();
    if (peek().kind != Token::end) throw ParseError("trailing input at '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(const char* op) {
    if (peek().kind == Token::op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffOperator expr() {
    bool neg = accept("-");
    if (!neg) accept("+");
    DiffOperator r = term();
    if (neg) r *= Rational(-1);
    for (;;) {
      if (accept("+")) {
        r += term();
      } else if (accept("-")) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  DiffOperator term() {
    DiffOperator r = factor();
    while (accept("*")) r = r * factor();
    return r;
  }

  DiffOperator factor() {
    bool is_var = false;
    std::string var;
    DiffOperator base = atom(is_var, var);
    if (!accept("^")) return base;
    bool neg = accept("-");
    if (peek().kind != Token::number || peek().text.find('/') != std::string::npos) {
      throw ParseError("exponent must be an integer");
    }
    int k = std::stoi(toks_[pos_++].text);
    if (neg) k = -k;
    if (is_var) return DiffOperator::variable(vars_, var, k);
    if (k < 0) throw ParseError("negative power of a non-variable factor");
    DiffOperator r = DiffOperator::constant(vars_, 1);
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
  }

  DiffOperator atom(bool& is_var, std::string& var) {
    const Token t = peek();
    if (t.kind == Token::number) {
      ++pos_;
      return DiffOperator::constant(vars_, cohring::parse_rational(t.text));
    }
    if (t.kind == Token::name) {
      ++pos_;
      if (t.text == "z") return DiffOperator::z(vars_);
      if (t.text.rfind("D_", 0) == 0) {
        std::string v = t.text.substr(2);
        if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) {
          throw ParseError("derivative in unknown variable '" + v + "'");
        }
        return DiffOperator::d(vars_, v);
      }
      if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end()) {
        throw ParseError("unknown symbol '" + t.text + "'");
      }
      is_var = true;
      var = t.text;
      return DiffOperator::variable(vars_, var);
    }
    if (accept("(")) {
      DiffOperator r = expr();
      if (!accept(")")) throw ParseError("missing ')'");
      return r;
    }
    throw ParseError("unexpected token '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& vars_;
};

}  // namespace

DiffOperator parse_operator(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

// ---------------------------------------------------------- substitution

MonomialMap conifold_substitution() { return {{"q1", "q2"}, {"x", "y"}, {{-1, 0}, {1, 1}}}; }

namespace {

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw MapError("exponent matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw MapError("monomial map is not invertible");
    std::swap(m[piv], m[col]);
    Rational inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  }
  return out;
}

}  // namespace

DiffOperator substitute_variables(const DiffOperator& op, const MonomialMap& map) {
  if (op.variables() != map.old_vars) throw MapError("operator variables do not match the map");
  const std::size_t n = map.old_vars.size();
  if (map.new_vars.size() != n || map.exponents.size() != n) throw MapError("monomial map must be square");
  auto inv = invert(map.exponents);
  for (const auto& row : inv) {
    for (const auto& x : row) {
      if (!cohring::is_integer(x)) throw MapError("monomial map is not unimodular");
    }
  }
  // D_old_v = sum_w A[w][v] D_new_w
  std::vector<std::vector<Rational>> dsub(n, std::vector<Rational>(n));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) dsub[v][w] = map.exponents[w][v];
  }
  DiffOperator r(map.new_vars);
  for (const auto& [a, p] : op.terms()) {
    Index b(n, 0);
    for (std::size_t w = 0; w < n; ++w) {
      Rational s = 0;
      for (std::size_t v = 0; v < n; ++v) s += a[v] * inv[v][w];
      b[w] = static_cast<int>(s.get_num().get_si());
    }
    r.add_term(b, p.linear_substitution(dsub, n));
  }
  return r;
}

std::optional<UnitFactor> unit_factor(const DiffOperator& a, const DiffOperator& b) {
  if (a.variables() != b.variables()) return std::nullopt;
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return UnitFactor{1, Index(a.variables().size(), 0)};
    return std::nullopt;
  }
  if (a.terms().size() != b.terms().size()) return std::nullopt;
  const auto& [ka, pa] = *a.terms().begin();
  const auto& [kb, pb] = *b.terms().begin();
  Index u(ka.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = ka[i] - kb[i];
  Rational c = pa.terms().begin()->second / pb.terms().begin()->second;
  DiffOperator scaled = b.left_multiplied(u);
  scaled *= c;
  if (scaled != a) return std::nullopt;
  return UnitFactor{c, u};
}

// ---------------------------------------------------------------- apply

int tracked_order(const DiffOperator& op, const LogSeries& s) { return s.order + op.min_shift(); }

LogSeries apply(const DiffOperator& op, const LogSeries& s) {
  std::vector<std::size_t> pos;
  for (const auto& v : op.variables()) pos.push_back(s.variable_index(v));

  LogSeries r = s;
  r.coeffs.clear();
  r.order = tracked_order(op, s);
  const ZLaurent zval = ZLaurent::scalar(s.spec, 1, 1);

  for (const auto& [d, c] : s.coeffs) {
    if (logseries::total_degree(d) > s.order) continue;
    std::vector<ZLaurent> eig;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const auto& e = s.prefactor[pos[i]];
      eig.push_back(ZLaurent(e.nilpotent) + ZLaurent::scalar(s.spec, e.scalar + d[pos[i]], 1));
    }
    for (const auto& [a, p] : op.terms()) {
      Index target = d;
      for (std::size_t i = 0; i < pos.size(); ++i) target[pos[i]] += a[i];
      if (logseries::total_degree(target) > r.order) continue;
      ZLaurent val = p.evaluate(eig, zval) * c;
      if (val.is_zero()) continue;
      auto [it, inserted] = r.coeffs.emplace(target, ZLaurent(s.spec));
      it->second += val;
      if (it->second.is_zero()) r.coeffs.erase(it);
    }
  }
  return r;
}

}  // namespace tdm::pfops
