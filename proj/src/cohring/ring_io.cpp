#include "tdm/cohring/ring_io.hpp"

#include <cctype>
#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::cohring {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses one product "c*g^a*g2" (no sign).
void parse_term(const std::vector<std::string>& gens, std::string_view term, Rational sign, Polynomial& out) {
  Monomial m(gens.size(), 0);
  Rational coeff = sign;
  std::size_t pos = 0;
  bool any = false;
  while (pos <= term.size()) {
    std::size_t star = term.find('*', pos);
    std::string_view factor = trim(term.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
    if (factor.empty()) throw ParseError("empty factor in term '" + std::string(term) + "'");
    any = true;
    if (std::isdigit(static_cast<unsigned char>(factor.front()))) {
      coeff *= parse_rational(factor);
    } else {
      std::string_view name = factor;
      int exp = 1;
      auto caret = factor.find('^');
      if (caret != std::string_view::npos) {
        name = trim(factor.substr(0, caret));
        Rational e = parse_rational(factor.substr(caret + 1));
        if (!is_integer(e) || e < 0) throw ParseError("bad exponent in '" + std::string(factor) + "'");
        exp = static_cast<int>(e.get_num().get_si());
      }
      std::size_t g = 0;
      while (g < gens.size() && gens[g] != name) ++g;
      if (g == gens.size()) throw ParseError("unknown generator '" + std::string(name) + "'");
      m[g] += exp;
    }
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  if (!any) throw ParseError("empty term");
  if (coeff == 0) return;
  auto [it, inserted] = out.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) out.erase(it);
  }
}

}  // namespace

Polynomial parse_polynomial(const std::vector<std::string>& generators, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty polynomial");
  Polynomial out;
  std::size_t pos = 0;
  Rational sign = 1;
  if (text.front() == '-' || text.front() == '+') {
    sign = text.front() == '-' ? -1 : 1;
    pos = 1;
  }
  while (pos < text.size()) {
    std::size_t next = text.find_first_of("+-", pos);
    parse_term(generators, trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)),
               sign, out);
    if (next == std::string_view::npos) break;
    sign = text[next] == '-' ? -1 : 1;
    pos = next + 1;
  }
  return out;
}

Polynomial parse_polynomial(const RingSpec& spec, std::string_view text) {
  std::vector<std::string> names;
  for (const auto& g : spec.generators()) names.push_back(g.name);
  return parse_polynomial(names, text);
}

RingPtr parse_ring_spec(std::string_view text) {
  std::string name = "ring";
  std::vector<RingSpec::Generator> gens;
  std::vector<std::pair<std::string, std::string>> rels;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    std::istringstream ls{std::string(l)};
    std::string key;
    ls >> key;
    if (key == "ring") {
      ls >> name;
    } else if (key == "generator") {
      RingSpec::Generator g;
      if (!(ls >> g.name >> g.degree)) throw ParseError("line " + std::to_string(lineno) + ": bad generator");
      gens.push_back(g);
    } else if (key == "relation") {
      std::string rest(trim(l.substr(8)));
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": relation needs '->'");
      rels.emplace_back(rest.substr(0, arrow), rest.substr(arrow + 2));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + key + "'");
    }
  }
  std::vector<std::string> names;
  for (const auto& g : gens) names.push_back(g.name);
  std::vector<RingSpec::Relation> relations;
  for (const auto& [lhs, rhs] : rels) {
    Polynomial l = parse_polynomial(names, lhs);
    if (l.size() != 1 || l.begin()->second != 1) throw ParseError("relation left side must be a monomial: " + lhs);
    relations.push_back({l.begin()->first, parse_polynomial(names, rhs)});
  }
  return RingSpec::create(name, std::move(gens), std::move(relations));
}

std::string format_ring_spec(const RingSpec& spec) {
  std::ostringstream os;
  os << "ring " << spec.name() << '\n';
  for (const auto& g : spec.generators()) os << "generator " << g.name << ' ' << g.degree << '\n';
  for (const auto& r : spec.relations()) {
    os << "relation " << spec.monomial_text(r.lhs) << " -> ";
    if (r.rhs.empty()) {
      os << '0';
    } else {
      bool first = true;
      for (auto it = r.rhs.rbegin(); it != r.rhs.rend(); ++it) {
        const auto& [m, c] = *it;
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        Rational mag = abs(c);
        if (mag != 1) os << to_string(mag) << '*';
        os << spec.monomial_text(m);
        first = false;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace tdm::cohring
