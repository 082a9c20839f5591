#include "tdm/cohring/ring_spec.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "tdm/errors.hpp"

namespace tdm::cohring {

namespace {

constexpr std::size_t kMaxBasis = 4096;

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (d[i] > m[i]) return false;
  }
  return true;
}

void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

}  // namespace

std::shared_ptr<const RingSpec> RingSpec::create(std::string name, std::vector<Generator> generators,
                                                 std::vector<Relation> relations) {
  if (generators.empty()) throw RingSpecError("ring '" + name + "' has no generators");
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.degree <= 0) throw RingSpecError("generator '" + g.name + "' must have positive degree");
    if (!seen.insert(g.name).second) throw RingSpecError("duplicate generator '" + g.name + "'");
  }
  std::shared_ptr<RingSpec> spec(new RingSpec());
  spec->name_ = std::move(name);
  spec->generators_ = std::move(generators);
  spec->relations_ = std::move(relations);
  for (auto& r : spec->relations_) {
    if (r.lhs.size() != spec->generators_.size()) throw RingSpecError("relation arity mismatch");
    for (auto it = r.rhs.begin(); it != r.rhs.end();) {
      if (it->first.size() != spec->generators_.size()) throw RingSpecError("relation arity mismatch");
      it = it->second == 0 ? r.rhs.erase(it) : std::next(it);
    }
  }
  spec->validate_rules();
  spec->enumerate_basis();
  spec->check_confluence();
  spec->build_table();
  return spec;
}

std::optional<std::size_t> RingSpec::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> RingSpec::basis_index(const Monomial& m) const {
  auto it = basis_lookup_.find(m);
  if (it == basis_lookup_.end()) return std::nullopt;
  return it->second;
}

int RingSpec::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * generators_[i].degree;
  return d;
}

bool RingSpec::monomial_less(const Monomial& a, const Monomial& b) const {
  int da = degree(a);
  int db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void RingSpec::validate_rules() const {
  for (const auto& r : relations_) {
    if (degree(r.lhs) == 0) throw RingSpecError("relation with constant left side");
    for (const auto& [m, c] : r.rhs) {
      if (degree(m) != degree(r.lhs)) {
        throw RingSpecError("relation " + monomial_text(r.lhs) + " -> ... is not homogeneous");
      }
      if (!monomial_less(m, r.lhs)) {
        throw RingSpecError("relation " + monomial_text(r.lhs) + " -> " + monomial_text(m) +
                            " does not decrease the monomial order");
      }
    }
  }
}

std::optional<Polynomial> RingSpec::rewrite_once(const Monomial& m, const Relation& r) const {
  if (!divides(r.lhs, m)) return std::nullopt;
  Polynomial out;
  for (const auto& [rm, c] : r.rhs) {
    Monomial t = m;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += rm[i] - r.lhs[i];
    add_term(out, t, c);
  }
  return out;
}

Polynomial RingSpec::reduce(Polynomial p) const {
  // Always rewrite the largest reducible monomial with the first applicable
  // rule; every step strictly lowers the multiset of monomials.
  for (;;) {
    const Monomial* target = nullptr;
    const Relation* rule = nullptr;
    for (const auto& [m, c] : p) {
      for (const auto& r : relations_) {
        if (divides(r.lhs, m)) {
          if (!target || monomial_less(*target, m)) {
            target = &m;
            rule = &r;
          }
          break;
        }
      }
    }
    if (!target) return p;
    Monomial m = *target;
    Rational c = p[m];
    p.erase(m);
    Polynomial image = *rewrite_once(m, *rule);
    for (const auto& [t, tc] : image) add_term(p, t, c * tc);
  }
}

void RingSpec::enumerate_basis() {
  auto irreducible = [&](const Monomial& m) {
    return std::none_of(relations_.begin(), relations_.end(),
                        [&](const Relation& r) { return divides(r.lhs, m); });
  };
  std::set<Monomial> found;
  std::deque<Monomial> queue;
  Monomial one(generators_.size(), 0);
  found.insert(one);
  queue.push_back(one);
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      Monomial n = m;
      ++n[g];
      if (irreducible(n) && found.insert(n).second) {
        if (found.size() > kMaxBasis) {
          throw RingSpecError("ring '" + name_ + "' is not finite-dimensional (basis exceeds " +
                              std::to_string(kMaxBasis) + " monomials)");
        }
        queue.push_back(n);
      }
    }
  }
  basis_.assign(found.begin(), found.end());
  std::sort(basis_.begin(), basis_.end(), [&](const Monomial& a, const Monomial& b) { return monomial_less(a, b); });
  for (std::size_t i = 0; i < basis_.size(); ++i) basis_lookup_[basis_[i]] = i;
  top_degree_ = 0;
  for (const auto& m : basis_) top_degree_ = std::max(top_degree_, degree(m));
  int min_gen = generators_.front().degree;
  for (const auto& g : generators_) min_gen = std::min(min_gen, g.degree);
  nilpotency_index_ = top_degree_ / min_gen + 1;
}

void RingSpec::check_confluence() const {
  // Local confluence on every monomial up to the critical degree; together
  // with termination this gives unique normal forms.
  int max_gen = 0;
  for (const auto& g : generators_) max_gen = std::max(max_gen, g.degree);
  int limit = top_degree_ + max_gen;
  for (const auto& a : relations_) {
    for (const auto& b : relations_) {
      Monomial l(a.lhs.size());
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(a.lhs[i], b.lhs[i]);
      limit = std::max(limit, degree(l));
    }
  }
  // Enumerate all monomials of weighted degree <= limit.
  std::vector<Monomial> all;
  Monomial cur(generators_.size(), 0);
  auto recurse = [&](auto&& self, std::size_t g, int budget) -> void {
    if (g == generators_.size()) {
      all.push_back(cur);
      return;
    }
    for (int e = 0; e * generators_[g].degree <= budget; ++e) {
      cur[g] = e;
      self(self, g + 1, budget - e * generators_[g].degree);
    }
    cur[g] = 0;
  };
  recurse(recurse, 0, limit);

  for (const auto& m : all) {
    std::optional<Polynomial> reference;
    for (const auto& r : relations_) {
      auto step = rewrite_once(m, r);
      if (!step) continue;
      Polynomial nf = reduce(*step);
      if (!reference) {
        reference = std::move(nf);
      } else if (nf != *reference) {
        throw RingSpecError("rewrite system of ring '" + name_ + "' is not confluent at " + monomial_text(m));
      }
    }
  }
}

std::vector<Rational> RingSpec::normal_form(const Polynomial& p) const {
  std::vector<Rational> out(basis_.size());
  for (const auto& [m, c] : reduce(p)) {
    auto idx = basis_index(m);
    if (!idx) throw RingSpecError("normal form left a non-basis monomial " + monomial_text(m));
    out[*idx] = c;
  }
  return out;
}

void RingSpec::build_table() {
  const std::size_t n = basis_.size();
  table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Monomial m = basis_[i];
      for (std::size_t g = 0; g < m.size(); ++g) m[g] += basis_[j][g];
      auto coords = normal_form(Polynomial{{m, Rational(1)}});
      for (std::size_t k = 0; k < n; ++k) {
        if (coords[k] != 0) table_[i * n + j].emplace_back(k, coords[k]);
      }
    }
  }
}

std::string RingSpec::monomial_text(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    os << generators_[i].name;
    if (m[i] != 1) os << '^' << m[i];
    first = false;
  }
  return first ? "1" : os.str();
}

RingPtr x_ambient_ring() {
  static const RingPtr ring = [] {
    Polynomial h_xi{{Monomial{1, 1}, Rational(1)}};
    return RingSpec::create("X", {{"h", 2}, {"xi", 2}},
                            {{Monomial{4, 0}, Polynomial{}}, {Monomial{0, 2}, h_xi}});
  }();
  return ring;
}

RingPtr y_ambient_ring() {
  static const RingPtr ring = RingSpec::create("Y", {{"p", 2}}, {{Monomial{5}, Polynomial{}}});
  return ring;
}

RingPtr builtin_ring(std::string_view name) {
  if (name == "X") return x_ambient_ring();
  if (name == "Y") return y_ambient_ring();
  throw RingSpecError("unknown built-in ring '" + std::string(name) + "'");
}

}  // namespace tdm::cohring
