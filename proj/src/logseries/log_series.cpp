#include "tdm/logseries/log_series.hpp"

#include <numeric>

#include "tdm/errors.hpp"

namespace tdm::logseries {

std::size_t LogSeries::variable_index(std::string_view v) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == v) return i;
  }
  throw ModelError("series has no variable '" + std::string(v) + "'");
}

ZLaurent LogSeries::full_coefficient(const Index& d) const {
  auto it = coeffs.find(d);
  if (it == coeffs.end()) return ZLaurent(spec);
  return global_factor * it->second;
}

LogSeries LogSeries::truncated(int n) const {
  LogSeries r = *this;
  r.order = std::min(order, n);
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
    it = total_degree(it->first) > r.order ? r.coeffs.erase(it) : std::next(it);
  }
  return r;
}

int total_degree(const Index& d) { return std::accumulate(d.begin(), d.end(), 0); }

std::vector<Index> indices_up_to(std::size_t n, int order) {
  std::vector<Index> out;
  Index cur(n, 0);
  auto rec = [&](auto&& self, std::size_t v, int budget) -> void {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      cur[v] = k;
      self(self, v + 1, budget - k);
    }
    cur[v] = 0;
  };
  if (order >= 0) rec(rec, 0, order);
  return out;
}

LogSeries add(const LogSeries& a, const LogSeries& b) {
  if (a.spec != b.spec || a.variables != b.variables || a.prefactor != b.prefactor) {
    throw ModelError("cannot add series with different variables or prefactors");
  }
  LogSeries r = a;
  r.order = std::min(a.order, b.order);
  r.global_factor = ZLaurent::one(a.spec);
  r.coeffs.clear();
  for (const auto* s : {&a, &b}) {
    for (const auto& [d, c] : s->coeffs) {
      if (total_degree(d) > r.order) continue;
      auto [it, inserted] = r.coeffs.emplace(d, ZLaurent(a.spec));
      it->second += s->global_factor * c;
      if (it->second.is_zero()) r.coeffs.erase(it);
    }
  }
  return r;
}

bool same_function(const LogSeries& a, const LogSeries& b) {
  if (a.spec != b.spec || a.variables != b.variables || a.prefactor != b.prefactor) return false;
  int n = std::min(a.order, b.order);
  for (const auto* s : {&a, &b}) {
    for (const auto& [d, c] : s->coeffs) {
      if (total_degree(d) > n) continue;
      if (a.full_coefficient(d) != b.full_coefficient(d)) return false;
    }
  }
  return true;
}

void ScalarLogSeries::add(const Term& t, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

std::vector<ScalarLogSeries> expand_components(const LogSeries& s) {
  const RingPtr& ring = s.spec;
  const std::size_t nv = s.variables.size();
  const int nil = ring->nilpotency_index();

  // exp(sum_v u_v L_v / z) = sum_k prod_v u_v^k_v L_v^k_v / (k_v! z^k_v)
  struct LogTerm {
    Index logs;
    RingElement weight;
  };
  std::vector<LogTerm> log_terms;
  for (const Index& k : indices_up_to(nv, nil - 1)) {
    RingElement w = RingElement::one(ring);
    for (std::size_t v = 0; v < nv; ++v) {
      if (k[v] == 0) continue;
      const RingElement& u = s.prefactor[v].nilpotent;
      w *= u.pow(k[v]) * (1 / cohring::factorial(k[v]));
    }
    if (!w.is_zero()) log_terms.push_back({k, w});
  }

  std::vector<ScalarLogSeries> comps(ring->dimension());
  for (std::size_t b = 0; b < comps.size(); ++b) {
    comps[b].label = ring->basis_text(b);
    comps[b].variables = s.variables;
    comps[b].order = s.order;
    for (const auto& e : s.prefactor) comps[b].sector.push_back(e.scalar);
  }
  for (const auto& [d, c] : s.coeffs) {
    ZLaurent full = s.global_factor * c;
    for (const auto& [zp, e] : full.terms()) {
      for (const auto& lt : log_terms) {
        RingElement prod = e * lt.weight;
        int z = zp - total_degree(lt.logs);
        for (std::size_t b = 0; b < comps.size(); ++b) comps[b].add({d, lt.logs, z}, prod.coord(b));
      }
    }
  }
  std::vector<ScalarLogSeries> out;
  for (auto& c : comps) {
    if (!c.is_zero()) out.push_back(std::move(c));
  }
  return out;
}

LogSeries limit_at_zero(const LogSeries& s, std::string_view v) {
  std::size_t iv = s.variable_index(v);
  const Exponent& e = s.prefactor[iv];
  if (!e.nilpotent.is_zero()) {
    throw MonodromyObstruction("exponent of " + std::string(v) + " has nilpotent part " + e.nilpotent.to_string());
  }
  if (!cohring::is_integer(e.scalar) || e.scalar < 0) {
    throw MonodromyObstruction("exponent of " + std::string(v) + " is " + cohring::to_string(e.scalar));
  }
  LogSeries r;
  r.spec = s.spec;
  r.order = s.order;
  r.global_factor = s.global_factor;
  for (std::size_t i = 0; i < s.variables.size(); ++i) {
    if (i == iv) continue;
    r.variables.push_back(s.variables[i]);
    r.prefactor.push_back(s.prefactor[i]);
  }
  if (e.scalar > 0) return r;
  for (const auto& [d, c] : s.coeffs) {
    if (d[iv] != 0) continue;
    Index rest;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i != iv) rest.push_back(d[i]);
    }
    r.coeffs.emplace(rest, c);
  }
  return r;
}

}  // namespace tdm::logseries
