#include "tdm/pfops/solutions.hpp"

#include <functional>
#include <map>
#include <numeric>

#include "tdm/errors.hpp"

namespace tdm::pfops {

namespace {

struct Coordinate {
  std::vector<Rational> sector;
  logseries::Index index;
  logseries::Index logs;
  friend bool operator<(const Coordinate& a, const Coordinate& b) {
    return std::tie(a.sector, a.index, a.logs) < std::tie(b.sector, b.index, b.logs);
  }
};

using Filter = std::function<bool(const Coordinate&)>;

std::map<Coordinate, Rational> coordinates(const ScalarLogSeries& f, const Rational& z0) {
  if (z0 == 0) throw NotABasis("z must be evaluated at a nonzero value");
  std::map<Coordinate, Rational> out;
  for (const auto& [t, c] : f.terms) {
    Rational zp = 1;
    for (int i = 0; i < std::abs(t.z_power); ++i) zp *= z0;
    if (t.z_power < 0) zp = 1 / zp;
    Rational& slot = out[{f.sector, t.index, t.logs}];
    slot += c * zp;
  }
  return out;
}

int rank_of(const std::vector<ScalarLogSeries>& fs, const Rational& z0, const Filter& keep) {
  std::vector<std::map<Coordinate, Rational>> rows;
  for (const auto& f : fs) {
    auto row = coordinates(f, z0);
    for (auto it = row.begin(); it != row.end();) {
      it = (it->second == 0 || !keep(it->first)) ? row.erase(it) : std::next(it);
    }
    rows.push_back(std::move(row));
  }
  int rank = 0;
  std::vector<bool> used(rows.size(), false);
  for (;;) {
    // pivot: smallest coordinate among unused nonzero rows
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i].empty()) continue;
      if (piv == rows.size() || rows[i].begin()->first < rows[piv].begin()->first) piv = i;
    }
    if (piv == rows.size()) return rank;
    used[piv] = true;
    ++rank;
    const Coordinate key = rows[piv].begin()->first;
    const Rational pv = rows[piv].begin()->second;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].find(key);
      if (it == rows[i].end()) continue;
      Rational f = it->second / pv;
      for (const auto& [k, c] : rows[piv]) {
        Rational& slot = rows[i][k];
        slot -= f * c;
        if (slot == 0) rows[i].erase(k);
      }
    }
  }
}

Filter bad_in(const std::vector<std::string>& vars, std::string_view v) {
  std::size_t iv = vars.size();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == v) iv = i;
  }
  if (iv == vars.size()) throw NotABasis("solutions have no variable '" + std::string(v) + "'");
  return [iv](const Coordinate& c) { return !cohring::is_integer(c.sector[iv]) || c.logs[iv] > 0; };
}

void check_common(const std::vector<ScalarLogSeries>& fs) {
  for (const auto& f : fs) {
    if (f.variables != fs.front().variables) throw NotABasis("solutions over different variables");
  }
}

}  // namespace

int independence_rank(const std::vector<ScalarLogSeries>& solutions, const Rational& z0) {
  if (solutions.empty()) return 0;
  check_common(solutions);
  return rank_of(solutions, z0, [](const Coordinate&) { return true; });
}

std::string MonodromyClass::to_string() const {
  switch (kind) {
    case Kind::trivial:
      return "trivial";
    case Kind::finite_order:
      return "finite_order(" + std::to_string(order) + ")";
    case Kind::unipotent:
      return "unipotent";
    case Kind::mixed:
      return "mixed";
  }
  return "?";
}

MonodromyClass classify_monodromy(const ScalarLogSeries& f, std::string_view v) {
  std::size_t iv = f.variables.size();
  for (std::size_t i = 0; i < f.variables.size(); ++i) {
    if (f.variables[i] == v) iv = i;
  }
  MonodromyClass m;
  if (iv == f.variables.size()) return m;
  m.exponent = f.sector[iv];
  for (const auto& [t, c] : f.terms) m.log_degree = std::max(m.log_degree, t.logs[iv]);
  bool fractional = !cohring::is_integer(m.exponent);
  if (fractional) m.order = static_cast<int>(m.exponent.get_den().get_si());
  if (fractional && m.log_degree > 0) {
    m.kind = MonodromyClass::Kind::mixed;
  } else if (fractional) {
    m.kind = MonodromyClass::Kind::finite_order;
  } else if (m.log_degree > 0) {
    m.kind = MonodromyClass::Kind::unipotent;
  }
  return m;
}

Filtration monodromy_filtration(const std::vector<ScalarLogSeries>& solutions, std::string_view v,
                                int expected_rank, const Rational& z0) {
  Filtration f;
  f.rank = independence_rank(solutions, z0);
  if (f.rank < expected_rank) {
    throw NotABasis("rank " + std::to_string(f.rank) + " below expected " + std::to_string(expected_rank));
  }
  int n = static_cast<int>(solutions.size());
  // dependent inputs only add to the kernel; count it on the span
  f.trivial = n - rank_of(solutions, z0, bad_in(solutions.front().variables, v)) - (n - f.rank);
  f.quotient = f.rank - f.trivial;
  return f;
}

RestrictionSplit restriction_split(const std::vector<ScalarLogSeries>& solutions, std::string_view x,
                                   std::string_view y, int expected_rank, const Rational& z0) {
  RestrictionSplit r;
  r.trivial_x = monodromy_filtration(solutions, x, expected_rank, z0).trivial;
  r.trivial_y = monodromy_filtration(solutions, y, expected_rank, z0).trivial;
  r.rank = independence_rank(solutions, z0);
  const auto& vars = solutions.front().variables;
  Filter bx = bad_in(vars, x);
  Filter by = bad_in(vars, y);
  int n = static_cast<int>(solutions.size());
  r.intersection =
      n - rank_of(solutions, z0, [&](const Coordinate& c) { return bx(c) || by(c); }) - (n - r.rank);
  r.quotient = r.trivial_y - r.intersection;
  return r;
}

}  // namespace tdm::pfops
