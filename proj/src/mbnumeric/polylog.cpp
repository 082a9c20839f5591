#include "tdm/mbnumeric/polylog.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "tdm/errors.hpp"

namespace tdm::mbnumeric {

namespace {

using std::numbers::pi;
constexpr cplx I(0, 1);
using State = std::array<double, 6>;  // Re/Im of Li_1, Li_2, Li_3

std::array<cplx, 3> series(cplx q) {
  std::array<cplx, 3> li{};
  cplx qk = q;
  for (int k = 1; k < 400; ++k) {
    double kd = k;
    li[0] += qk / kd;
    li[1] += qk / (kd * kd);
    li[2] += qk / (kd * kd * kd);
    if (std::abs(qk) < 1e-18) break;
    qk *= q;
  }
  return li;
}

double distance_to_one(cplx a, cplx b) {
  cplx d = b - a;
  double t = std::norm(d) == 0 ? 0 : std::clamp(((1.0 - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
  return std::abs(a + t * d - 1.0);
}

std::array<cplx, 3> transport(std::array<cplx, 3> li, const std::vector<cplx>& route) {
  namespace ode = boost::numeric::odeint;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    cplx a = route[i];
    cplx b = route[i + 1];
    if (distance_to_one(a, b) < 1e-3) throw BranchPointError("path passes through the branch point q = 1");
    cplx d = b - a;
    auto rhs = [a, d](const State& x, State& dx, double t) {
      cplx q = a + t * d;
      cplx l1(x[0], x[1]);
      cplx l2(x[2], x[3]);
      cplx d1 = d / (1.0 - q);
      cplx d2 = l1 * d / q;
      cplx d3 = l2 * d / q;
      dx = {d1.real(), d1.imag(), d2.real(), d2.imag(), d3.real(), d3.imag()};
    };
    State x{li[0].real(), li[0].imag(), li[1].real(), li[1].imag(), li[2].real(), li[2].imag()};
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, x, 0.0, 1.0,
                            1e-3);
    li = {cplx(x[0], x[1]), cplx(x[2], x[3]), cplx(x[4], x[5])};
  }
  return li;
}

std::vector<cplx> route_to(cplx q, const std::vector<cplx>& path) {
  std::vector<cplx> route = path;
  if (route.empty()) route.push_back(q == 0.0 ? cplx(0) : 0.25 * q / std::abs(q));
  if (std::abs(route.front()) > 0.75) throw BranchPointError("route must start inside |q| <= 3/4");
  route.push_back(q);
  return route;
}

void check_order(int s) {
  if (s < 1 || s > 3) throw BranchPointError("polylog order must be 1, 2 or 3");
}

}  // namespace

cplx polylog(int s, cplx q, const std::vector<cplx>& path) {
  check_order(s);
  if (path.empty() && std::abs(q) <= 0.5) return series(q)[s - 1];
  auto route = route_to(q, path);
  return transport(series(route.front()), route)[s - 1];
}

cplx polylog_loop_difference(int s, cplx q, const std::vector<cplx>& loop) {
  check_order(s);
  auto start = std::abs(q) <= 0.5 ? series(q) : transport(series(0.25 * q / std::abs(q)), route_to(q, {}));
  std::vector<cplx> closed{q};
  closed.insert(closed.end(), loop.begin(), loop.end());
  closed.push_back(q);
  auto end = transport(start, closed);
  return end[s - 1] - start[s - 1];
}

cplx polylog_monodromy_jump(int s, cplx q, int segments) {
  double r = std::abs(q - 1.0);
  if (r >= 1.0 || r < 1e-3) throw BranchPointError("loop about q = 1 must have radius in (0, 1)");
  std::vector<cplx> loop;
  for (int k = 1; k < segments; ++k) {
    double theta = -2 * pi * k / segments;
    loop.push_back(1.0 + (q - 1.0) * std::exp(I * theta));
  }
  return polylog_loop_difference(s, q, loop);
}

cplx polylog_jump_formula(int s, cplx q) { return 2 * pi * I / std::tgamma(double(s)) * std::pow(std::log(q), s - 1); }

}  // namespace tdm::mbnumeric
