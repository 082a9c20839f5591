#pragma once

#include <complex>
#include <vector>

namespace tdm::mbnumeric {

using cplx = std::complex<double>;

// Li_s(q) for s in {1, 2, 3}: series near the start of the route, then
// transport of (Li_1, Li_2, Li_3) along the waypoints `path` followed by q.
// With no path the route is radial from 0.25 q/|q|. Throws BranchPointError
// when a segment passes within 1e-3 of q = 1.
cplx polylog(int s, cplx q, const std::vector<cplx>& path = {});

// Li_s continued once around the closed loop (starting and ending at q)
// minus its principal value at q.
cplx polylog_loop_difference(int s, cplx q, const std::vector<cplx>& loop);

// Clockwise circle about 1 through q (|q - 1| < 1).
cplx polylog_monodromy_jump(int s, cplx q, int segments = 64);

// 2 pi i / Gamma(s) * log(q)^(s-1)
cplx polylog_jump_formula(int s, cplx q);

}  // namespace tdm::mbnumeric
