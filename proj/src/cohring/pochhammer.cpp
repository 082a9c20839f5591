#include "tdm/cohring/pochhammer.hpp"

#include "tdm/errors.hpp"

namespace tdm::cohring {

PochhammerSplit pochhammer_split(const RingElement& u, int a, int b) {
  const RingPtr& spec = u.spec();
  PochhammerSplit out{ZLaurent::one(spec), 0};
  int lo = std::min(a, b) + 1;
  int hi = std::max(a, b);
  ZLaurent prod = ZLaurent::one(spec);
  for (int m = lo; m <= hi; ++m) {
    if (m == 0) {
      out.zero_factors = a >= b ? 1 : -1;
      continue;
    }
    prod *= ZLaurent(u) + ZLaurent::scalar(spec, m, 1);
  }
  out.value = a >= b ? prod : zl_invert(prod);
  return out;
}

ZLaurent pochhammer_ratio(const RingElement& u, int a, int b) {
  PochhammerSplit s = pochhammer_split(u, a, b);
  if (s.zero_factors > 0) return s.value * ZLaurent(u);
  if (s.zero_factors < 0) return s.value * zl_invert(ZLaurent(u));
  return s.value;
}

}  // namespace tdm::cohring
