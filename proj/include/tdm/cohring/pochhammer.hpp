#pragma once

#include "tdm/cohring/zlaurent.hpp"

namespace tdm::cohring {

// prod_{m<=a}(u+mz) / prod_{m<=b}(u+mz) in finite form:
// prod_{m=b+1}^{a}(u+mz) for a >= b, the inverse of prod_{m=a+1}^{b} otherwise.
// Throws NotInvertible when a nilpotent m = 0 factor would be inverted.
ZLaurent pochhammer_ratio(const RingElement& u, int a, int b);

// Same product with the m = 0 factor left out; `zero_factors` is +1 when u
// sits in the numerator, -1 in the denominator, 0 when absent. Lets callers
// cancel nilpotent m = 0 factors across several ratios.
struct PochhammerSplit {
  ZLaurent value;
  int zero_factors = 0;
};
PochhammerSplit pochhammer_split(const RingElement& u, int a, int b);

}  // namespace tdm::cohring
