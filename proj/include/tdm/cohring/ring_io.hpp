#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdm/cohring/ring_spec.hpp"

namespace tdm::cohring {

// Polynomial text: sums of terms "c*g1^a*g2^b", e.g. "xi^2 - h*xi", "3*h + 2*xi", "0".
Polynomial parse_polynomial(const std::vector<std::string>& generators, std::string_view text);
Polynomial parse_polynomial(const RingSpec& spec, std::string_view text);

// Ring document:
//
//   ring X
//   generator h 2
//   generator xi 2
//   relation h^4 -> 0
//   relation xi^2 -> h*xi
//
// Blank lines and lines starting with '#' are ignored.
RingPtr parse_ring_spec(std::string_view text);
std::string format_ring_spec(const RingSpec& spec);

}  // namespace tdm::cohring
