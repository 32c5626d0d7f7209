#pragma once

#include <string>

#include "nwr/circuit.hpp"

namespace nwr {

// Input id for bit `bit` of reduced player (group, member); both 1-based.
std::string reduced_action_bit_id(int group, int member, int bit);

// Payoff circuit of player (group, member) in the CircuitSAT reduction game
// built from `source` with m actions per player:
//
//   u(a) = (m + 1) * f(a) + ((member + sum_l a_{group,l}) mod m)
//
// where f(a) = 1 iff every group is unanimous on a value in {0, 1} and the
// induced assignment satisfies `source`. Inputs are the n*m players' action
// bits (ceil(log2 m) each, little-endian, players ordered group-major).
// The output is a payout with denominator 1.
Circuit compile_reduction1_payoff(const Circuit& source, int m, int group, int member);

}  // namespace nwr
