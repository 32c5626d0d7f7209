#pragma once

#include <cstdint>

#include "nwr/game.hpp"
#include "nwr/responses.hpp"

namespace nwr {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2024'0001ULL;

struct MonteCarloReport {
  bool success = false;
  Profile profile;     // the returned draw
  int qualifying = 0;  // players playing a top-beta action at `profile`
  int iterations = 0;  // draws used, at most n
  std::uint64_t seed = 0;
  bool guarantee = true;  // false when run with the precondition overridden
};

// False-biased Monte Carlo search for a profile where at least ceil(alpha n)
// players play a top-beta action: up to n independent uniform profile draws,
// returning the first that qualifies, else the last draw as a fallback.
//
// When sum_i ceil(beta m_i)/m_i >= ceil(alpha n) the success probability is
// at least 1/2. Outside that precondition the call throws InvalidInput unless
// `force` is set, in which case the report carries guarantee = false.
MonteCarloReport monte_carlo_topfrac(const GameView& g, const TopFracQuery& q, std::uint64_t seed,
                                     bool force = false);

struct MonteCarloSummary {
  int runs = 0;
  int successes = 0;
};

// Independent runs with seeds first_seed, first_seed + 1, ...
MonteCarloSummary monte_carlo_repeat(const GameView& g, const TopFracQuery& q,
                                     std::uint64_t first_seed, int runs, bool force = false);

}  // namespace nwr
