#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nwr/game.hpp"

namespace nwr {

// A unilateral-deviation four-cycle whose utility changes do not sum to zero:
//   a -> (x', a_-i) -> (x', y', ...) -> (y', a_-j) -> a
// where x' is player_i's alternative and y' is player_j's.
struct FourCycle {
  Profile base;
  std::size_t player_i = 0;
  int action_i = 0;
  std::size_t player_j = 0;
  int action_j = 0;
  Rational sum;
};

// Signed sum of utility changes around the cycle described by `c`
// (c.sum is ignored).
Rational four_cycle_sum(const GameView& g, const FourCycle& c);

struct PotentialCertificate {
  bool potential = false;
  // When potential: phi per profile index, with phi(all-zeros) = 0.
  std::vector<Rational> phi;
  // When not potential.
  std::optional<FourCycle> counterexample;
};

// Exact-potential test by exhaustive enumeration.
//
// Tabulates phi by path summation from the all-zeros profile and checks the
// potential identity on every unilateral deviation edge. A finite game is an
// exact potential game iff every two-player four-cycle closes; on failure the
// first non-closing four-cycle (in profile index order) is returned.
PotentialCertificate verify_potential(const GameView& g,
                                      std::uint64_t budget = kDefaultProfileBudget);

// Sum of u_k(a^k) - u_k(a^{k-1}) along the path from `base` to `target` that
// switches players to their target action one at a time in `order`. For a
// potential game this equals phi(target) - phi(base) for every order.
Rational potential_along_path(const GameView& g, std::span<const int> base,
                              std::span<const int> target, std::span<const std::size_t> order);

// Same, with players switched in index order.
Rational potential_along_path(const GameView& g, std::span<const int> base,
                              std::span<const int> target);

// phi(a) - phi(base) while some player worst-responds at a; `bound` once no
// one does. Throws InvalidInput if the path potential reaches `bound`.
Rational auxiliary_potential(const GameView& g, std::span<const int> profile,
                             std::span<const int> base, const Rational& bound);

}  // namespace nwr
