#pragma once

#include <cstddef>
#include <vector>

#include "nwr/error.hpp"
#include "nwr/game.hpp"
#include "nwr/potential.hpp"

namespace nwr {

// A dynamics step did not raise the path-summed potential, so the game is
// not a potential game after all.
class NotPotential : public Error {
 public:
  using Error::Error;
};

struct DynamicsResult {
  Profile profile;
  std::vector<Profile> trace;  // start, then every visited profile
  std::size_t steps = 0;
};

// Worst-response elimination. While some player worst-responds, the lowest
// such player switches to the alternative with the largest utility gain
// (ties to the lowest action). Ends at a no-worst-response profile.
DynamicsResult nwr_local_search(const GameView& g, const PotentialCertificate& certificate,
                                Profile start);

// Best-response dynamics: the lowest non-best-responding player moves to its
// lowest-index best response. Ends at a pure Nash equilibrium.
DynamicsResult best_response_dynamics(const GameView& g, const PotentialCertificate& certificate,
                                      Profile start);

}  // namespace nwr
