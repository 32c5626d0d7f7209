#include "nwr/local_search.hpp"

#include "nwr/game_io.hpp"
#include "nwr/responses.hpp"

namespace nwr {
namespace {

void require_potential(const GameView& g, const PotentialCertificate& certificate,
                       const Profile& start) {
  if (!certificate.potential) throw InvalidInput("dynamics require a verified potential game");
  if (!g.space().contains(start)) throw InvalidInput("start profile is not valid for this game");
}

// Moves `a` to `next`, checking that the path-summed potential (from the
// all-zeros profile) strictly increases.
void step(const GameView& g, Profile& a, Profile next, DynamicsResult& r) {
  const Profile zero(a.size(), 0);
  Rational before = potential_along_path(g, zero, a);
  Rational after = potential_along_path(g, zero, next);
  if (after <= before) {
    throw NotPotential("potential did not increase on the move " + format_profile(a) + " -> " +
                       format_profile(next));
  }
  a = std::move(next);
  r.trace.push_back(a);
  ++r.steps;
}

}  // namespace

DynamicsResult nwr_local_search(const GameView& g, const PotentialCertificate& certificate,
                                Profile start) {
  require_potential(g, certificate, start);
  DynamicsResult r;
  Profile a = std::move(start);
  r.trace.push_back(a);
  while (auto mover = first_worst_responder(g, a)) {
    const std::size_t i = *mover;
    const Rational current = g.utility(i, a);
    Profile probe = a;
    int best_action = -1;
    Rational best_gain(0);
    for (int x = 0; x < g.actions(i); ++x) {
      if (x == a[i]) continue;
      probe[i] = x;
      Rational gain = g.utility(i, probe) - current;
      if (best_action < 0 || gain > best_gain) {
        best_action = x;
        best_gain = gain;
      }
    }
    Profile next = a;
    next[i] = best_action;
    step(g, a, std::move(next), r);
  }
  r.profile = a;
  return r;
}

DynamicsResult best_response_dynamics(const GameView& g, const PotentialCertificate& certificate,
                                      Profile start) {
  require_potential(g, certificate, start);
  DynamicsResult r;
  Profile a = std::move(start);
  r.trace.push_back(a);
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < g.players() && !moved; ++i) {
      Profile probe = a;
      int best_action = 0;
      Rational best_value;
      for (int x = 0; x < g.actions(i); ++x) {
        probe[i] = x;
        Rational v = g.utility(i, probe);
        if (x == 0 || v > best_value) {
          best_action = x;
          best_value = v;
        }
      }
      if (best_value > g.utility(i, a)) {
        Profile next = a;
        next[i] = best_action;
        step(g, a, std::move(next), r);
        moved = true;
      }
    }
    if (!moved) break;
  }
  r.profile = a;
  return r;
}

}  // namespace nwr
