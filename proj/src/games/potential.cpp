#include "nwr/potential.hpp"

#include <numeric>
#include <stdexcept>

#include "nwr/error.hpp"
#include "nwr/responses.hpp"

namespace nwr {

Rational four_cycle_sum(const GameView& g, const FourCycle& c) {
  const std::size_t i = c.player_i;
  const std::size_t j = c.player_j;
  Profile a = c.base;
  Profile ai = a;
  ai[i] = c.action_i;
  Profile aij = ai;
  aij[j] = c.action_j;
  Profile aj = a;
  aj[j] = c.action_j;
  return (g.utility(i, ai) - g.utility(i, a)) + (g.utility(j, aij) - g.utility(j, ai)) +
         (g.utility(i, aj) - g.utility(i, aij)) + (g.utility(j, a) - g.utility(j, aj));
}

namespace {

std::optional<FourCycle> find_open_four_cycle(const GameView& g, const ProfileSpace& space,
                                              std::uint64_t total) {
  const std::size_t n = space.players();
  Profile a(n, 0);
  for (std::uint64_t k = 0; k < total; ++k, space.next(a)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (int x = a[i] + 1; x < g.actions(i); ++x) {
          for (int y = a[j] + 1; y < g.actions(j); ++y) {
            FourCycle c{a, i, x, j, y, Rational(0)};
            Rational s = four_cycle_sum(g, c);
            if (s != Rational(0)) {
              c.sum = s;
              return c;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PotentialCertificate verify_potential(const GameView& g, std::uint64_t budget) {
  ProfileSpace space = g.space();
  const std::uint64_t total = space.size(budget);
  const std::size_t n = space.players();

  // phi(a) = phi(b) + u_j(a) - u_j(b), where j is the highest player not at
  // action 0 and b is a with player j reset. This is exactly the index-order
  // path sum from the all-zeros profile, and b always precedes a.
  std::vector<Rational> phi(total);
  Profile a(n, 0);
  Profile b(n, 0);
  for (std::uint64_t k = 1; k < total; ++k) {
    space.next(a);
    std::size_t j = n;
    while (a[--j] == 0) {
    }
    b = a;
    b[j] = 0;
    phi[k] = phi[space.index_of(b)] + g.utility(j, a) - g.utility(j, b);
  }

  bool consistent = true;
  std::fill(a.begin(), a.end(), 0);
  for (std::uint64_t k = 0; k < total && consistent; ++k, space.next(a)) {
    for (std::size_t i = 0; i < n && consistent; ++i) {
      const Rational here = g.utility(i, a);
      Profile dev = a;
      for (int x = a[i] + 1; x < g.actions(i); ++x) {
        dev[i] = x;
        if (g.utility(i, dev) - here != phi[space.index_of(dev)] - phi[k]) {
          consistent = false;
          break;
        }
      }
    }
  }

  PotentialCertificate cert;
  if (consistent) {
    cert.potential = true;
    cert.phi = std::move(phi);
    return cert;
  }
  cert.counterexample = find_open_four_cycle(g, space, total);
  if (!cert.counterexample) {
    throw std::logic_error("potential identity fails but every four-cycle closes");
  }
  return cert;
}

Rational potential_along_path(const GameView& g, std::span<const int> base,
                              std::span<const int> target, std::span<const std::size_t> order) {
  const std::size_t n = g.players();
  if (base.size() != n || target.size() != n || order.size() != n) {
    throw InvalidInput("potential_along_path: size mismatch");
  }
  std::vector<bool> seen(n, false);
  for (auto p : order) {
    if (p >= n || seen[p]) throw InvalidInput("potential_along_path: order is not a permutation");
    seen[p] = true;
  }
  Profile cur(base.begin(), base.end());
  Rational total(0);
  for (auto p : order) {
    if (cur[p] == target[p]) continue;
    Rational before = g.utility(p, cur);
    cur[p] = target[p];
    total += g.utility(p, cur) - before;
  }
  return total;
}

Rational potential_along_path(const GameView& g, std::span<const int> base,
                              std::span<const int> target) {
  std::vector<std::size_t> order(g.players());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return potential_along_path(g, base, target, order);
}

Rational auxiliary_potential(const GameView& g, std::span<const int> profile,
                             std::span<const int> base, const Rational& bound) {
  if (!first_worst_responder(g, profile)) return bound;
  Rational value = potential_along_path(g, base, profile);
  if (value >= bound) {
    throw InvalidInput("auxiliary potential bound " + bound.to_string() +
                       " does not exceed the potential value " + value.to_string());
  }
  return value;
}

}  // namespace nwr
