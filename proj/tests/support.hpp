#pragma once

// Test-side generators and brute-force oracles. Nothing here calls the
// library's classification code, so the oracles stay independent.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nwr/circuit.hpp"
#include "nwr/game.hpp"
#include "nwr/rational.hpp"

namespace testsupport {

using nwr::Circuit;
using nwr::ExplicitGame;
using nwr::Profile;
using nwr::Rational;

inline Circuit make_circuit(std::string name, std::vector<std::string> inputs,
                            std::vector<std::tuple<std::string, nwr::GateKind, std::vector<std::string>>> gates,
                            std::vector<std::string> outputs) {
  Circuit c;
  c.name = std::move(name);
  c.inputs = std::move(inputs);
  for (auto& [id, kind, ops] : gates) c.gates.push_back(nwr::Gate{id, kind, ops});
  c.outputs = std::move(outputs);
  return c;
}

// Random single-output circuit; operands only point backwards, so it is acyclic.
inline Circuit random_circuit(std::mt19937_64& rng, int inputs, int gates) {
  Circuit c;
  c.name = "rand";
  std::vector<std::string> nodes;
  for (int i = 1; i <= inputs; ++i) {
    c.inputs.push_back("x" + std::to_string(i));
    nodes.push_back(c.inputs.back());
  }
  for (int g = 1; g <= gates; ++g) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
    nwr::Gate gate;
    gate.id = "g" + std::to_string(g);
    switch (kind(rng)) {
      case 0: gate.kind = nwr::GateKind::And; break;
      case 1: gate.kind = nwr::GateKind::Or; break;
      default: gate.kind = nwr::GateKind::Not; break;
    }
    gate.operands.push_back(nodes[pick(rng)]);
    if (gate.kind != nwr::GateKind::Not) gate.operands.push_back(nodes[pick(rng)]);
    c.gates.push_back(gate);
    nodes.push_back(gate.id);
  }
  c.outputs.push_back(nodes.back());
  return c;
}

// Recursive evaluation straight from the identifier graph.
inline std::vector<std::uint8_t> naive_eval(const Circuit& c, const std::vector<std::uint8_t>& x) {
  std::map<std::string, const nwr::Gate*> by_id;
  for (const auto& g : c.gates) by_id[g.id] = &g;
  std::function<bool(const std::string&)> value = [&](const std::string& id) -> bool {
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
      if (c.inputs[i] == id) return x[i] != 0;
    }
    const nwr::Gate& g = *by_id.at(id);
    switch (g.kind) {
      case nwr::GateKind::And: return value(g.operands[0]) && value(g.operands[1]);
      case nwr::GateKind::Or: return value(g.operands[0]) || value(g.operands[1]);
      case nwr::GateKind::Not: return !value(g.operands[0]);
    }
    return false;
  };
  std::vector<std::uint8_t> out;
  for (const auto& o : c.outputs) out.push_back(value(o) ? 1 : 0);
  return out;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t v, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((v >> i) & 1);
  return b;
}

inline int satisfying_count(const Circuit& c) {
  int count = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << c.inputs.size()); ++v) {
    count += naive_eval(c, bits_of(v, c.inputs.size()))[0];
  }
  return count;
}

// All profiles of a space, player 0 varying fastest.
inline std::vector<Profile> all_profiles(const std::vector<int>& counts) {
  std::vector<Profile> out;
  Profile p(counts.size(), 0);
  for (;;) {
    out.push_back(p);
    std::size_t i = 0;
    while (i < counts.size() && ++p[i] == counts[i]) p[i++] = 0;
    if (i == counts.size()) break;
  }
  return out;
}

inline ExplicitGame game_from(const std::vector<int>& counts,
                              const std::function<Rational(std::size_t, const Profile&)>& u) {
  std::vector<Rational> payoffs;
  for (const auto& p : all_profiles(counts)) {
    for (std::size_t i = 0; i < counts.size(); ++i) payoffs.push_back(u(i, p));
  }
  return ExplicitGame(counts, payoffs);
}

inline ExplicitGame random_game(std::mt19937_64& rng, const std::vector<int>& counts, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> payoffs;
  for (std::size_t k = 0; k < all_profiles(counts).size() * counts.size(); ++k) payoffs.emplace_back(d(rng));
  return ExplicitGame(counts, payoffs);
}

// Identical-interest game plus, per player, an offset that ignores that
// player's own action: u_i(a) = phi(a) + d_i(a_-i). Always an exact potential game.
inline ExplicitGame random_potential_game(std::mt19937_64& rng, const std::vector<int>& counts, int range = 6) {
  std::uniform_int_distribution<int> d(-range, range);
  const auto profiles = all_profiles(counts);
  std::map<Profile, int> phi;
  for (const auto& p : profiles) phi[p] = d(rng);
  std::vector<std::map<Profile, int>> offsets(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (const auto& p : profiles) {
      Profile key = p;
      key[i] = 0;
      if (!offsets[i].count(key)) offsets[i][key] = d(rng);
    }
  }
  return game_from(counts, [&](std::size_t i, const Profile& p) {
    Profile key = p;
    key[i] = 0;
    return Rational(phi.at(p) + offsets[i].at(key), 2);
  });
}

inline ExplicitGame identical_interest(std::mt19937_64& rng, const std::vector<int>& counts) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::map<Profile, int> v;
  for (const auto& p : all_profiles(counts)) v[p] = d(rng);
  return game_from(counts, [&](std::size_t, const Profile& p) { return Rational(v.at(p)); });
}

// Brute-force response oracles.
inline int naive_better(const nwr::GameView& g, std::size_t i, const Profile& a) {
  int better = 0;
  Profile b = a;
  for (int x = 0; x < g.actions(i); ++x) {
    b[i] = x;
    if (x != a[i] && g.utility(i, b) > g.utility(i, a)) ++better;
  }
  return better;
}

inline bool naive_worst(const nwr::GameView& g, std::size_t i, const Profile& a) {
  if (g.actions(i) < 2) return false;
  Profile b = a;
  for (int x = 0; x < g.actions(i); ++x) {
    b[i] = x;
    if (x != a[i] && !(g.utility(i, a) < g.utility(i, b))) return false;
  }
  return true;
}

inline bool naive_nwr(const nwr::GameView& g, const Profile& a) {
  for (std::size_t i = 0; i < g.players(); ++i) {
    if (naive_worst(g, i, a)) return false;
  }
  return true;
}

inline bool naive_pne(const nwr::GameView& g, const Profile& a) {
  for (std::size_t i = 0; i < g.players(); ++i) {
    if (naive_better(g, i, a) > 0) return false;
  }
  return true;
}

// Potential iff every two-player four-cycle closes.
inline bool naive_is_potential(const nwr::GameView& g) {
  const auto counts = g.action_counts();
  for (const auto& a : all_profiles(counts)) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      for (std::size_t j = i + 1; j < counts.size(); ++j) {
        for (int x = 0; x < counts[i]; ++x) {
          for (int y = 0; y < counts[j]; ++y) {
            Profile b = a, c = a, d = a;
            b[i] = x;
            c[i] = x;
            c[j] = y;
            d[j] = y;
            Rational s = (g.utility(i, b) - g.utility(i, a)) + (g.utility(j, c) - g.utility(j, b)) +
                         (g.utility(i, d) - g.utility(i, c)) + (g.utility(j, a) - g.utility(j, d));
            if (s != Rational(0)) return false;
          }
        }
      }
    }
  }
  return true;
}

// (i + 1 + sum_j a_j) mod m with n = m players: each player's utility is a
// cyclic shift of the others'.
inline ExplicitGame harmonic_game(int m) {
  std::vector<int> counts(static_cast<std::size_t>(m), m);
  return game_from(counts, [m](std::size_t i, const Profile& p) {
    int s = static_cast<int>(i) + 1;
    for (int v : p) s += v;
    return Rational(s % m);
  });
}

}  // namespace testsupport
