#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwr/circuit.hpp"
#include "nwr/gadget.hpp"
#include "nwr/game.hpp"

namespace nwr {

// Truth assignment, one 0/1 byte per circuit input.
using Assignment = std::vector<std::uint8_t>;

enum class ReductionKind { SatToNwr, PneToNwr, Bqp };

std::string_view to_string(ReductionKind kind);

// A reduced game plus what is needed to map solutions back.
// Reduced player (i, l) has index i * group_size + l (both 0-based here).
struct ReducedGame {
  ReductionKind kind = ReductionKind::SatToNwr;
  std::shared_ptr<const GameView> game;  // direct-evaluation form
  std::size_t group_size = 1;
  std::vector<std::size_t> group_of;     // reduced player -> source player / input

  std::optional<Circuit> source_circuit;       // SatToNwr
  std::shared_ptr<const GameView> source_game;  // PneToNwr
  std::shared_ptr<const GadgetTable> gadget;    // PneToNwr
};

// 1 iff every group of m reduced players agrees on one action in {0, 1} and
// the induced assignment satisfies `c`.
int f_indicator(const Circuit& c, std::span<const int> a, int m);

// nm players with m actions each:
//   u_il(a) = (m + 1) f(a) + ((l + sum_l' a_il') mod m),   l = 1..m
ReducedGame reduce_sat_to_nwr(const Circuit& c, int m);

// The unanimous group actions of a no-worst-response profile; nullopt when
// `a` is not a no-worst-response profile of rg.
std::optional<Assignment> pull_assignment(const ReducedGame& rg, std::span<const int> a);

// nq players with mhat actions each: u_il(a) = u_i(rho(a)). The source must
// have two actions per player and is expected to be a potential game; the
// gadget must be verified with m = 2.
ReducedGame reduce_pne_to_nwr(std::shared_ptr<const GameView> source,
                              std::shared_ptr<const GadgetTable> gadget);

// Gadget value at one group's actions (member 1 is grid coordinate 0).
int rho(const GadgetTable& gadget, std::span<const int> group_actions);
Profile pull_profile(const ReducedGame& rg, std::span<const int> a);

// Payoff circuits of a sat-to-nwr or pne-to-nwr reduced game, one per
// reduced player, with inputs laid out as CircuitGame expects.
std::vector<Circuit> circuit_form(const ReducedGame& rg);

// First profile (in index order) where two games disagree on any utility.
std::optional<Profile> first_disagreement(const GameView& a, const GameView& b,
                                          std::uint64_t budget = kDefaultProfileBudget);

// Binary quadratic program: maximize q.x + 1/2 x^T Q x over x in {0,1}^n.
struct BqpInstance {
  std::vector<std::vector<std::int64_t>> Q;
  std::vector<std::int64_t> q;

  std::size_t size() const { return q.size(); }
  Rational objective(std::span<const int> x) const;
};

// n players with 2 actions each, all receiving the objective. Pull is the
// identity on 0-1 vectors.
ExplicitGame reduce_bqp_to_game(const BqpInstance& inst,
                                std::uint64_t budget = kDefaultProfileBudget);

// Text format:
//   bqp n=<n>
//   q <q_1> ... <q_n>
//   Q <Q_11> ... <Q_1n>        (n rows)
BqpInstance parse_bqp(std::string_view text, const std::string& source = "");
BqpInstance load_bqp(const std::string& path);
std::string serialize(const BqpInstance& inst);

}  // namespace nwr
