#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "nwr/game.hpp"

namespace nwr {

// Parameters of "at least a fraction alpha of players play a top-beta
// action". Both are exact rationals in the open interval (0, 1).
struct TopFracQuery {
  Rational alpha;
  Rational beta;

  TopFracQuery(Rational alpha, Rational beta);

  // ceil(alpha * n): the number of qualifying players required.
  std::int64_t required_players(std::size_t n) const;
  // ceil(beta * m) / m for a player with m actions.
  Rational effective_beta(int m) const;
  // sum_i ceil(beta * m_i) / m_i >= ceil(alpha * n): the precondition under
  // which a single uniform draw succeeds with the advertised probability.
  bool meets_sampling_precondition(std::span<const int> action_counts) const;
};

// Number of alternatives that are strictly better for `player` than the
// action played at `profile`.
int strictly_better_count(const GameView& g, std::size_t player, std::span<const int> profile);

// Top-beta test on an already computed strictly-better count.
bool is_top_beta(int strictly_better, const Rational& beta, int actions);

struct ResponseFlags {
  int strictly_better = 0;
  bool is_best = false;
  // Strictly below every alternative. Bottom ties and single-action players
  // are never worst responses.
  bool is_worst = false;
  std::optional<bool> top_beta;
};

ResponseFlags classify(const GameView& g, std::size_t player, std::span<const int> profile,
                       std::optional<Rational> beta = std::nullopt);

bool is_pne(const GameView& g, std::span<const int> profile);
bool is_nwr(const GameView& g, std::span<const int> profile);

// Number of players at `profile` playing a top-beta action.
int count_top_beta(const GameView& g, std::span<const int> profile, const Rational& beta);
bool satisfies_alpha_beta(const GameView& g, std::span<const int> profile, const TopFracQuery& q);

// Index of the lowest-numbered worst-responding player, if any.
std::optional<std::size_t> first_worst_responder(const GameView& g, std::span<const int> profile);

}  // namespace nwr
