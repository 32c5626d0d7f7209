#include "nwr/responses.hpp"

#include <vector>

#include "nwr/error.hpp"

namespace nwr {

TopFracQuery::TopFracQuery(Rational alpha_in, Rational beta_in)
    : alpha(alpha_in), beta(beta_in) {
  if (alpha <= Rational(0) || alpha >= Rational(1)) {
    throw InvalidInput("alpha must lie strictly between 0 and 1, got " + alpha.to_string());
  }
  if (beta <= Rational(0) || beta >= Rational(1)) {
    throw InvalidInput("beta must lie strictly between 0 and 1, got " + beta.to_string());
  }
}

std::int64_t TopFracQuery::required_players(std::size_t n) const {
  return ceil_mul(alpha, static_cast<std::int64_t>(n));
}

Rational TopFracQuery::effective_beta(int m) const { return Rational(ceil_mul(beta, m), m); }

bool TopFracQuery::meets_sampling_precondition(std::span<const int> action_counts) const {
  Rational total(0);
  for (int m : action_counts) total += effective_beta(m);
  return total >= Rational(required_players(action_counts.size()));
}

namespace {

// Utilities of every action of `player` against the others' actions in
// `profile`; `scratch` is a mutable copy restored on return.
std::vector<Rational> action_values(const GameView& g, std::size_t player, std::span<int> scratch) {
  int m = g.actions(player);
  int played = scratch[player];
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) {
    scratch[player] = b;
    values.push_back(g.utility(player, scratch));
  }
  scratch[player] = played;
  return values;
}

struct Standing {
  int strictly_better = 0;
  bool worst = false;
};

Standing standing(const GameView& g, std::size_t player, std::span<int> scratch) {
  auto values = action_values(g, player, scratch);
  const Rational& current = values[static_cast<std::size_t>(scratch[player])];
  Standing s;
  bool strictly_below_all = values.size() > 1;
  for (std::size_t b = 0; b < values.size(); ++b) {
    if (static_cast<int>(b) == scratch[player]) continue;
    if (values[b] > current) {
      ++s.strictly_better;
    } else {
      strictly_below_all = false;
    }
  }
  s.worst = strictly_below_all;
  return s;
}

Profile checked_copy(const GameView& g, std::span<const int> profile) {
  if (!g.space().contains(profile)) throw InvalidInput("profile is not valid for this game");
  return Profile(profile.begin(), profile.end());
}

}  // namespace

int strictly_better_count(const GameView& g, std::size_t player, std::span<const int> profile) {
  Profile scratch = checked_copy(g, profile);
  return standing(g, player, scratch).strictly_better;
}

bool is_top_beta(int strictly_better, const Rational& beta, int actions) {
  return Rational(strictly_better) < beta * Rational(actions);
}

ResponseFlags classify(const GameView& g, std::size_t player, std::span<const int> profile,
                       std::optional<Rational> beta) {
  if (player >= g.players()) throw InvalidInput("player index out of range");
  Profile scratch = checked_copy(g, profile);
  Standing s = standing(g, player, scratch);
  ResponseFlags flags;
  flags.strictly_better = s.strictly_better;
  flags.is_best = s.strictly_better == 0;
  flags.is_worst = s.worst;
  if (beta) flags.top_beta = is_top_beta(s.strictly_better, *beta, g.actions(player));
  return flags;
}

bool is_pne(const GameView& g, std::span<const int> profile) {
  Profile scratch = checked_copy(g, profile);
  for (std::size_t i = 0; i < g.players(); ++i) {
    if (standing(g, i, scratch).strictly_better != 0) return false;
  }
  return true;
}

std::optional<std::size_t> first_worst_responder(const GameView& g, std::span<const int> profile) {
  Profile scratch = checked_copy(g, profile);
  for (std::size_t i = 0; i < g.players(); ++i) {
    if (standing(g, i, scratch).worst) return i;
  }
  return std::nullopt;
}

bool is_nwr(const GameView& g, std::span<const int> profile) {
  return !first_worst_responder(g, profile).has_value();
}

int count_top_beta(const GameView& g, std::span<const int> profile, const Rational& beta) {
  Profile scratch = checked_copy(g, profile);
  int count = 0;
  for (std::size_t i = 0; i < g.players(); ++i) {
    if (is_top_beta(standing(g, i, scratch).strictly_better, beta, g.actions(i))) ++count;
  }
  return count;
}

bool satisfies_alpha_beta(const GameView& g, std::span<const int> profile, const TopFracQuery& q) {
  return count_top_beta(g, profile, q.beta) >= q.required_players(g.players());
}

}  // namespace nwr
