#include "nwr/game.hpp"

#include <limits>

#include "nwr/circuit_builder.hpp"
#include "nwr/error.hpp"

namespace nwr {

ProfileSpace::ProfileSpace(std::vector<int> action_counts) : counts_(std::move(action_counts)) {
  if (counts_.empty()) throw InvalidInput("a game needs at least one player");
  for (int m : counts_) {
    if (m < 1) throw InvalidInput("every player needs at least one action");
  }
}

std::uint64_t ProfileSpace::size(std::uint64_t budget) const {
  std::uint64_t total = 1;
  for (int m : counts_) {
    if (total > budget / static_cast<std::uint64_t>(m)) {
      throw BudgetExceeded("profile space exceeds the enumeration budget of " +
                           std::to_string(budget) + " profiles");
    }
    total *= static_cast<std::uint64_t>(m);
  }
  if (total > budget) {
    throw BudgetExceeded("profile space exceeds the enumeration budget of " +
                         std::to_string(budget) + " profiles");
  }
  return total;
}

void ProfileSpace::decode(std::uint64_t index, std::span<int> out) const {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    auto m = static_cast<std::uint64_t>(counts_[i]);
    out[i] = static_cast<int>(index % m);
    index /= m;
  }
}

Profile ProfileSpace::profile_at(std::uint64_t index) const {
  Profile p(counts_.size());
  decode(index, p);
  return p;
}

std::uint64_t ProfileSpace::index_of(std::span<const int> profile) const {
  std::uint64_t index = 0;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    index = index * static_cast<std::uint64_t>(counts_[i]) + static_cast<std::uint64_t>(profile[i]);
  }
  return index;
}

bool ProfileSpace::next(std::span<int> profile) const {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (++profile[i] < counts_[i]) return true;
    profile[i] = 0;
  }
  return false;
}

bool ProfileSpace::contains(std::span<const int> profile) const {
  if (profile.size() != counts_.size()) return false;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= counts_[i]) return false;
  }
  return true;
}

std::vector<int> GameView::action_counts() const {
  std::vector<int> out(players());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = actions(i);
  return out;
}

ExplicitGame::ExplicitGame(std::vector<int> action_counts, std::vector<Rational> payoffs)
    : space_(std::move(action_counts)), payoffs_(std::move(payoffs)) {
  std::uint64_t profiles = space_.size(std::numeric_limits<std::uint64_t>::max());
  if (payoffs_.size() != profiles * space_.players()) {
    throw InvalidInput("payoff table has " + std::to_string(payoffs_.size()) +
                       " entries, expected " + std::to_string(profiles * space_.players()));
  }
}

ExplicitGame ExplicitGame::tabulate(const GameView& game, std::uint64_t budget) {
  ProfileSpace space = game.space();
  std::uint64_t total = space.size(budget);
  std::size_t n = space.players();
  std::vector<Rational> payoffs;
  payoffs.reserve(total * n);
  Profile a(n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    for (std::size_t i = 0; i < n; ++i) payoffs.push_back(game.utility(i, a));
    space.next(a);
  }
  return ExplicitGame(space.action_counts(), std::move(payoffs));
}

Rational ExplicitGame::utility(std::size_t player, std::span<const int> profile) const {
  return payoffs_[space_.index_of(profile) * space_.players() + player];
}

std::vector<int> action_bit_widths(std::span<const int> action_counts) {
  std::vector<int> widths;
  widths.reserve(action_counts.size());
  for (int m : action_counts) widths.push_back(bits_for_count(static_cast<std::uint64_t>(m)));
  return widths;
}

CircuitGame::CircuitGame(std::vector<int> action_counts, std::vector<Circuit> payoff_circuits)
    : counts_(std::move(action_counts)), circuits_(std::move(payoff_circuits)) {
  ProfileSpace check(counts_);
  widths_ = action_bit_widths(counts_);
  if (circuits_.size() != counts_.size()) {
    throw InvalidInput("circuit game: " + std::to_string(counts_.size()) + " players but " +
                       std::to_string(circuits_.size()) + " payoff circuits");
  }
  std::size_t bits = 0;
  for (int w : widths_) bits += static_cast<std::size_t>(w);
  for (const auto& c : circuits_) {
    if (c.inputs.size() != bits) {
      throw InvalidInput("payoff circuit '" + c.name + "' has " + std::to_string(c.inputs.size()) +
                         " inputs, the action encoding needs " + std::to_string(bits));
    }
    if (!c.payout) throw InvalidInput("payoff circuit '" + c.name + "' lacks a payout header");
    evaluators_.emplace_back(c);
  }
}

std::vector<std::uint8_t> CircuitGame::encode(std::span<const int> profile) const {
  std::vector<std::uint8_t> bits;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (int b = 0; b < widths_[i]; ++b) bits.push_back(static_cast<std::uint8_t>((profile[i] >> b) & 1));
  }
  return bits;
}

Rational CircuitGame::utility(std::size_t player, std::span<const int> profile) const {
  auto outputs = evaluators_[player].eval(encode(profile));
  return decode_payout(*circuits_[player].payout, outputs);
}

}  // namespace nwr
