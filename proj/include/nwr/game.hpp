#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nwr/circuit.hpp"
#include "nwr/rational.hpp"

namespace nwr {

// One action index per player.
using Profile = std::vector<int>;

// Default cap on the number of profiles any enumeration may visit.
inline constexpr std::uint64_t kDefaultProfileBudget = std::uint64_t{1} << 24;

// Mixed-radix indexing of the profile space. Player 0 is the least
// significant digit, so index order is the enumeration order used by every
// solver and by the explicit game file format.
class ProfileSpace {
 public:
  explicit ProfileSpace(std::vector<int> action_counts);

  std::size_t players() const { return counts_.size(); }
  const std::vector<int>& action_counts() const { return counts_; }

  // Total profile count; throws BudgetExceeded when above `budget`.
  std::uint64_t size(std::uint64_t budget = kDefaultProfileBudget) const;

  Profile profile_at(std::uint64_t index) const;
  void decode(std::uint64_t index, std::span<int> out) const;
  std::uint64_t index_of(std::span<const int> profile) const;

  // Advances to the next profile in index order; false after the last.
  bool next(std::span<int> profile) const;

  bool contains(std::span<const int> profile) const;

 private:
  std::vector<int> counts_;
};

// Uniform game interface: player count, action counts and an exact utility
// oracle. Implementations must be pure so that concurrent enumeration is safe.
class GameView {
 public:
  virtual ~GameView() = default;

  virtual std::size_t players() const = 0;
  virtual int actions(std::size_t player) const = 0;
  virtual Rational utility(std::size_t player, std::span<const int> profile) const = 0;

  std::vector<int> action_counts() const;
  ProfileSpace space() const { return ProfileSpace(action_counts()); }
};

// Fully tabulated game. Payoffs are stored profile-major: the payoffs of the
// profile with index k occupy [k * n, (k + 1) * n).
class ExplicitGame final : public GameView {
 public:
  ExplicitGame(std::vector<int> action_counts, std::vector<Rational> payoffs);

  // Tabulates any game view (within budget).
  static ExplicitGame tabulate(const GameView& game,
                               std::uint64_t budget = kDefaultProfileBudget);

  std::size_t players() const override { return space_.players(); }
  int actions(std::size_t player) const override { return space_.action_counts()[player]; }
  Rational utility(std::size_t player, std::span<const int> profile) const override;

  const ProfileSpace& profile_space() const { return space_; }
  std::span<const Rational> payoffs() const { return payoffs_; }

 private:
  ProfileSpace space_;
  std::vector<Rational> payoffs_;
};

// Game whose payoffs are computed by one payoff circuit per player. Player i
// occupies ceil(log2 m_i) consecutive input bits, little-endian, in player
// order; encodings >= m_i are never generated.
class CircuitGame final : public GameView {
 public:
  CircuitGame(std::vector<int> action_counts, std::vector<Circuit> payoff_circuits);

  std::size_t players() const override { return counts_.size(); }
  int actions(std::size_t player) const override { return counts_[player]; }
  Rational utility(std::size_t player, std::span<const int> profile) const override;

  const std::vector<Circuit>& circuits() const { return circuits_; }
  std::vector<std::uint8_t> encode(std::span<const int> profile) const;

 private:
  std::vector<int> counts_;
  std::vector<int> widths_;
  std::vector<Circuit> circuits_;
  std::vector<CircuitEvaluator> evaluators_;
};

// Bit positions of a player's action within a circuit game's input vector.
std::vector<int> action_bit_widths(std::span<const int> action_counts);

}  // namespace nwr
