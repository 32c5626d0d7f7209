#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nwr/game.hpp"
#include "nwr/responses.hpp"

namespace nwr {

enum class Problem { Pne, Nwr, TopFrac };
enum class Mode { Decide, Find, Count };

std::string_view to_string(Problem p);
std::string_view to_string(Mode m);
std::optional<Problem> parse_problem(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

struct SolveOptions {
  std::uint64_t budget = kDefaultProfileBudget;
  unsigned workers = 1;
  // Required for Problem::TopFrac.
  std::optional<TopFracQuery> query;
};

struct SolveResult {
  Problem problem = Problem::Pne;
  Mode mode = Mode::Decide;
  bool found = false;              // decide / find
  std::optional<Profile> profile;  // find, and decide when found
  std::uint64_t count = 0;         // count
  // Profiles a sequential index-order scan examines to reach this answer:
  // first hit + 1 for decide/find, all profiles for count and for misses.
  std::uint64_t scanned = 0;
  std::chrono::nanoseconds elapsed{0};
};

// Whether `profile` qualifies for `problem`.
bool qualifies(const GameView& g, Problem problem, const std::optional<TopFracQuery>& query,
               std::span<const int> profile);

// Exhaustive solver. The profile space is split into fixed blocks handed out
// to `workers` threads; counts are summed and decide/find keep the minimum
// hit index, so results do not depend on the worker count. Throws
// BudgetExceeded when the space is larger than options.budget.
SolveResult solve(const GameView& g, Problem problem, Mode mode, const SolveOptions& options = {});

// "result problem=<p> mode=<m> value=<v> scanned=<N>"
std::string format_result(const SolveResult& r);

// Threshold regime of a top-fraction query on a game:
//   rp    when ceil(alpha n) < beta n
//   hard  when every player has m actions and alpha m > ceil(beta m)
//   wedge otherwise (no guarantee either way)
enum class Regime { Rp, Hard, Wedge };
std::string_view to_string(Regime r);
Regime topfrac_regime(const TopFracQuery& q, std::span<const int> action_counts);

}  // namespace nwr
