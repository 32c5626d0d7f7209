#include "nwr/monte_carlo.hpp"

#include <random>

#include "nwr/error.hpp"

namespace nwr {

MonteCarloReport monte_carlo_topfrac(const GameView& g, const TopFracQuery& q, std::uint64_t seed,
                                     bool force) {
  const auto counts = g.action_counts();
  const bool guarantee = q.meets_sampling_precondition(counts);
  if (!guarantee && !force) {
    throw InvalidInput("alpha=" + q.alpha.to_string() + " beta=" + q.beta.to_string() +
                       " violate sum_i ceil(beta m_i)/m_i >= ceil(alpha n); pass force to run anyway");
  }
  const std::size_t n = counts.size();
  const std::int64_t required = q.required_players(n);

  std::mt19937_64 rng(seed);
  MonteCarloReport report;
  report.seed = seed;
  report.guarantee = guarantee;
  report.profile.assign(n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> pick(0, counts[i] - 1);
      report.profile[i] = pick(rng);
    }
    report.iterations = static_cast<int>(k);
    report.qualifying = count_top_beta(g, report.profile, q.beta);
    if (report.qualifying >= required) {
      report.success = true;
      return report;
    }
  }
  return report;
}

MonteCarloSummary monte_carlo_repeat(const GameView& g, const TopFracQuery& q,
                                     std::uint64_t first_seed, int runs, bool force) {
  MonteCarloSummary s;
  for (int r = 0; r < runs; ++r) {
    ++s.runs;
    if (monte_carlo_topfrac(g, q, first_seed + static_cast<std::uint64_t>(r), force).success) {
      ++s.successes;
    }
  }
  return s;
}

}  // namespace nwr
