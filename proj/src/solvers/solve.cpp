#include "nwr/solve.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "nwr/error.hpp"
#include "nwr/game_io.hpp"

namespace nwr {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::Pne:
      return "pne";
    case Problem::Nwr:
      return "nwr";
    case Problem::TopFrac:
      return "topfrac";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Decide:
      return "decide";
    case Mode::Find:
      return "find";
    case Mode::Count:
      return "count";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view s) {
  if (s == "pne") return Problem::Pne;
  if (s == "nwr") return Problem::Nwr;
  if (s == "topfrac") return Problem::TopFrac;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "decide") return Mode::Decide;
  if (s == "find") return Mode::Find;
  if (s == "count") return Mode::Count;
  return std::nullopt;
}

bool qualifies(const GameView& g, Problem problem, const std::optional<TopFracQuery>& query,
               std::span<const int> profile) {
  switch (problem) {
    case Problem::Pne:
      return is_pne(g, profile);
    case Problem::Nwr:
      return is_nwr(g, profile);
    case Problem::TopFrac:
      if (!query) throw InvalidInput("topfrac problem needs alpha and beta");
      return satisfies_alpha_beta(g, profile, *query);
  }
  return false;
}

namespace {

constexpr std::uint64_t kBlock = 1024;
constexpr std::uint64_t kNoHit = std::numeric_limits<std::uint64_t>::max();

}  // namespace

SolveResult solve(const GameView& g, Problem problem, Mode mode, const SolveOptions& options) {
  if (problem == Problem::TopFrac && !options.query) {
    throw InvalidInput("topfrac problem needs alpha and beta");
  }
  auto started = std::chrono::steady_clock::now();
  const ProfileSpace space = g.space();
  const std::uint64_t total = space.size(options.budget);
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  const bool stop_early = mode != Mode::Count;

  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> best_hit{kNoHit};
  std::atomic<std::uint64_t> count{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      Profile a(space.players());
      std::uint64_t local_count = 0;
      for (;;) {
        std::uint64_t block = next_block.fetch_add(1);
        if (block >= blocks) break;
        std::uint64_t begin = block * kBlock;
        if (stop_early && begin > best_hit.load()) break;
        std::uint64_t end = std::min(total, begin + kBlock);
        space.decode(begin, a);
        for (std::uint64_t k = begin; k < end; ++k, space.next(a)) {
          if (!qualifies(g, problem, options.query, a)) continue;
          if (!stop_early) {
            ++local_count;
            continue;
          }
          std::uint64_t seen = best_hit.load();
          while (k < seen && !best_hit.compare_exchange_weak(seen, k)) {
          }
          break;
        }
      }
      count.fetch_add(local_count);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next_block.store(blocks);
    }
  };

  unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  SolveResult r;
  r.problem = problem;
  r.mode = mode;
  if (mode == Mode::Count) {
    r.count = count.load();
    r.found = r.count > 0;
    r.scanned = total;
  } else {
    std::uint64_t hit = best_hit.load();
    r.found = hit != kNoHit;
    r.scanned = r.found ? hit + 1 : total;
    if (r.found) r.profile = space.profile_at(hit);
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - started);
  return r;
}

std::string format_result(const SolveResult& r) {
  std::string value;
  switch (r.mode) {
    case Mode::Decide:
      value = r.found ? "yes" : "no";
      break;
    case Mode::Find:
      value = r.found ? format_profile(*r.profile) : "no";
      break;
    case Mode::Count:
      value = std::to_string(r.count);
      break;
  }
  return "result problem=" + std::string(to_string(r.problem)) + " mode=" +
         std::string(to_string(r.mode)) + " value=" + value + " scanned=" + std::to_string(r.scanned);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Rp:
      return "rp";
    case Regime::Hard:
      return "hard";
    case Regime::Wedge:
      return "wedge";
  }
  return "?";
}

Regime topfrac_regime(const TopFracQuery& q, std::span<const int> action_counts) {
  const auto n = static_cast<std::int64_t>(action_counts.size());
  if (Rational(q.required_players(action_counts.size())) < q.beta * Rational(n)) return Regime::Rp;
  bool uniform = std::all_of(action_counts.begin(), action_counts.end(),
                             [&](int m) { return m == action_counts.front(); });
  if (uniform) {
    int m = action_counts.front();
    if (q.alpha * Rational(m) > Rational(ceil_mul(q.beta, m))) return Regime::Hard;
  }
  return Regime::Wedge;
}

}  // namespace nwr
