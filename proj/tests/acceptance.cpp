// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "nwr/cli.hpp"
#include "nwr/game_io.hpp"
#include "nwr/local_search.hpp"
#include "nwr/monte_carlo.hpp"
#include "nwr/potential.hpp"
#include "nwr/reductions.hpp"
#include "nwr/responses.hpp"
#include "nwr/solve.hpp"
#include "support.hpp"

using namespace nwr;
using testsupport::all_profiles;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Circuit x1() { return testsupport::make_circuit("x1", {"x1"}, {{"g1", GateKind::And, {"x1", "x1"}}}, {"g1"}); }

// Circuits with 1..4 inputs and up to 12 gates; the same list feeds the
// first two criteria.
std::vector<Circuit> sat_instances() {
  std::mt19937_64 rng(1001);
  std::vector<Circuit> out;
  for (int t = 0; t < 25; ++t) out.push_back(testsupport::random_circuit(rng, 1 + t % 4, 1 + (t * 7) % 12));
  return out;
}

// f(a) from its definition, evaluating the circuit with the naive evaluator.
int direct_indicator(const Circuit& c, const Profile& a, int m) {
  std::vector<std::uint8_t> tau;
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    const int v = a[i * static_cast<std::size_t>(m)];
    if (v > 1) return 0;
    for (int l = 1; l < m; ++l)
      if (a[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(l)] != v) return 0;
    tau.push_back(static_cast<std::uint8_t>(v));
  }
  return testsupport::naive_eval(c, tau).back();
}

Check reduction_counts() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  SolveOptions opts;
  opts.workers = 4;
  int k = 0;
  for (const Circuit& circ : sat_instances()) {
    const auto sat = static_cast<std::uint64_t>(testsupport::satisfying_count(circ));
    for (int m : {2, 3}) {
      ReducedGame rg = reduce_sat_to_nwr(circ, m);
      const auto nwr = solve(*rg.game, Problem::Nwr, Mode::Count, opts).count;
      const auto pne = solve(*rg.game, Problem::Pne, Mode::Count, opts).count;
      c.expect(nwr == sat && pne == sat, "instance " + std::to_string(k) + " m=" + std::to_string(m) + " nwr=" +
                                             std::to_string(nwr) + " pne=" + std::to_string(pne) + " sat=" + std::to_string(sat));
    }
    ++k;
  }
  const double s = seconds_since(t0);
  c.expect(s < 60, "took " + std::to_string(s) + " s");
  c.note << "25 circuits x m in {2,3},";
  return c;
}

Check indicator_equivalence() {
  Check c;
  std::uint64_t checked = 0;
  for (const Circuit& circ : sat_instances()) {
    for (int m : {2, 3}) {
      ReducedGame rg = reduce_sat_to_nwr(circ, m);
      const ProfileSpace space = rg.game->space();
      Profile a(space.players(), 0);
      do {
        const int f = direct_indicator(circ, a, m);
        c.expect(is_nwr(*rg.game, a) == (f == 1), "profile " + format_profile(a, ','));
        c.expect(f_indicator(circ, a, m) == f, "indicator at " + format_profile(a, ','));
        ++checked;
      } while (space.next(a));
    }
  }
  c.note << checked << " profiles";
  return c;
}

Check granular_bound() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1003);
  std::uint64_t checked = 0;
  for (int m : {2, 3, 4}) {
    for (int n : {1, 2}) {
      for (int t = 0; t < 4; ++t) {
        Circuit circ = testsupport::random_circuit(rng, n, 2 + 2 * t);
        ReducedGame rg = reduce_sat_to_nwr(circ, m);
        for (const auto& a : all_profiles(rg.game->action_counts())) {
          if (direct_indicator(circ, a, m) == 1) continue;
          for (int k = 1; k < m; ++k) {
            int top = 0;
            for (std::size_t p = 0; p < rg.game->players(); ++p) top += strictly_better_count(*rg.game, p, a) < k ? 1 : 0;
            c.expect(top <= n * k, "m=" + std::to_string(m) + " k=" + std::to_string(k) + " at " + format_profile(a, ','));
          }
          ++checked;
        }
      }
    }
  }
  const double s = seconds_since(t0);
  c.expect(s < 60, "took " + std::to_string(s) + " s");
  c.note << checked << " profiles with f=0,";
  return c;
}

Check pne_reduction() {
  Check c;
  std::mt19937_64 rng(1004);
  for (int mhat : {2, 3}) {
    std::optional<GadgetTable> gadget;
    int q = 0;
    while (!gadget) gadget = search_exhaustive(2, mhat, ++q);
    c.note << "mhat=" << mhat << " smallest q=" << q << "; ";
    auto shared = std::make_shared<const GadgetTable>(std::move(*gadget));
    for (int t = 0; t < 10; ++t) {
      int n = 1 + t % 3;
      while (grid_size(mhat, q * n, std::uint64_t{1} << 40) > (std::uint64_t{1} << 20)) --n;
      auto src = std::make_shared<ExplicitGame>(testsupport::random_potential_game(rng, std::vector<int>(static_cast<std::size_t>(n), 2)));
      c.expect(verify_potential(*src).potential, "source not potential");
      ReducedGame rg = reduce_pne_to_nwr(src, shared);
      c.expect(verify_potential(*rg.game).potential, "reduced game not potential");
      const ProfileSpace space = rg.game->space();
      Profile a(space.players(), 0);
      do {
        const bool lhs = is_nwr(*rg.game, a);
        const bool rhs = testsupport::naive_pne(*src, pull_profile(rg, a));
        c.expect(lhs == rhs, "mhat=" + std::to_string(mhat) + " at " + format_profile(a, ','));
      } while (space.next(a));
    }
  }
  return c;
}

Check gadget_layer() {
  Check c;
  GadgetTable id(2, 2, 1, {0, 1});
  c.expect(verify_star(id).verified, "identity table");
  for (int mhat : {2, 3}) {
    GadgetTable k = GadgetTable::constant(2, mhat, 2, 0);
    StarVerdict v = verify_star(k);
    c.expect(!v.verified && bad_vertex(k, v.point) == v.colour, "constant table accepted");
  }
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) ok += search_lll(2, 2, 16, seed, 10000).table ? 1 : 0;
  c.expect(ok >= 18, "lll successes " + std::to_string(ok));
  c.expect(lll_sufficient_q(2, 2) == 45, "lll_sufficient_q(2,2)=" + std::to_string(lll_sufficient_q(2, 2)));
  c.note << "lll " << ok << "/20, lll_sufficient_q(2,2)=" << lll_sufficient_q(2, 2);
  return c;
}

Check monte_carlo() {
  Check c;
  std::mt19937_64 rng(1006);
  const TopFracQuery q(Rational(1, 2), Rational(1, 2));
  for (int t = 0; t < 5; ++t) {
    ExplicitGame g = testsupport::random_game(rng, {4, 4, 4, 4}, -50, 50);
    c.expect(q.meets_sampling_precondition(g.action_counts()), "precondition");
    MonteCarloSummary s = monte_carlo_repeat(g, q, 1000 * static_cast<std::uint64_t>(t), 200);
    c.expect(s.successes >= 80, "game " + std::to_string(t) + " successes " + std::to_string(s.successes));
    c.note << s.successes << "/200 ";
  }
  Circuit contradiction = testsupport::make_circuit(
      "u", {"x1"}, {{"g1", GateKind::Not, {"x1"}}, {"g2", GateKind::And, {"x1", "g1"}}}, {"g2"});
  ReducedGame rg = reduce_sat_to_nwr(contradiction, 2);
  const TopFracQuery hard(Rational(3, 4), Rational(1, 2));
  SolveOptions opts;
  opts.query = hard;
  c.expect(!solve(*rg.game, Problem::TopFrac, Mode::Decide, opts).found, "constructed instance has a solution");
  int false_hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) false_hits += monte_carlo_topfrac(*rg.game, hard, seed, true).success ? 1 : 0;
  c.expect(false_hits == 0, "successes on empty instance");
  c.note << "; empty instance: " << false_hits << "/1000";
  return c;
}

Check bqp_embedding() {
  Check c;
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 10);
    BqpInstance inst;
    inst.q.resize(n);
    inst.Q.assign(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      inst.q[i] = d(rng);
      inst.Q[i][i] = d(rng);
      for (std::size_t j = i + 1; j < n; ++j) inst.Q[i][j] = inst.Q[j][i] = d(rng);
    }
    auto value = [&](const Profile& x) {
      std::int64_t twice = 0;
      for (std::size_t j = 0; j < n; ++j) {
        twice += 2 * inst.q[j] * x[j];
        for (std::size_t k = 0; k < n; ++k) twice += inst.Q[j][k] * x[j] * x[k];
      }
      return twice;
    };
    ExplicitGame g = reduce_bqp_to_game(inst);
    std::set<Profile> pne, optima;
    for (const auto& x : all_profiles(std::vector<int>(n, 2))) {
      if (is_pne(g, x)) pne.insert(x);
      bool local = true;
      for (std::size_t j = 0; j < n; ++j) {
        Profile y = x;
        y[j] = 1 - y[j];
        local = local && value(y) <= value(x);
      }
      if (local) optima.insert(x);
    }
    c.expect(pne == optima, "instance " + std::to_string(t));
  }
  c.note << "20 instances, n up to 10";
  return c;
}

Check harmonic() {
  Check c;
  for (int m : {2, 3, 4}) {
    ExplicitGame g = testsupport::harmonic_game(m);
    for (const auto& a : all_profiles(g.action_counts())) {
      for (int kappa = 1; kappa <= m; ++kappa) {
        int top = 0;
        for (std::size_t i = 0; i < g.players(); ++i) top += strictly_better_count(g, i, a) < kappa ? 1 : 0;
        c.expect(top == kappa, "m=" + std::to_string(m) + " at " + format_profile(a, ','));
      }
    }
  }
  c.note << "n = m in {2,3,4}";
  return c;
}

Check potential_machinery() {
  Check c;
  std::mt19937_64 rng(1009);
  for (int t = 0; t < 20; ++t) {
    ExplicitGame g = testsupport::identical_interest(rng, {2 + t % 3, 3, 2});
    c.expect(verify_potential(g).potential, "identical-interest game rejected");
    BqpInstance inst{std::vector<std::vector<std::int64_t>>(3, std::vector<std::int64_t>(3)), {0, 0, 0}};
    std::uniform_int_distribution<int> d(-8, 8);
    for (std::size_t i = 0; i < 3; ++i) {
      inst.q[i] = d(rng);
      for (std::size_t j = i; j < 3; ++j) inst.Q[i][j] = inst.Q[j][i] = d(rng);
    }
    c.expect(verify_potential(reduce_bqp_to_game(inst)).potential, "bqp embedding rejected");
  }

  ReducedGame rg = reduce_sat_to_nwr(x1(), 2);
  PotentialCertificate cert = verify_potential(*rg.game);
  c.expect(!cert.potential && cert.counterexample.has_value(), "x1 reduction accepted");
  if (cert.counterexample) {
    const FourCycle& w = *cert.counterexample;
    // Re-walk the cycle by hand.
    Profile a = w.base, b = a, cc = a, d = a;
    b[w.player_i] = w.action_i;
    cc[w.player_i] = w.action_i;
    cc[w.player_j] = w.action_j;
    d[w.player_j] = w.action_j;
    const GameView& g = *rg.game;
    Rational s = (g.utility(w.player_i, b) - g.utility(w.player_i, a)) + (g.utility(w.player_j, cc) - g.utility(w.player_j, b)) +
                 (g.utility(w.player_i, d) - g.utility(w.player_i, cc)) + (g.utility(w.player_j, a) - g.utility(w.player_j, d));
    c.expect(s == w.sum && s != Rational(0), "witness does not re-check");
    c.note << "x1 witness sum=" << w.sum.to_string() << "; ";
  }

  for (int t = 0; t < 50; ++t) {
    std::vector<int> counts{2 + t % 2, 3, 2, 2 + t % 3};
    ExplicitGame g = testsupport::random_potential_game(rng, counts);
    PotentialCertificate pc = verify_potential(g);
    c.expect(pc.potential, "random potential game rejected");
    const ProfileSpace& space = g.profile_space();
    std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
    const Profile base = space.profile_at(pick(rng)), target = space.profile_at(pick(rng));
    std::vector<std::size_t> order{0, 1, 2, 3};
    const Rational first = potential_along_path(g, base, target, order);
    do {
      c.expect(potential_along_path(g, base, target, order) == first, "path order changed the sum");
    } while (std::next_permutation(order.begin(), order.end()));
    if (pc.potential) c.expect(first == pc.phi[space.index_of(target)] - pc.phi[space.index_of(base)], "phi mismatch");
  }
  c.note << "50 path checks over 24 orders each";
  return c;
}

Check local_search() {
  Check c;
  std::mt19937_64 rng(1010);
  std::size_t longest = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<int> counts{2 + t % 3, 2 + (t / 3) % 3, 2 + (t / 9) % 2};
    ExplicitGame g = testsupport::random_potential_game(rng, counts);
    PotentialCertificate pc = verify_potential(g);
    const Profile start = g.profile_space().profile_at(static_cast<std::uint64_t>(t * 7) % g.profile_space().size());
    DynamicsResult r = nwr_local_search(g, pc, start);
    c.expect(testsupport::naive_nwr(g, r.profile), "game " + std::to_string(t) + " stopped at a worst response");
    const Rational bound(1'000'000);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      c.expect(auxiliary_potential(g, r.trace[k - 1], start, bound) < auxiliary_potential(g, r.trace[k], start, bound),
               "auxiliary potential did not increase in game " + std::to_string(t));
    }
    longest = std::max(longest, r.steps);
  }
  c.note << "100 games, longest run " << longest << " steps";
  return c;
}

std::string cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nwr::run(args, out, err);
  return out.str() + "exit=" + std::to_string(code) + "\n";
}

Check determinism() {
  Check c;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nwr_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string data = NWR_TEST_DATA;

  std::mt19937_64 rng(1011);
  const std::string big = (dir / "big.game").string();
  write_file(big, serialize_explicit(testsupport::random_game(rng, {4, 4, 3, 4, 3}, -3, 3)));

  // Each command run twice per worker setting; every output line and file must match.
  std::vector<std::vector<std::string>> commands;
  for (const char* p : {"pne", "nwr"})
    for (const char* m : {"decide", "find", "count"}) commands.push_back({"solve", "--game", big, "--problem", p, "--mode", m});
  commands.push_back({"solve", "--game", big, "--problem", "topfrac", "--mode", "count", "--alpha", "1/2", "--beta", "1/2"});
  commands.push_back({"montecarlo", "--game", big, "--alpha", "2/5", "--beta", "1/2", "--seed", "17", "--runs", "50"});
  commands.push_back({"montecarlo", "--game", big, "--alpha", "2/5", "--beta", "1/2", "--seed", "17"});
  commands.push_back({"gadget", "find", "--m", "2", "--mhat", "2", "--q", "12", "--method", "lll", "--seed", "3"});
  commands.push_back({"gadget", "find", "--m", "2", "--mhat", "3", "--q", "4"});
  commands.push_back({"verify-potential", "--game", data + "/pennies.game"});

  int compared = 0;
  for (const auto& cmd : commands) {
    std::set<std::string> seen;
    for (const char* workers : {"1", "4"}) {
      auto args = cmd;
      if (cmd[0] == "solve") args.insert(args.end(), {"--workers", workers});
      seen.insert(cli(args));
      seen.insert(cli(args));
    }
    c.expect(seen.size() == 1, cmd[0] + " output varied");
    ++compared;
  }

  auto reduce_twice = [&](std::vector<std::string> cmd, const std::string& name) {
    std::set<std::string> outs, files;
    for (int r = 0; r < 2; ++r) {
      auto args = cmd;
      const std::string out = (dir / (name + std::to_string(r) + ".game")).string();
      args.insert(args.end(), {"--out", out});
      std::string line = cli(args);
      line.replace(line.find(out), out.size(), "OUT");
      outs.insert(line);
      // Circuit-form games name their per-player circuit files after the output.
      const std::string stem = fs::path(out).filename().string();
      std::string text = read_file(out);
      for (std::size_t at; (at = text.find(stem)) != std::string::npos;) text.replace(at, stem.size(), "OUT");
      for (int k = 0; fs::exists(out + ".p" + std::to_string(k) + ".cir"); ++k) text += read_file(out + ".p" + std::to_string(k) + ".cir");
      files.insert(text);
      // A solve on the reduced game must also be reproducible.
      for (const char* workers : {"1", "4"})
        outs.insert("solve " + cli({"solve", "--game", out, "--problem", "nwr", "--mode", "count", "--workers", workers}));
    }
    c.expect(outs.size() == 2 && files.size() == 1, name + " reduction varied");
    ++compared;
  };
  reduce_twice({"reduce", "sat-to-nwr", "--circuit", data + "/mixed.cir", "--m", "3"}, "sat");
  reduce_twice({"reduce", "sat-to-nwr", "--circuit", data + "/mixed.cir", "--m", "2", "--form", "circuit"}, "satc");
  reduce_twice({"reduce", "pne-to-nwr", "--game", data + "/coord.game", "--gadget", data + "/identity.gadget"}, "pne");
  reduce_twice({"reduce", "bqp", "--bqp", data + "/anti.bqp"}, "bqp");

  {
    std::set<std::string> outs;
    for (int r = 0; r < 2; ++r) {
      outs.insert(cli({"local-search", "nwr", "--game", data + "/coord.game", "--trace"}));
      outs.insert("br " + cli({"local-search", "br", "--game", data + "/coord.game", "--trace"}));
    }
    c.expect(outs.size() == 2, "local search varied");
    ++compared;
  }
  fs::remove_all(dir);
  c.note << compared << " command groups";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "sat reduction counts match satisfying assignments", reduction_counts},
      {2, "no-worst-response profiles are exactly the indicator's support", indicator_equivalence},
      {3, "few top-k players wherever the indicator is zero", granular_bound},
      {4, "potential reduction preserves potential and pulls back equilibria", pne_reduction},
      {5, "gadget verification, search and bound", gadget_layer},
      {6, "monte carlo success rate and false bias", monte_carlo},
      {7, "quadratic program embedding equilibria are local optima", bqp_embedding},
      {8, "harmonic game has exactly kappa top-kappa players", harmonic},
      {9, "potential verification and path invariance", potential_machinery},
      {10, "no-worst-response local search terminates correctly", local_search},
      {11, "fixed seeds and worker counts give identical output", determinism},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << "exception: " << e.what();
    }
    failures += c.ok ? 0 : 1;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " (" << c.note.str() << " " << seconds_since(t0)
              << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
