#include "nwr/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nwr/circuit.hpp"
#include "nwr/error.hpp"
#include "nwr/gadget.hpp"
#include "nwr/game_io.hpp"
#include "nwr/local_search.hpp"
#include "nwr/monte_carlo.hpp"
#include "nwr/potential.hpp"
#include "nwr/reductions.hpp"
#include "nwr/responses.hpp"
#include "nwr/solve.hpp"

namespace nwr {
namespace {

namespace fs = std::filesystem;

struct Config {
  // shared
  std::string game_path;
  std::string circuit_path;
  std::string out_path;
  std::uint64_t budget = kDefaultProfileBudget;
  unsigned workers = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string alpha;
  std::string beta;

  // circuit eval
  std::string input_bits;

  // solve
  std::string problem;
  std::string mode;

  // montecarlo
  int runs = 1;
  bool force = false;

  // reduce
  int m = 2;
  std::string gadget_path;
  std::string bqp_path;
  std::string form = "explicit";

  // gadget
  int colours = 2;
  int mhat = 2;
  int q = 1;
  std::optional<std::uint64_t> bound_q;
  std::string method = "exhaustive";
  std::uint64_t rounds = 100000;
  std::uint64_t grid_budget = kDefaultGridBudget;

  // local-search
  std::string start;
  bool trace = false;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Profile parse_profile_arg(const std::string& text, const GameView& g) {
  Profile p;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      p.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidInput("bad profile '" + text + "': expected comma-separated action indices");
    }
  }
  if (!g.space().contains(p)) throw InvalidInput("profile " + text + " is not valid for this game");
  return p;
}

TopFracQuery parse_query(const Config& c) {
  if (c.alpha.empty() || c.beta.empty()) throw InvalidInput("--alpha and --beta are required");
  return TopFracQuery(Rational::parse(c.alpha), Rational::parse(c.beta));
}

// ---------------------------------------------------------------------------

int cmd_circuit_eval(const Config& c, std::ostream& out) {
  Circuit circuit = load_circuit(c.circuit_path);
  CircuitEvaluator ev(circuit);
  if (c.input_bits.size() != circuit.inputs.size()) {
    throw InvalidInput("expected " + std::to_string(circuit.inputs.size()) + " input bits, got " +
                       std::to_string(c.input_bits.size()));
  }
  std::vector<std::uint8_t> bits;
  for (char ch : c.input_bits) {
    if (ch != '0' && ch != '1') throw InvalidInput("input bits must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  auto outputs = ev.eval(bits);
  out << "circuit outputs=";
  for (auto b : outputs) out << static_cast<int>(b);
  if (circuit.payout) out << " value=" << decode_payout(*circuit.payout, outputs).to_string();
  out << "\n";
  return kExitTrue;
}

int cmd_circuit_validate(const Config& c, std::ostream& out) {
  Circuit circuit = load_circuit(c.circuit_path);
  auto violations = validate(circuit);
  out << "circuit valid=" << yes_no(violations.empty()) << " inputs=" << circuit.inputs.size()
      << " gates=" << circuit.gates.size() << " outputs=" << circuit.outputs.size() << "\n";
  for (const auto& v : violations) out << "violation at=" << v.gate << " message=\"" << v.message << "\"\n";
  return violations.empty() ? kExitTrue : kExitFalse;
}

int cmd_solve(const Config& c, std::ostream& out) {
  auto problem = parse_problem(c.problem);
  auto mode = parse_mode(c.mode);
  if (!problem) throw InvalidInput("unknown problem '" + c.problem + "' (pne, nwr, topfrac)");
  if (!mode) throw InvalidInput("unknown mode '" + c.mode + "' (decide, find, count)");
  LoadedGame lg = load_game(c.game_path);
  SolveOptions opts;
  opts.budget = c.budget;
  opts.workers = c.workers;
  if (*problem == Problem::TopFrac) opts.query = parse_query(c);
  SolveResult r = solve(*lg.game, *problem, *mode, opts);
  out << format_result(r);
  if (opts.query) out << " regime=" << to_string(topfrac_regime(*opts.query, lg.game->action_counts()));
  out << "\n";
  if (*mode == Mode::Count) return kExitTrue;
  return r.found ? kExitTrue : kExitFalse;
}

int cmd_montecarlo(const Config& c, std::ostream& out) {
  LoadedGame lg = load_game(c.game_path);
  TopFracQuery q = parse_query(c);
  if (c.runs < 1) throw InvalidInput("--runs must be positive");
  const std::int64_t required = q.required_players(lg.game->players());
  if (c.runs == 1) {
    MonteCarloReport r = monte_carlo_topfrac(*lg.game, q, c.seed, c.force);
    out << "montecarlo success=" << yes_no(r.success) << " profile=" << format_profile(r.profile, ',')
        << " qualifying=" << r.qualifying << " required=" << required << " iterations=" << r.iterations
        << " seed=" << r.seed << " guarantee=" << (r.guarantee ? "half" : "none") << "\n";
    return r.success ? kExitTrue : kExitFalse;
  }
  MonteCarloSummary s = monte_carlo_repeat(*lg.game, q, c.seed, c.runs, c.force);
  const bool guarantee = q.meets_sampling_precondition(lg.game->action_counts());
  out << "montecarlo runs=" << s.runs << " successes=" << s.successes << " required=" << required
      << " seed=" << c.seed << " guarantee=" << (guarantee ? "half" : "none") << "\n";
  return s.successes > 0 ? kExitTrue : kExitFalse;
}

// Writes a reduced game in the requested form and reports it.
int write_reduced(const Config& c, const ReducedGame& rg, const std::string& provenance, std::ostream& out) {
  if (c.out_path.empty()) throw InvalidInput("--out is required");
  const GameView& g = *rg.game;
  std::ostringstream line;
  line << "reduced kind=" << to_string(rg.kind) << " players=" << g.players() << " actions=" << g.actions(0)
      << " form=" << c.form;
  if (c.form == "explicit") {
    write_file(c.out_path, serialize_explicit(ExplicitGame::tabulate(g, c.budget), provenance));
  } else if (c.form == "circuit") {
    std::vector<Circuit> circuits = circuit_form(rg);
    std::vector<std::string> names;
    const fs::path base(c.out_path);
    for (std::size_t k = 0; k < circuits.size(); ++k) {
      fs::path file = base;
      file += ".p" + std::to_string(k + 1) + ".cir";
      write_file(file.string(), serialize(circuits[k]));
      names.push_back(file.filename().string());
    }
    write_file(c.out_path, serialize_circuit_game(g.action_counts(), names, provenance));
    CircuitGame compiled(g.action_counts(), std::move(circuits));
    std::string agreement = "skipped";
    try {
      g.space().size(c.budget);
      agreement = first_disagreement(g, compiled, c.budget) ? "no" : "yes";
    } catch (const BudgetExceeded&) {
    }
    if (agreement == "no") throw std::logic_error("compiled circuits disagree with direct evaluation");
    line << " agreement=" << agreement;
  } else {
    throw InvalidInput("unknown form '" + c.form + "' (explicit, circuit)");
  }
  out << line.str() << " out=" << c.out_path << "\n";
  return kExitTrue;
}

int cmd_reduce_sat(const Config& c, std::ostream& out) {
  Circuit circuit = load_circuit(c.circuit_path);
  ReducedGame rg = reduce_sat_to_nwr(circuit, c.m);
  return write_reduced(c, rg, "sat source=" + c.circuit_path + " m=" + std::to_string(c.m), out);
}

int cmd_reduce_pne(const Config& c, std::ostream& out) {
  LoadedGame lg = load_game(c.game_path);
  auto gadget = std::make_shared<GadgetTable>(load_gadget(c.gadget_path));
  if (!gadget->verified() && !verify_star(*gadget, c.grid_budget).verified) {
    throw InvalidInput(c.gadget_path + ": gadget fails the covering property");
  }
  if (!verify_potential(*lg.game, c.budget).potential) {
    throw InvalidInput(c.game_path + ": source is not a potential game");
  }
  ReducedGame rg = reduce_pne_to_nwr(lg.game, gadget);
  return write_reduced(c, rg,
                       "pne source=" + c.game_path + " m=2 mhat=" + std::to_string(gadget->mhat()) +
                           " q=" + std::to_string(gadget->q()) + " gadget=" + c.gadget_path,
                       out);
}

int cmd_reduce_bqp(const Config& c, std::ostream& out) {
  if (c.out_path.empty()) throw InvalidInput("--out is required");
  BqpInstance inst = load_bqp(c.bqp_path);
  ExplicitGame g = reduce_bqp_to_game(inst, c.budget);
  write_file(c.out_path, serialize_explicit(g, "bqp source=" + c.bqp_path + " m=2"));
  out << "reduced kind=bqp players=" << g.players() << " actions=2 form=explicit out=" << c.out_path << "\n";
  return kExitTrue;
}

int cmd_gadget_find(const Config& c, std::ostream& out) {
  std::optional<GadgetTable> t;
  std::ostringstream line;
  line << "gadget method=" << c.method << " m=" << c.colours << " mhat=" << c.mhat << " q=" << c.q;
  if (c.method == "exhaustive") {
    t = search_exhaustive(c.colours, c.mhat, c.q, c.grid_budget);
  } else if (c.method == "lll") {
    LllSearchResult r = search_lll(c.colours, c.mhat, c.q, c.seed, c.rounds, c.grid_budget);
    t = std::move(r.table);
    line << " seed=" << c.seed << " rounds=" << r.rounds;
  } else {
    throw InvalidInput("unknown method '" + c.method + "' (exhaustive, lll)");
  }
  out << line.str() << " found=" << yes_no(t.has_value()) << "\n";
  if (!t) return kExitFalse;
  if (c.out_path.empty()) {
    out << serialize(*t);
  } else {
    write_file(c.out_path, serialize(*t));
  }
  return kExitTrue;
}

int cmd_gadget_verify(const Config& c, std::ostream& out) {
  GadgetTable t = load_gadget(c.gadget_path);
  StarVerdict v = verify_star(t, c.grid_budget);
  out << "gadget verified=" << yes_no(v.verified);
  if (!v.verified) out << " point=" << format_profile(t.point_at(v.point), ',') << " colour=" << v.colour;
  out << "\n";
  return v.verified ? kExitTrue : kExitFalse;
}

int cmd_gadget_bound(const Config& c, std::ostream& out) {
  out << "bound m=" << c.colours << " mhat=" << c.mhat << " lll_q=" << lll_sufficient_q(c.colours, c.mhat)
      << " reduction_q=" << reduction_group_size(c.mhat);
  if (c.bound_q) {
    LllBounds b = lll_bounds(c.colours, c.mhat, *c.bound_q);
    out << std::setprecision(6) << " q=" << *c.bound_q << " lambda=" << b.lambda << " p=" << b.p
        << " d=" << b.d << " condition=" << (b.holds ? "holds" : "fails");
  }
  out << "\n";
  return kExitTrue;
}

int cmd_verify_potential(const Config& c, std::ostream& out) {
  LoadedGame lg = load_game(c.game_path);
  PotentialCertificate cert = verify_potential(*lg.game, c.budget);
  out << "potential=" << yes_no(cert.potential);
  if (cert.counterexample) {
    const FourCycle& f = *cert.counterexample;
    out << " base=" << format_profile(f.base, ',') << " player_i=" << f.player_i + 1
        << " action_i=" << f.action_i << " player_j=" << f.player_j + 1 << " action_j=" << f.action_j
        << " sum=" << f.sum.to_string();
  }
  out << "\n";
  return cert.potential ? kExitTrue : kExitFalse;
}

int cmd_local_search(const Config& c, bool nwr_dynamics, std::ostream& out) {
  LoadedGame lg = load_game(c.game_path);
  const GameView& g = *lg.game;
  Profile start = c.start.empty() ? Profile(g.players(), 0) : parse_profile_arg(c.start, g);
  PotentialCertificate cert = verify_potential(g, c.budget);
  if (!cert.potential) throw InvalidInput(c.game_path + ": dynamics need a potential game");
  DynamicsResult r = nwr_dynamics ? nwr_local_search(g, cert, start) : best_response_dynamics(g, cert, start);
  if (c.trace) {
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      out << "step " << k << " profile=" << format_profile(r.trace[k], ',') << "\n";
    }
  }
  out << "local-search dynamics=" << (nwr_dynamics ? "nwr" : "br") << " steps=" << r.steps
      << " profile=" << format_profile(r.profile, ',') << " nwr=" << yes_no(is_nwr(g, r.profile))
      << " pne=" << yes_no(is_pne(g, r.profile)) << "\n";
  return kExitTrue;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Pure Nash and no-worst-response toolkit", "nwr"};
  app.require_subcommand(1);

  auto add_budget = [&](CLI::App* s) {
    s->add_option("--budget", c.budget, "Maximum number of profiles to enumerate")
        ->check(CLI::PositiveNumber);
  };

  auto* circuit = app.add_subcommand("circuit", "Evaluate or validate a circuit file");
  circuit->require_subcommand(1);
  auto* circuit_eval = circuit->add_subcommand("eval", "Evaluate on one input assignment");
  circuit_eval->add_option("--circuit", c.circuit_path)->required();
  circuit_eval->add_option("--input", c.input_bits, "Input bits in declaration order, e.g. 101")->required();
  auto* circuit_validate = circuit->add_subcommand("validate", "Check structural rules");
  circuit_validate->add_option("--circuit", c.circuit_path)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Exhaustive pne / nwr / topfrac solver");
  solve_cmd->add_option("--game", c.game_path)->required();
  solve_cmd->add_option("--problem", c.problem)->required();
  solve_cmd->add_option("--mode", c.mode)->required();
  solve_cmd->add_option("--alpha", c.alpha, "num/den");
  solve_cmd->add_option("--beta", c.beta, "num/den");
  solve_cmd->add_option("--workers", c.workers)->check(CLI::Range(1u, 256u));
  add_budget(solve_cmd);

  auto* mc = app.add_subcommand("montecarlo", "Randomized top-fraction profile finder");
  mc->add_option("--game", c.game_path)->required();
  mc->add_option("--alpha", c.alpha)->required();
  mc->add_option("--beta", c.beta)->required();
  mc->add_option("--seed", c.seed);
  mc->add_option("--runs", c.runs);
  mc->add_flag("--force", c.force, "Run even when the success guarantee does not apply");

  auto* reduce = app.add_subcommand("reduce", "Build a reduced game");
  reduce->require_subcommand(1);
  auto* red_sat = reduce->add_subcommand("sat-to-nwr", "Circuit satisfiability to no-worst-response");
  red_sat->add_option("--circuit", c.circuit_path)->required();
  red_sat->add_option("--m", c.m)->check(CLI::Range(2, 64));
  red_sat->add_option("--out", c.out_path)->required();
  red_sat->add_option("--form", c.form, "explicit or circuit");
  add_budget(red_sat);
  auto* red_pne = reduce->add_subcommand("pne-to-nwr", "Potential-game equilibria to no-worst-response");
  red_pne->add_option("--game", c.game_path)->required();
  red_pne->add_option("--gadget", c.gadget_path)->required();
  red_pne->add_option("--out", c.out_path)->required();
  red_pne->add_option("--form", c.form, "explicit or circuit");
  add_budget(red_pne);
  auto* red_bqp = reduce->add_subcommand("bqp", "Binary quadratic program to identical-interest game");
  red_bqp->add_option("--bqp", c.bqp_path)->required();
  red_bqp->add_option("--out", c.out_path)->required();
  add_budget(red_bqp);

  auto* gadget = app.add_subcommand("gadget", "Covering gadget tables");
  gadget->require_subcommand(1);
  auto* g_find = gadget->add_subcommand("find", "Search for a verified table");
  g_find->add_option("--m", c.colours)->check(CLI::Range(1, 255));
  g_find->add_option("--mhat", c.mhat)->check(CLI::Range(2, 255));
  g_find->add_option("--q", c.q)->check(CLI::Range(1, 64));
  g_find->add_option("--method", c.method, "exhaustive or lll");
  g_find->add_option("--seed", c.seed);
  g_find->add_option("--rounds", c.rounds);
  g_find->add_option("--grid-budget", c.grid_budget)->check(CLI::PositiveNumber);
  g_find->add_option("--out", c.out_path);
  auto* g_verify = gadget->add_subcommand("verify", "Check the covering property");
  g_verify->add_option("--in", c.gadget_path)->required();
  g_verify->add_option("--grid-budget", c.grid_budget)->check(CLI::PositiveNumber);
  auto* g_bound = gadget->add_subcommand("bound", "Group sizes and local lemma quantities");
  g_bound->add_option("--m", c.colours)->check(CLI::Range(2, 255));
  g_bound->add_option("--mhat", c.mhat)->check(CLI::Range(2, 255));
  g_bound->add_option("--q", c.bound_q);

  auto* vp = app.add_subcommand("verify-potential", "Exact potential test");
  vp->add_option("--game", c.game_path)->required();
  add_budget(vp);

  auto* ls = app.add_subcommand("local-search", "Dynamics in a potential game");
  ls->require_subcommand(1);
  auto* ls_nwr = ls->add_subcommand("nwr", "Worst-response elimination");
  auto* ls_br = ls->add_subcommand("br", "Best-response dynamics");
  for (auto* s : {ls_nwr, ls_br}) {
    s->add_option("--game", c.game_path)->required();
    s->add_option("--start", c.start, "Comma-separated start profile (default all zeros)");
    s->add_flag("--trace", c.trace);
    add_budget(s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  try {
    if (circuit_eval->parsed()) return cmd_circuit_eval(c, out);
    if (circuit_validate->parsed()) return cmd_circuit_validate(c, out);
    if (solve_cmd->parsed()) return cmd_solve(c, out);
    if (mc->parsed()) return cmd_montecarlo(c, out);
    if (red_sat->parsed()) return cmd_reduce_sat(c, out);
    if (red_pne->parsed()) return cmd_reduce_pne(c, out);
    if (red_bqp->parsed()) return cmd_reduce_bqp(c, out);
    if (g_find->parsed()) return cmd_gadget_find(c, out);
    if (g_verify->parsed()) return cmd_gadget_verify(c, out);
    if (g_bound->parsed()) return cmd_gadget_bound(c, out);
    if (vp->parsed()) return cmd_verify_potential(c, out);
    if (ls_nwr->parsed()) return cmd_local_search(c, true, out);
    if (ls_br->parsed()) return cmd_local_search(c, false, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace nwr
