#include "nwr/game_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nwr/error.hpp"

namespace nwr {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string w;
    while (in >> w) line.words.push_back(w);
    if (!line.words.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int parse_count(const std::string& word, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    long v = std::stol(word, &used);
    if (used != word.size() || v < 0 || v > 1'000'000'000) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(source, line, "expected a non-negative integer, got '" + word + "'");
  }
}

}  // namespace

LoadedGame parse_game(std::string_view text, const std::string& source,
                      const std::string& base_dir) {
  auto lines = tokenize(text);
  LoadedGame out;
  std::size_t at = 0;
  auto expect = [&](std::string_view keyword) -> const Line& {
    if (at >= lines.size()) {
      throw ParseError(source, 0, "unexpected end of file, expected '" + std::string(keyword) + "'");
    }
    const Line& l = lines[at];
    if (l.words[0] != keyword) {
      throw ParseError(source, l.number,
                       "expected '" + std::string(keyword) + "', got '" + l.words[0] + "'");
    }
    ++at;
    return l;
  };

  if (at < lines.size() && lines[at].words[0] == "reduced-from") {
    std::string prov;
    for (std::size_t k = 1; k < lines[at].words.size(); ++k) {
      if (k > 1) prov += " ";
      prov += lines[at].words[k];
    }
    out.provenance = prov;
    ++at;
  }

  const Line& header = expect("game");
  if (header.words.size() != 2 || (header.words[1] != "explicit" && header.words[1] != "circuit")) {
    throw ParseError(source, header.number, "expected 'game explicit' or 'game circuit'");
  }
  out.is_circuit = header.words[1] == "circuit";

  const Line& players_line = expect("players");
  if (players_line.words.size() != 2) throw ParseError(source, players_line.number, "expected 'players <n>'");
  int n = parse_count(players_line.words[1], source, players_line.number);
  if (n < 1) throw ParseError(source, players_line.number, "a game needs at least one player");

  const Line& actions_line = expect("actions");
  if (actions_line.words.size() != static_cast<std::size_t>(n) + 1) {
    throw ParseError(source, actions_line.number,
                     "expected " + std::to_string(n) + " action counts");
  }
  std::vector<int> counts;
  for (int i = 0; i < n; ++i) {
    int m = parse_count(actions_line.words[static_cast<std::size_t>(i) + 1], source, actions_line.number);
    if (m < 1) throw ParseError(source, actions_line.number, "action counts must be positive");
    counts.push_back(m);
  }

  if (out.is_circuit) {
    const Line& payoffs = expect("payoffs");
    if (payoffs.words.size() != static_cast<std::size_t>(n) + 1) {
      throw ParseError(source, payoffs.number, "expected " + std::to_string(n) + " circuit files");
    }
    std::vector<Circuit> circuits;
    for (int i = 0; i < n; ++i) {
      std::filesystem::path p(payoffs.words[static_cast<std::size_t>(i) + 1]);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      circuits.push_back(load_circuit(p.string()));
    }
    if (at < lines.size()) throw ParseError(source, lines[at].number, "trailing content");
    try {
      out.game = std::make_shared<CircuitGame>(counts, std::move(circuits));
    } catch (const InvalidInput& e) {
      throw ParseError(source, payoffs.number, e.what());
    }
    return out;
  }

  ProfileSpace space(counts);
  std::uint64_t total = 0;
  try {
    total = space.size();
  } catch (const BudgetExceeded&) {
    throw ParseError(source, actions_line.number, "explicit game too large to tabulate");
  }
  std::vector<Rational> payoffs;
  payoffs.reserve(total * static_cast<std::uint64_t>(n));
  Profile expected(static_cast<std::size_t>(n), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    if (at >= lines.size()) {
      throw ParseError(source, 0, "expected " + std::to_string(total) + " payoff lines, got " +
                                      std::to_string(k));
    }
    const Line& l = lines[at++];
    const auto& w = l.words;
    if (w.size() != 2 * static_cast<std::size_t>(n) + 1 || w[static_cast<std::size_t>(n)] != ":") {
      throw ParseError(source, l.number, "expected '<a_1> ... <a_n> : <payoff_1> ... <payoff_n>'");
    }
    for (int i = 0; i < n; ++i) {
      if (parse_count(w[static_cast<std::size_t>(i)], source, l.number) != expected[static_cast<std::size_t>(i)]) {
        throw ParseError(source, l.number, "profile out of order, expected " + format_profile(expected));
      }
    }
    for (int i = 0; i < n; ++i) {
      try {
        payoffs.push_back(Rational::parse(w[static_cast<std::size_t>(n + 1 + i)]));
      } catch (const Error& e) {
        throw ParseError(source, l.number, e.what());
      }
    }
    space.next(expected);
  }
  if (at < lines.size()) throw ParseError(source, lines[at].number, "trailing content");
  out.game = std::make_shared<ExplicitGame>(counts, std::move(payoffs));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(path + ": cannot open for writing");
  out << contents;
  if (!out) throw InvalidInput(path + ": write failed");
}

LoadedGame load_game(const std::string& path) {
  auto dir = std::filesystem::path(path).parent_path();
  return parse_game(read_file(path), path, dir.empty() ? "." : dir.string());
}

std::string format_profile(std::span<const int> profile, char sep) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(profile[i]);
  }
  return out;
}

namespace {

void write_header(std::ostringstream& out, std::string_view kind, std::span<const int> counts,
                  const std::optional<std::string>& provenance) {
  if (provenance) out << "reduced-from " << *provenance << "\n";
  out << "game " << kind << "\n";
  out << "players " << counts.size() << "\n";
  out << "actions";
  for (int m : counts) out << " " << m;
  out << "\n";
}

}  // namespace

std::string serialize_explicit(const ExplicitGame& game,
                               const std::optional<std::string>& provenance) {
  std::ostringstream out;
  const auto& space = game.profile_space();
  write_header(out, "explicit", space.action_counts(), provenance);
  const std::size_t n = space.players();
  auto payoffs = game.payoffs();
  Profile a(n, 0);
  std::uint64_t total = payoffs.size() / n;
  for (std::uint64_t k = 0; k < total; ++k) {
    out << format_profile(a) << " :";
    for (std::size_t i = 0; i < n; ++i) out << " " << payoffs[k * n + i];
    out << "\n";
    space.next(a);
  }
  return out.str();
}

std::string serialize_circuit_game(std::span<const int> action_counts,
                                   std::span<const std::string> circuit_paths,
                                   const std::optional<std::string>& provenance) {
  std::ostringstream out;
  write_header(out, "circuit", action_counts, provenance);
  out << "payoffs";
  for (const auto& p : circuit_paths) out << " " << p;
  out << "\n";
  return out.str();
}

}  // namespace nwr
