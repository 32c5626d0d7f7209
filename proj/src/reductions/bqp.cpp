#include <sstream>

#include "nwr/error.hpp"
#include "nwr/game_io.hpp"
#include "nwr/reductions.hpp"

namespace nwr {

Rational BqpInstance::objective(std::span<const int> x) const {
  const std::size_t n = size();
  Rational linear(0);
  Rational quadratic(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j] == 0) continue;
    linear = linear + Rational(q[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] != 0) quadratic = quadratic + Rational(Q[j][k]);
    }
  }
  return linear + quadratic * Rational(1, 2);
}

ExplicitGame reduce_bqp_to_game(const BqpInstance& inst, std::uint64_t budget) {
  const std::size_t n = inst.size();
  if (n == 0) throw InvalidInput("empty quadratic program");
  if (inst.Q.size() != n) throw InvalidInput("Q must be n x n");
  for (const auto& row : inst.Q) {
    if (row.size() != n) throw InvalidInput("Q must be n x n");
  }
  ProfileSpace space(std::vector<int>(n, 2));
  const std::uint64_t total = space.size(budget);
  std::vector<Rational> payoffs;
  payoffs.reserve(total * n);
  Profile x(n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    const Rational v = inst.objective(x);
    payoffs.insert(payoffs.end(), n, v);
    space.next(x);
  }
  return ExplicitGame(std::vector<int>(n, 2), std::move(payoffs));
}

namespace {

std::vector<std::int64_t> parse_row(std::istringstream& words, std::size_t n, const std::string& source,
                                    std::size_t line) {
  std::vector<std::int64_t> row;
  for (std::string s; words >> s;) {
    try {
      std::size_t used = 0;
      row.push_back(std::stoll(s, &used));
      if (used != s.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(source, line, "bad integer '" + s + "'");
    }
  }
  if (row.size() != n) {
    throw ParseError(source, line, "expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
  }
  return row;
}

}  // namespace

BqpInstance parse_bqp(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  BqpInstance inst;
  bool have_q = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::string key;
    if (!(words >> key)) continue;
    if (!n) {
      std::string size;
      if (key != "bqp" || !(words >> size) || size.rfind("n=", 0) != 0) {
        throw ParseError(source, line_no, "expected 'bqp n=<n>'");
      }
      try {
        std::size_t used = 0;
        long long v = std::stoll(size.substr(2), &used);
        if (used != size.size() - 2 || v < 1) throw std::invalid_argument("");
        n = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad size '" + size + "'");
      }
    } else if (key == "q") {
      if (have_q) throw ParseError(source, line_no, "duplicate q line");
      inst.q = parse_row(words, *n, source, line_no);
      have_q = true;
    } else if (key == "Q") {
      if (inst.Q.size() == *n) throw ParseError(source, line_no, "too many Q rows");
      inst.Q.push_back(parse_row(words, *n, source, line_no));
    } else {
      throw ParseError(source, line_no, "unknown keyword '" + key + "'");
    }
  }
  if (!n) throw ParseError(source, 0, "missing bqp header");
  if (!have_q) throw ParseError(source, 0, "missing q line");
  if (inst.Q.size() != *n) {
    throw ParseError(source, 0, "expected " + std::to_string(*n) + " Q rows, got " + std::to_string(inst.Q.size()));
  }
  return inst;
}

BqpInstance load_bqp(const std::string& path) { return parse_bqp(read_file(path), path); }

std::string serialize(const BqpInstance& inst) {
  std::ostringstream out;
  out << "bqp n=" << inst.size() << "\nq";
  for (auto v : inst.q) out << ' ' << v;
  out << '\n';
  for (const auto& row : inst.Q) {
    out << 'Q';
    for (auto v : row) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace nwr
