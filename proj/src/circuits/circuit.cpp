#include "nwr/circuit.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nwr/error.hpp"

namespace nwr {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And:
      return "AND";
    case GateKind::Or:
      return "OR";
    case GateKind::Not:
      return "NOT";
  }
  return "?";
}

namespace {

std::size_t expected_arity(GateKind kind) { return kind == GateKind::Not ? 1 : 2; }

}  // namespace

std::vector<Violation> validate(const Circuit& circuit) {
  std::vector<Violation> out;
  std::unordered_map<std::string, std::size_t> gate_index;
  std::unordered_set<std::string> inputs;

  for (const auto& id : circuit.inputs) {
    if (!inputs.insert(id).second) out.push_back({id, "duplicate id " + id});
  }
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    if (inputs.count(gate.id) || !gate_index.emplace(gate.id, g).second) {
      out.push_back({gate.id, "duplicate id " + gate.id});
    }
  }

  for (const auto& gate : circuit.gates) {
    if (gate.operands.size() != expected_arity(gate.kind)) {
      out.push_back({gate.id, std::string(to_string(gate.kind)) + " arity at " + gate.id +
                                  ": expected " + std::to_string(expected_arity(gate.kind)) +
                                  " operand(s), got " + std::to_string(gate.operands.size())});
    }
    for (const auto& op : gate.operands) {
      if (!inputs.count(op) && !gate_index.count(op)) {
        out.push_back({gate.id, "undefined operand " + op + " at " + gate.id});
      }
    }
  }

  // Iterative DFS; a gray operand closes a cycle.
  enum class Mark : std::uint8_t { White, Gray, Black };
  std::vector<Mark> mark(circuit.gates.size(), Mark::White);
  std::unordered_set<std::string> reported;
  for (std::size_t root = 0; root < circuit.gates.size(); ++root) {
    if (mark[root] != Mark::White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::Gray;
    while (!stack.empty()) {
      auto& [g, next] = stack.back();
      const auto& operands = circuit.gates[g].operands;
      if (next == operands.size()) {
        mark[g] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const auto it = gate_index.find(operands[next++]);
      if (it == gate_index.end()) continue;
      std::size_t child = it->second;
      if (mark[child] == Mark::Gray) {
        const auto& id = circuit.gates[child].id;
        if (reported.insert(id).second) out.push_back({id, "cycle at " + id});
      } else if (mark[child] == Mark::White) {
        mark[child] = Mark::Gray;
        stack.emplace_back(child, 0);
      }
    }
  }

  for (const auto& id : circuit.outputs) {
    if (!inputs.count(id) && !gate_index.count(id)) {
      out.push_back({id, "undefined output " + id});
    }
  }
  if (circuit.payout) {
    const auto& p = *circuit.payout;
    if (p.num_bits < 0 || p.den_bits < 1) {
      out.push_back({"payout", "payout widths must satisfy num_bits >= 0 and den_bits >= 1"});
    } else if (circuit.outputs.size() != p.output_count()) {
      out.push_back({"outputs", "payout layout expects " + std::to_string(p.output_count()) +
                                    " outputs, circuit has " +
                                    std::to_string(circuit.outputs.size())});
    }
  }
  return out;
}

CircuitEvaluator::CircuitEvaluator(const Circuit& circuit) : input_count_(circuit.inputs.size()) {
  if (auto violations = validate(circuit); !violations.empty()) {
    throw InvalidInput("invalid circuit '" + circuit.name + "': " + violations.front().message);
  }
  std::unordered_map<std::string, std::uint32_t> node;
  for (std::size_t i = 0; i < circuit.inputs.size(); ++i) {
    node.emplace(circuit.inputs[i], static_cast<std::uint32_t>(i));
  }
  std::unordered_map<std::string, std::size_t> gate_index;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) gate_index.emplace(circuit.gates[g].id, g);

  // Post-order DFS gives a topological order regardless of declaration order.
  std::vector<bool> placed(circuit.gates.size(), false);
  ops_.reserve(circuit.gates.size());
  auto resolve = [&](const std::string& id) { return node.at(id); };
  for (std::size_t root = 0; root < circuit.gates.size(); ++root) {
    if (placed[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [g, next] = stack.back();
      const auto& gate = circuit.gates[g];
      if (next < gate.operands.size()) {
        auto it = gate_index.find(gate.operands[next++]);
        if (it != gate_index.end() && !placed[it->second]) stack.emplace_back(it->second, 0);
        continue;
      }
      if (!placed[g]) {
        Op op{gate.kind, resolve(gate.operands[0]), 0};
        if (gate.kind != GateKind::Not) op.rhs = resolve(gate.operands[1]);
        node.emplace(gate.id, static_cast<std::uint32_t>(input_count_ + ops_.size()));
        ops_.push_back(op);
        placed[g] = true;
      }
      stack.pop_back();
    }
  }
  outputs_.reserve(circuit.outputs.size());
  for (const auto& id : circuit.outputs) outputs_.push_back(resolve(id));
}

std::vector<std::uint8_t> CircuitEvaluator::eval(std::span<const std::uint8_t> assignment) const {
  if (assignment.size() != input_count_) {
    throw InvalidInput("assignment has " + std::to_string(assignment.size()) +
                       " bits, circuit has " + std::to_string(input_count_) + " inputs");
  }
  std::vector<std::uint8_t> value(input_count_ + ops_.size());
  for (std::size_t i = 0; i < input_count_; ++i) value[i] = assignment[i] ? 1 : 0;
  std::size_t at = input_count_;
  for (const auto& op : ops_) {
    switch (op.kind) {
      case GateKind::And:
        value[at] = value[op.lhs] & value[op.rhs];
        break;
      case GateKind::Or:
        value[at] = value[op.lhs] | value[op.rhs];
        break;
      case GateKind::Not:
        value[at] = value[op.lhs] ^ 1;
        break;
    }
    ++at;
  }
  std::vector<std::uint8_t> out;
  out.reserve(outputs_.size());
  for (auto idx : outputs_) out.push_back(value[idx]);
  return out;
}

bool CircuitEvaluator::eval_bit(std::span<const std::uint8_t> assignment) const {
  if (outputs_.size() != 1) throw InvalidInput("circuit does not have exactly one output");
  return eval(assignment)[0] != 0;
}

std::vector<std::uint8_t> eval(const Circuit& circuit, std::span<const std::uint8_t> assignment) {
  return CircuitEvaluator(circuit).eval(assignment);
}

Rational decode_payout(const PayoutLayout& layout, std::span<const std::uint8_t> outputs) {
  if (outputs.size() != layout.output_count()) {
    throw InvalidInput("payout decode: expected " + std::to_string(layout.output_count()) +
                       " output bits, got " + std::to_string(outputs.size()));
  }
  if (layout.num_bits > 62 || layout.den_bits > 62) {
    throw InvalidInput("payout widths above 62 bits are not supported");
  }
  std::int64_t num = 0;
  for (int b = 0; b < layout.num_bits; ++b) {
    if (outputs[1 + b]) num |= std::int64_t{1} << b;
  }
  std::int64_t den = 0;
  for (int b = 0; b < layout.den_bits; ++b) {
    if (outputs[1 + layout.num_bits + b]) den |= std::int64_t{1} << b;
  }
  if (den == 0) throw InvalidInput("payout decode: zero denominator");
  if (outputs[0]) num = -num;
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  for (char c : s.substr(1)) {
    if (!head(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

int parse_width(const std::string& word, std::string_view key, const std::string& source,
                std::size_t line) {
  std::string prefix = std::string(key) + "=";
  if (word.rfind(prefix, 0) != 0) {
    throw ParseError(source, line, "expected " + prefix + "<k>, got '" + word + "'");
  }
  try {
    std::size_t used = 0;
    int v = std::stoi(word.substr(prefix.size()), &used);
    if (used != word.size() - prefix.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "bad width in '" + word + "'");
  }
}

}  // namespace

Circuit parse_circuit(std::string_view text, const std::string& source) {
  Circuit c;
  bool have_name = false;
  bool have_inputs = false;
  bool have_outputs = false;
  std::unordered_map<std::string, std::size_t> declared_at;
  std::vector<std::pair<std::string, std::size_t>> references;

  auto declare = [&](const std::string& id, std::size_t line) {
    if (!is_identifier(id)) throw ParseError(source, line, "bad identifier '" + id + "'");
    if (!declared_at.emplace(id, line).second) {
      throw ParseError(source, line, "duplicate identifier '" + id + "'");
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;
    const auto& kw = words[0];

    if (kw == "circuit") {
      if (have_name) throw ParseError(source, line_no, "second 'circuit' declaration");
      if (words.size() != 2 || !is_identifier(words[1])) {
        throw ParseError(source, line_no, "expected 'circuit <name>'");
      }
      c.name = words[1];
      have_name = true;
    } else if (kw == "payout") {
      if (c.payout) throw ParseError(source, line_no, "second 'payout' declaration");
      if (words.size() != 3) {
        throw ParseError(source, line_no, "expected 'payout num_bits=<k> den_bits=<k>'");
      }
      PayoutLayout layout;
      layout.num_bits = parse_width(words[1], "num_bits", source, line_no);
      layout.den_bits = parse_width(words[2], "den_bits", source, line_no);
      c.payout = layout;
    } else if (kw == "inputs") {
      if (have_inputs) throw ParseError(source, line_no, "second 'inputs' declaration");
      for (std::size_t i = 1; i < words.size(); ++i) {
        declare(words[i], line_no);
        c.inputs.push_back(words[i]);
      }
      have_inputs = true;
    } else if (kw == "gate") {
      // gate <id> = KIND op [op]
      if (words.size() < 5 || words.size() > 6 || words[2] != "=") {
        throw ParseError(source, line_no, "expected 'gate <id> = AND|OR|NOT <operand> [<operand>]'");
      }
      Gate g;
      g.id = words[1];
      declare(g.id, line_no);
      if (words[3] == "AND") {
        g.kind = GateKind::And;
      } else if (words[3] == "OR") {
        g.kind = GateKind::Or;
      } else if (words[3] == "NOT") {
        g.kind = GateKind::Not;
      } else {
        throw ParseError(source, line_no, "unknown gate kind '" + words[3] + "'");
      }
      for (std::size_t i = 4; i < words.size(); ++i) {
        if (!is_identifier(words[i])) {
          throw ParseError(source, line_no, "bad identifier '" + words[i] + "'");
        }
        g.operands.push_back(words[i]);
        references.emplace_back(words[i], line_no);
      }
      c.gates.push_back(std::move(g));
    } else if (kw == "outputs") {
      if (have_outputs) throw ParseError(source, line_no, "second 'outputs' declaration");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!is_identifier(words[i])) {
          throw ParseError(source, line_no, "bad identifier '" + words[i] + "'");
        }
        c.outputs.push_back(words[i]);
        references.emplace_back(words[i], line_no);
      }
      have_outputs = true;
    } else {
      throw ParseError(source, line_no, "unknown declaration '" + kw + "'");
    }
  }

  if (!have_name) throw ParseError(source, 0, "missing 'circuit <name>' declaration");
  if (!have_outputs) throw ParseError(source, 0, "missing 'outputs' declaration");
  for (const auto& [id, line] : references) {
    if (!declared_at.count(id)) throw ParseError(source, line, "undefined reference '" + id + "'");
  }
  return c;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str(), path);
}

std::string serialize(const Circuit& circuit) {
  std::ostringstream out;
  out << "circuit " << circuit.name << "\n";
  if (circuit.payout) {
    out << "payout num_bits=" << circuit.payout->num_bits
        << " den_bits=" << circuit.payout->den_bits << "\n";
  }
  out << "inputs";
  for (const auto& id : circuit.inputs) out << " " << id;
  out << "\n";
  for (const auto& g : circuit.gates) {
    out << "gate " << g.id << " = " << to_string(g.kind);
    for (const auto& op : g.operands) out << " " << op;
    out << "\n";
  }
  out << "outputs";
  for (const auto& id : circuit.outputs) out << " " << id;
  out << "\n";
  return out.str();
}

}  // namespace nwr
