#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwr/rational.hpp"

namespace nwr {

enum class GateKind { And, Or, Not };

std::string_view to_string(GateKind kind);

struct Gate {
  std::string id;
  GateKind kind = GateKind::And;
  std::vector<std::string> operands;

  friend bool operator==(const Gate&, const Gate&) = default;
};

// Output layout of a payoff circuit: outputs are
//   [sign, num_0 .. num_{num_bits-1}, den_0 .. den_{den_bits-1}]
// with magnitudes little-endian. The value is (-1)^sign * num / den.
struct PayoutLayout {
  int num_bits = 0;
  int den_bits = 0;

  std::size_t output_count() const { return 1 + static_cast<std::size_t>(num_bits + den_bits); }
  friend bool operator==(const PayoutLayout&, const PayoutLayout&) = default;
};

// Boolean circuit over AND/OR/NOT gates with fan-in at most two.
// A plain value type: structural rules are checked by validate(), not on
// construction, so that malformed circuits can be represented and reported.
struct Circuit {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<Gate> gates;
  std::vector<std::string> outputs;
  std::optional<PayoutLayout> payout;

  std::size_t size() const { return gates.size(); }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct Violation {
  std::string gate;  // offending gate or output id
  std::string message;
};

// Empty result means the circuit is well formed.
std::vector<Violation> validate(const Circuit& circuit);

// Index-resolved, topologically ordered form of a validated circuit.
// Immutable; eval() is safe to call concurrently.
class CircuitEvaluator {
 public:
  // Throws InvalidInput if the circuit does not validate.
  explicit CircuitEvaluator(const Circuit& circuit);

  std::size_t input_count() const { return input_count_; }
  std::size_t output_count() const { return outputs_.size(); }

  // Bits are 0/1 bytes, one per input in declaration order.
  std::vector<std::uint8_t> eval(std::span<const std::uint8_t> assignment) const;

  // Single-output convenience; throws if the circuit has more than one output.
  bool eval_bit(std::span<const std::uint8_t> assignment) const;

 private:
  struct Op {
    GateKind kind;
    std::uint32_t lhs;
    std::uint32_t rhs;
  };

  std::size_t input_count_ = 0;
  std::vector<Op> ops_;  // node index = input_count_ + position in ops_
  std::vector<std::uint32_t> outputs_;
};

std::vector<std::uint8_t> eval(const Circuit& circuit, std::span<const std::uint8_t> assignment);

// Decodes the outputs of a payoff circuit. Throws InvalidInput on a zero
// denominator or an output count that does not match the layout.
Rational decode_payout(const PayoutLayout& layout, std::span<const std::uint8_t> outputs);

// Text format, one declaration per line:
//   circuit <name>
//   payout num_bits=<k> den_bits=<k>     (payoff circuits only)
//   inputs <id>...
//   gate <id> = AND|OR|NOT <operand> [<operand>]
//   outputs <id>...
// '#' starts a comment. Throws ParseError with the offending line.
Circuit parse_circuit(std::string_view text, const std::string& source = "");
Circuit load_circuit(const std::string& path);

// Canonical text form; serialize(parse(serialize(c))) == serialize(c).
std::string serialize(const Circuit& circuit);

}  // namespace nwr
