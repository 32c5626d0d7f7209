#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nwr/circuit.hpp"

namespace nwr {

struct Wire {
  std::uint32_t node = 0;
  friend bool operator==(Wire, Wire) = default;
};

// Little-endian bit vector of wires.
using Bits = std::vector<Wire>;

// Incremental construction of circuits over {AND, OR, NOT}.
//
// Gates are numbered g1, g2, ... in creation order, which is already a
// topological order. Gates whose operands are known constants are folded,
// so derived gates (XOR, constants, muxes) never appear in the output.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name) : name_(std::move(name)) {}

  Wire input(const std::string& id);
  std::size_t input_count() const { return input_ids_.size(); }

  Wire and_gate(Wire a, Wire b);
  Wire or_gate(Wire a, Wire b);
  Wire not_gate(Wire a);
  Wire xor_gate(Wire a, Wire b);

  // Constants are realized as x AND NOT x (and its negation) over the first
  // input, so at least one input must exist.
  Wire constant(bool value);

  // Copies `sub` into this circuit with its inputs bound to `bindings`;
  // returns the wires carrying sub's outputs.
  std::vector<Wire> embed(const Circuit& sub, std::span<const Wire> bindings);

  Circuit build(std::span<const Wire> outputs,
                std::optional<PayoutLayout> payout = std::nullopt) const;

 private:
  struct Node {
    GateKind kind;
    Wire lhs;
    Wire rhs;
  };

  std::optional<bool> constant_value(Wire w) const;
  Wire make(GateKind kind, Wire lhs, Wire rhs);
  Wire first_input() const;

  std::string name_;
  std::vector<std::string> input_ids_;
  std::vector<std::optional<Node>> nodes_;  // nullopt for inputs
  std::vector<std::int32_t> input_slot_;    // position in input_ids_, -1 for gates
  std::optional<Wire> zero_;
  std::optional<Wire> one_;
  std::unordered_map<std::uint32_t, Wire> negation_;
};

// Word-level combinators used by the payoff compilers. All widths are in
// bits; values are unsigned little-endian.
namespace combinators {

Bits constant(CircuitBuilder& b, std::uint64_t value, int width);

// Full-width sum: result has max(width) + 1 bits.
Bits ripple_add(CircuitBuilder& b, const Bits& x, const Bits& y);

// x - y modulo 2^width(x) and the borrow-out (1 iff x < y). y is
// zero-extended or must not be wider than x.
std::pair<Bits, Wire> subtract(CircuitBuilder& b, const Bits& x, const Bits& y);

// x mod m, as bit_width(m - 1) bits (at least one).
Bits residue_mod(CircuitBuilder& b, const Bits& x, std::uint64_t m);

Wire equals(CircuitBuilder& b, const Bits& x, const Bits& y);
Wire equals_const(CircuitBuilder& b, const Bits& x, std::uint64_t value);

// sel ? when_true : when_false, bitwise; widths are zero-extended to match.
Bits mux(CircuitBuilder& b, Wire sel, const Bits& when_true, const Bits& when_false);

// table[x] as `width`-bit word; indices past the end of the table read 0.
Bits lookup(CircuitBuilder& b, const Bits& x, std::span<const std::uint64_t> table, int width);

// AND / OR over a list; empty lists give the neutral constant.
Wire all_of(CircuitBuilder& b, std::span<const Wire> ws);
Wire any_of(CircuitBuilder& b, std::span<const Wire> ws);

}  // namespace combinators

// Number of bits needed to encode values 0 .. count-1 (0 when count <= 1).
int bits_for_count(std::uint64_t count);

}  // namespace nwr
