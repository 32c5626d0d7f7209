#include "nwr/circuit_builder.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

#include "nwr/error.hpp"

namespace nwr {

int bits_for_count(std::uint64_t count) {
  return count <= 1 ? 0 : static_cast<int>(std::bit_width(count - 1));
}

Wire CircuitBuilder::input(const std::string& id) {
  if (id.size() > 1 && id[0] == 'g' &&
      std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InvalidInput("builder: input id '" + id + "' clashes with generated gate ids");
  }
  Wire w{static_cast<std::uint32_t>(nodes_.size())};
  input_slot_.push_back(static_cast<std::int32_t>(input_ids_.size()));
  input_ids_.push_back(id);
  nodes_.emplace_back(std::nullopt);
  return w;
}

std::optional<bool> CircuitBuilder::constant_value(Wire w) const {
  if (zero_ && w == *zero_) return false;
  if (one_ && w == *one_) return true;
  return std::nullopt;
}

Wire CircuitBuilder::make(GateKind kind, Wire lhs, Wire rhs) {
  Wire w{static_cast<std::uint32_t>(nodes_.size())};
  input_slot_.push_back(-1);
  nodes_.emplace_back(Node{kind, lhs, rhs});
  return w;
}

Wire CircuitBuilder::first_input() const {
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!nodes_[n]) return Wire{static_cast<std::uint32_t>(n)};
  }
  throw InvalidInput("constant requires at least one circuit input");
}

Wire CircuitBuilder::constant(bool value) {
  if (!zero_) {
    if (input_ids_.empty()) throw InvalidInput("constant requires at least one circuit input");
    Wire x = first_input();
    Wire nx = not_gate(x);
    zero_ = make(GateKind::And, x, nx);
    one_ = make(GateKind::Not, *zero_, *zero_);
    negation_[zero_->node] = *one_;
    negation_[one_->node] = *zero_;
  }
  return value ? *one_ : *zero_;
}

Wire CircuitBuilder::not_gate(Wire a) {
  if (auto it = negation_.find(a.node); it != negation_.end()) return it->second;
  Wire w = make(GateKind::Not, a, a);
  negation_[a.node] = w;
  negation_[w.node] = a;
  return w;
}

Wire CircuitBuilder::and_gate(Wire a, Wire b) {
  auto ca = constant_value(a);
  auto cb = constant_value(b);
  if (ca) return *ca ? b : a;
  if (cb) return *cb ? a : b;
  if (a == b) return a;
  return make(GateKind::And, a, b);
}

Wire CircuitBuilder::or_gate(Wire a, Wire b) {
  auto ca = constant_value(a);
  auto cb = constant_value(b);
  if (ca) return *ca ? a : b;
  if (cb) return *cb ? b : a;
  if (a == b) return a;
  return make(GateKind::Or, a, b);
}

Wire CircuitBuilder::xor_gate(Wire a, Wire b) {
  auto ca = constant_value(a);
  auto cb = constant_value(b);
  if (ca) return *ca ? not_gate(b) : b;
  if (cb) return *cb ? not_gate(a) : a;
  return or_gate(and_gate(a, not_gate(b)), and_gate(not_gate(a), b));
}

std::vector<Wire> CircuitBuilder::embed(const Circuit& sub, std::span<const Wire> bindings) {
  if (bindings.size() != sub.inputs.size()) {
    throw InvalidInput("embed: circuit '" + sub.name + "' has " +
                       std::to_string(sub.inputs.size()) + " inputs, " +
                       std::to_string(bindings.size()) + " bindings given");
  }
  if (auto violations = validate(sub); !violations.empty()) {
    throw InvalidInput("embed: invalid circuit '" + sub.name + "': " + violations.front().message);
  }
  std::unordered_map<std::string, Wire> wire;
  for (std::size_t i = 0; i < sub.inputs.size(); ++i) wire.emplace(sub.inputs[i], bindings[i]);
  std::unordered_map<std::string, const Gate*> by_id;
  for (const auto& g : sub.gates) by_id.emplace(g.id, &g);

  // Declaration order need not be topological; resolve recursively.
  std::vector<const Gate*> stack;
  auto realize = [&](const std::string& root) {
    stack.push_back(by_id.at(root));
    while (!stack.empty()) {
      const Gate* g = stack.back();
      if (wire.count(g->id)) {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (const auto& op : g->operands) {
        if (!wire.count(op)) {
          stack.push_back(by_id.at(op));
          ready = false;
        }
      }
      if (!ready) continue;
      Wire lhs = wire.at(g->operands[0]);
      Wire w;
      switch (g->kind) {
        case GateKind::And:
          w = and_gate(lhs, wire.at(g->operands[1]));
          break;
        case GateKind::Or:
          w = or_gate(lhs, wire.at(g->operands[1]));
          break;
        case GateKind::Not:
          w = not_gate(lhs);
          break;
      }
      wire.emplace(g->id, w);
      stack.pop_back();
    }
  };
  std::vector<Wire> outs;
  for (const auto& id : sub.outputs) {
    if (!wire.count(id)) realize(id);
    outs.push_back(wire.at(id));
  }
  return outs;
}

Circuit CircuitBuilder::build(std::span<const Wire> outputs,
                              std::optional<PayoutLayout> payout) const {
  // Keep only gates reachable from the outputs.
  std::vector<bool> live(nodes_.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto w : outputs) stack.push_back(w.node);
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (live[n]) continue;
    live[n] = true;
    if (const auto& node = nodes_[n]) {
      stack.push_back(node->lhs.node);
      if (node->kind != GateKind::Not) stack.push_back(node->rhs.node);
    }
  }

  Circuit c;
  c.name = name_;
  c.inputs = input_ids_;
  c.payout = payout;
  std::vector<std::string> ids(nodes_.size());
  std::size_t next = 1;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!nodes_[n]) {
      ids[n] = input_ids_[static_cast<std::size_t>(input_slot_[n])];
      continue;
    }
    if (!live[n]) continue;
    ids[n] = "g" + std::to_string(next++);
    const auto& node = *nodes_[n];
    Gate g{ids[n], node.kind, {ids[node.lhs.node]}};
    if (node.kind != GateKind::Not) g.operands.push_back(ids[node.rhs.node]);
    c.gates.push_back(std::move(g));
  }
  for (auto w : outputs) c.outputs.push_back(ids[w.node]);
  return c;
}

namespace combinators {

namespace {

Bits extend(CircuitBuilder& b, Bits x, std::size_t width) {
  while (x.size() < width) x.push_back(b.constant(false));
  return x;
}

}  // namespace

Bits constant(CircuitBuilder& b, std::uint64_t value, int width) {
  Bits out;
  for (int i = 0; i < width; ++i) out.push_back(b.constant(((value >> i) & 1) != 0));
  return out;
}

Bits ripple_add(CircuitBuilder& b, const Bits& x, const Bits& y) {
  std::size_t width = std::max(x.size(), y.size());
  Bits xs = extend(b, x, width);
  Bits ys = extend(b, y, width);
  Bits out;
  Wire carry = b.constant(false);
  for (std::size_t i = 0; i < width; ++i) {
    Wire p = b.xor_gate(xs[i], ys[i]);
    out.push_back(b.xor_gate(p, carry));
    carry = b.or_gate(b.and_gate(xs[i], ys[i]), b.and_gate(p, carry));
  }
  out.push_back(carry);
  return out;
}

std::pair<Bits, Wire> subtract(CircuitBuilder& b, const Bits& x, const Bits& y) {
  if (y.size() > x.size()) throw InvalidInput("subtract: subtrahend wider than minuend");
  Bits ys = extend(b, y, x.size());
  // x + ~y + 1; the carry-out is 1 iff no borrow.
  Bits out;
  Wire carry = b.constant(true);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Wire ny = b.not_gate(ys[i]);
    Wire p = b.xor_gate(x[i], ny);
    out.push_back(b.xor_gate(p, carry));
    carry = b.or_gate(b.and_gate(x[i], ny), b.and_gate(p, carry));
  }
  return {out, b.not_gate(carry)};
}

Bits residue_mod(CircuitBuilder& b, const Bits& x, std::uint64_t m) {
  if (m == 0) throw InvalidInput("residue_mod: modulus must be positive");
  int out_width = std::max(1, bits_for_count(m));
  if (m == 1) return constant(b, 0, out_width);
  int mw = static_cast<int>(std::bit_width(m));
  int w = static_cast<int>(x.size());
  Bits r = x;
  // Restoring division: after the step at shift k, r < m * 2^k.
  for (int k = w - mw; k >= 0; --k) {
    Bits divisor = constant(b, m << k, w);
    auto [diff, borrow] = subtract(b, r, divisor);
    r = mux(b, borrow, r, diff);
  }
  r = extend(b, r, static_cast<std::size_t>(out_width));
  r.resize(static_cast<std::size_t>(out_width));
  return r;
}

Wire equals(CircuitBuilder& b, const Bits& x, const Bits& y) {
  std::size_t width = std::max(x.size(), y.size());
  Bits xs = extend(b, x, width);
  Bits ys = extend(b, y, width);
  Bits same;
  for (std::size_t i = 0; i < width; ++i) same.push_back(b.not_gate(b.xor_gate(xs[i], ys[i])));
  return all_of(b, same);
}

Wire equals_const(CircuitBuilder& b, const Bits& x, std::uint64_t value) {
  if (x.size() < 64 && (value >> x.size()) != 0) return b.constant(false);
  Bits same;
  for (std::size_t i = 0; i < x.size(); ++i) {
    same.push_back(((value >> i) & 1) ? x[i] : b.not_gate(x[i]));
  }
  return all_of(b, same);
}

Bits mux(CircuitBuilder& b, Wire sel, const Bits& when_true, const Bits& when_false) {
  std::size_t width = std::max(when_true.size(), when_false.size());
  Bits t = extend(b, when_true, width);
  Bits f = extend(b, when_false, width);
  Wire nsel = b.not_gate(sel);
  Bits out;
  for (std::size_t i = 0; i < width; ++i) {
    if (t[i] == f[i]) {
      out.push_back(t[i]);
    } else {
      out.push_back(b.or_gate(b.and_gate(sel, t[i]), b.and_gate(nsel, f[i])));
    }
  }
  return out;
}

Bits lookup(CircuitBuilder& b, const Bits& x, std::span<const std::uint64_t> table, int width) {
  // Mux tree over the index bits, most significant bit at the root.
  std::function<Bits(int, std::uint64_t)> node = [&](int level, std::uint64_t prefix) -> Bits {
    if (level < 0) {
      std::uint64_t v = prefix < table.size() ? table[prefix] : 0;
      return constant(b, v, width);
    }
    std::uint64_t lo_index = prefix;
    std::uint64_t hi_index = prefix | (std::uint64_t{1} << level);
    if (lo_index >= table.size()) return constant(b, 0, width);
    Bits lo = node(level - 1, lo_index);
    Bits hi = node(level - 1, hi_index);
    return mux(b, x[static_cast<std::size_t>(level)], hi, lo);
  };
  return node(static_cast<int>(x.size()) - 1, 0);
}

Wire all_of(CircuitBuilder& b, std::span<const Wire> ws) {
  Wire acc = b.constant(true);
  for (auto w : ws) acc = b.and_gate(acc, w);
  return acc;
}

Wire any_of(CircuitBuilder& b, std::span<const Wire> ws) {
  Wire acc = b.constant(false);
  for (auto w : ws) acc = b.or_gate(acc, w);
  return acc;
}

}  // namespace combinators
}  // namespace nwr
