#include "nwr/payoff_compiler.hpp"

#include <bit>

#include "nwr/circuit_builder.hpp"
#include "nwr/error.hpp"

namespace nwr {

std::string reduced_action_bit_id(int group, int member, int bit) {
  return "a" + std::to_string(group) + "_" + std::to_string(member) + "_" + std::to_string(bit);
}

Circuit compile_reduction1_payoff(const Circuit& source, int m, int group, int member) {
  const int n = static_cast<int>(source.inputs.size());
  if (m < 2) throw InvalidInput("reduction payoff: m must be at least 2");
  if (group < 1 || group > n) throw InvalidInput("reduction payoff: group index out of range");
  if (member < 1 || member > m) throw InvalidInput("reduction payoff: member index out of range");
  if (source.outputs.size() != 1) throw InvalidInput("reduction payoff: source must have one output");
  if (auto v = validate(source); !v.empty()) {
    throw InvalidInput("reduction payoff: invalid source circuit: " + v.front().message);
  }

  namespace cb = combinators;
  const int width = bits_for_count(static_cast<std::uint64_t>(m));
  CircuitBuilder b("u_" + std::to_string(group) + "_" + std::to_string(member));

  // actions[i][l] = bits of player (i + 1, l + 1)
  std::vector<std::vector<Bits>> actions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < m; ++l) {
      Bits bits;
      for (int k = 0; k < width; ++k) bits.push_back(b.input(reduced_action_bit_id(i + 1, l + 1, k)));
      actions[static_cast<std::size_t>(i)].push_back(std::move(bits));
    }
  }

  // Global indicator f.
  std::vector<Wire> clauses;
  std::vector<Wire> tau;
  for (const auto& members : actions) {
    std::vector<Wire> low;
    std::vector<Wire> low_negated;
    for (const auto& bits : members) {
      low.push_back(bits[0]);
      low_negated.push_back(b.not_gate(bits[0]));
      for (std::size_t k = 1; k < bits.size(); ++k) clauses.push_back(b.not_gate(bits[k]));
    }
    clauses.push_back(b.or_gate(cb::all_of(b, low), cb::all_of(b, low_negated)));
    tau.push_back(members[0][0]);
  }
  clauses.push_back(b.embed(source, tau)[0]);
  Wire f = cb::all_of(b, clauses);

  // Local term: (member + sum of the group's actions) mod m.
  Bits sum = cb::constant(b, static_cast<std::uint64_t>(member),
                          static_cast<int>(std::bit_width(static_cast<unsigned>(member))));
  for (const auto& bits : actions[static_cast<std::size_t>(group - 1)]) sum = cb::ripple_add(b, sum, bits);
  Bits local = cb::residue_mod(b, sum, static_cast<std::uint64_t>(m));

  const int num_bits = static_cast<int>(std::bit_width(static_cast<unsigned>(2 * m)));
  Bits global = cb::mux(b, f, cb::constant(b, static_cast<std::uint64_t>(m + 1), num_bits),
                        cb::constant(b, 0, num_bits));
  Bits numerator = cb::ripple_add(b, global, local);
  numerator.resize(static_cast<std::size_t>(num_bits));  // value <= 2m - 1 fits

  std::vector<Wire> outputs;
  outputs.push_back(b.constant(false));
  outputs.insert(outputs.end(), numerator.begin(), numerator.end());
  outputs.push_back(b.constant(true));
  return b.build(outputs, PayoutLayout{num_bits, 1});
}

}  // namespace nwr
