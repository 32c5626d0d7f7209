#include <numeric>

#include "nwr/circuit_builder.hpp"
#include "nwr/error.hpp"
#include "nwr/payoff_compiler.hpp"
#include "nwr/reductions.hpp"

namespace nwr {

std::vector<Circuit> sat_circuit_form(const ReducedGame& rg);

namespace {

class PneToNwrGame final : public GameView {
 public:
  PneToNwrGame(std::shared_ptr<const GameView> source, std::shared_ptr<const GadgetTable> gadget)
      : source_(std::move(source)), gadget_(std::move(gadget)) {}

  std::size_t players() const override {
    return source_->players() * static_cast<std::size_t>(gadget_->q());
  }
  int actions(std::size_t) const override { return gadget_->mhat(); }

  Rational utility(std::size_t player, std::span<const int> a) const override {
    const auto q = static_cast<std::size_t>(gadget_->q());
    const std::size_t n = source_->players();
    std::vector<int> pulled(n);
    for (std::size_t i = 0; i < n; ++i) pulled[i] = gadget_->at(gadget_->index_of(a.subspan(i * q, q)));
    return source_->utility(player / q, pulled);
  }

 private:
  std::shared_ptr<const GameView> source_;
  std::shared_ptr<const GadgetTable> gadget_;
};

}  // namespace

ReducedGame reduce_pne_to_nwr(std::shared_ptr<const GameView> source,
                              std::shared_ptr<const GadgetTable> gadget) {
  if (!source || !gadget) throw InvalidInput("missing source game or gadget");
  if (!gadget->verified()) throw InvalidInput("gadget table is not verified");
  for (std::size_t i = 0; i < source->players(); ++i) {
    if (source->actions(i) != 2) {
      throw InvalidInput("source player " + std::to_string(i + 1) + " has " +
                         std::to_string(source->actions(i)) + " actions; 2 required");
    }
  }
  if (gadget->m() != 2) {
    throw InvalidInput("gadget colours " + std::to_string(gadget->m()) +
                       " do not match the source action count 2");
  }
  ReducedGame rg;
  rg.kind = ReductionKind::PneToNwr;
  rg.game = std::make_shared<PneToNwrGame>(source, gadget);
  rg.group_size = static_cast<std::size_t>(gadget->q());
  for (std::size_t p = 0; p < rg.game->players(); ++p) rg.group_of.push_back(p / rg.group_size);
  rg.source_game = std::move(source);
  rg.gadget = std::move(gadget);
  return rg;
}

int rho(const GadgetTable& gadget, std::span<const int> group_actions) {
  return gadget.at(gadget.index_of(group_actions));
}

Profile pull_profile(const ReducedGame& rg, std::span<const int> a) {
  if (rg.kind != ReductionKind::PneToNwr || !rg.gadget) {
    throw InvalidInput("pull_profile needs a pne-to-nwr reduced game");
  }
  if (!rg.game->space().contains(a)) throw InvalidInput("profile is not valid for the reduced game");
  const std::size_t q = rg.group_size;
  Profile out;
  for (std::size_t i = 0; i < rg.source_game->players(); ++i) out.push_back(rho(*rg.gadget, a.subspan(i * q, q)));
  return out;
}

namespace {

// Largest binary table a lookup may address.
constexpr int kMaxLookupBits = 20;

std::vector<Circuit> pne_circuit_form(const ReducedGame& rg) {
  namespace cb = combinators;
  const GadgetTable& t = *rg.gadget;
  const GameView& src = *rg.source_game;
  const int n = static_cast<int>(src.players());
  const int q = t.q();
  const int width = bits_for_count(static_cast<std::uint64_t>(t.mhat()));
  if (q * width > kMaxLookupBits || n > kMaxLookupBits) {
    throw BudgetExceeded("circuit form needs lookup tables wider than 2^" + std::to_string(kMaxLookupBits));
  }

  // Gadget table re-indexed by the concatenated member bits.
  std::vector<std::uint64_t> gadget_by_bits(std::uint64_t{1} << (q * width), 0);
  for (std::uint64_t x = 0; x < gadget_by_bits.size(); ++x) {
    std::vector<int> point(static_cast<std::size_t>(q));
    bool valid = true;
    for (int l = 0; l < q; ++l) {
      point[static_cast<std::size_t>(l)] = static_cast<int>((x >> (l * width)) & ((1u << width) - 1));
      if (point[static_cast<std::size_t>(l)] >= t.mhat()) valid = false;
    }
    if (valid) gadget_by_bits[x] = static_cast<std::uint64_t>(t.at(t.index_of(point)));
  }

  const ProfileSpace space = src.space();
  const std::uint64_t source_profiles = space.size();
  std::vector<Circuit> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> values;
    std::int64_t den = 1;
    for (std::uint64_t k = 0; k < source_profiles; ++k) {
      values.push_back(src.utility(static_cast<std::size_t>(i), space.profile_at(k)));
      den = std::lcm(den, values.back().den());
    }
    std::vector<std::uint64_t> magnitudes;
    std::vector<std::uint64_t> signs;
    std::uint64_t largest = 0;
    for (const auto& v : values) {
      Rational scaled = v * Rational(den);
      std::int64_t num = scaled.num();
      signs.push_back(num < 0 ? 1 : 0);
      auto mag = static_cast<std::uint64_t>(num < 0 ? -num : num);
      magnitudes.push_back(mag);
      largest = std::max(largest, mag);
    }
    const int num_bits = std::max(1, bits_for_count(largest + 1));
    const int den_bits = std::max(1, bits_for_count(static_cast<std::uint64_t>(den) + 1));

    for (int l = 0; l < q; ++l) {
      CircuitBuilder b("u_" + std::to_string(i + 1) + "_" + std::to_string(l + 1));
      Bits pulled;
      for (int g = 0; g < n; ++g) {
        Bits member_bits;
        for (int r = 0; r < q; ++r) {
          for (int k = 0; k < width; ++k) member_bits.push_back(b.input(reduced_action_bit_id(g + 1, r + 1, k)));
        }
        pulled.push_back(cb::lookup(b, member_bits, gadget_by_bits, 1)[0]);
      }
      Bits sign = cb::lookup(b, pulled, signs, 1);
      Bits num = cb::lookup(b, pulled, magnitudes, num_bits);
      Bits d = cb::constant(b, static_cast<std::uint64_t>(den), den_bits);
      std::vector<Wire> outputs{sign[0]};
      outputs.insert(outputs.end(), num.begin(), num.end());
      outputs.insert(outputs.end(), d.begin(), d.end());
      out.push_back(b.build(outputs, PayoutLayout{num_bits, den_bits}));
    }
  }
  return out;
}

}  // namespace

std::vector<Circuit> circuit_form(const ReducedGame& rg) {
  switch (rg.kind) {
    case ReductionKind::SatToNwr: return sat_circuit_form(rg);
    case ReductionKind::PneToNwr: return pne_circuit_form(rg);
    case ReductionKind::Bqp: break;
  }
  throw InvalidInput("no circuit form for this reduction");
}

}  // namespace nwr
