#include "nwr/error.hpp"
#include "nwr/payoff_compiler.hpp"
#include "nwr/reductions.hpp"
#include "nwr/responses.hpp"

namespace nwr {
namespace {

class SatToNwrGame final : public GameView {
 public:
  SatToNwrGame(const Circuit& c, int m) : eval_(c), circuit_(c), n_(c.inputs.size()), m_(m) {}

  std::size_t players() const override { return n_ * static_cast<std::size_t>(m_); }
  int actions(std::size_t) const override { return m_; }

  Rational utility(std::size_t player, std::span<const int> a) const override {
    const auto m = static_cast<std::size_t>(m_);
    const std::size_t group = player / m;
    const auto member = static_cast<std::int64_t>(player % m) + 1;
    std::int64_t sum = member;
    for (std::size_t l = 0; l < m; ++l) sum += a[group * m + l];
    return Rational(static_cast<std::int64_t>(m_ + 1) * indicator(a) + sum % m_);
  }

  int indicator(std::span<const int> a) const {
    const auto m = static_cast<std::size_t>(m_);
    Assignment tau(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const int v = a[i * m];
      if (v > 1) return 0;
      for (std::size_t l = 1; l < m; ++l) {
        if (a[i * m + l] != v) return 0;
      }
      tau[i] = static_cast<std::uint8_t>(v);
    }
    return eval_.eval_bit(tau) ? 1 : 0;
  }

  const Circuit& circuit() const { return circuit_; }

 private:
  CircuitEvaluator eval_;
  Circuit circuit_;
  std::size_t n_;
  int m_;
};

void require_single_output(const Circuit& c) {
  if (auto v = validate(c); !v.empty()) {
    throw InvalidInput("invalid circuit: " + v.front().gate + ": " + v.front().message);
  }
  if (c.outputs.size() != 1) throw InvalidInput("source circuit must have exactly one output");
  if (c.inputs.empty()) throw InvalidInput("source circuit must have at least one input");
}

}  // namespace

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::SatToNwr: return "sat";
    case ReductionKind::PneToNwr: return "pne";
    case ReductionKind::Bqp: return "bqp";
  }
  return "?";
}

int f_indicator(const Circuit& c, std::span<const int> a, int m) {
  require_single_output(c);
  if (m < 2) throw InvalidInput("m must be at least 2");
  if (a.size() != c.inputs.size() * static_cast<std::size_t>(m)) {
    throw InvalidInput("profile length does not match n * m");
  }
  return SatToNwrGame(c, m).indicator(a);
}

ReducedGame reduce_sat_to_nwr(const Circuit& c, int m) {
  require_single_output(c);
  if (m < 2) throw InvalidInput("m must be at least 2");
  ReducedGame rg;
  rg.kind = ReductionKind::SatToNwr;
  rg.game = std::make_shared<SatToNwrGame>(c, m);
  rg.group_size = static_cast<std::size_t>(m);
  for (std::size_t p = 0; p < rg.game->players(); ++p) rg.group_of.push_back(p / rg.group_size);
  rg.source_circuit = c;
  return rg;
}

std::optional<Assignment> pull_assignment(const ReducedGame& rg, std::span<const int> a) {
  if (rg.kind != ReductionKind::SatToNwr || !rg.source_circuit) {
    throw InvalidInput("pull_assignment needs a sat-to-nwr reduced game");
  }
  if (!rg.game->space().contains(a)) throw InvalidInput("profile is not valid for the reduced game");
  if (!is_nwr(*rg.game, a)) return std::nullopt;
  const int m = static_cast<int>(rg.group_size);
  if (f_indicator(*rg.source_circuit, a, m) != 1) {
    throw std::logic_error("no-worst-response profile with f = 0");
  }
  Assignment tau;
  for (std::size_t i = 0; i < rg.source_circuit->inputs.size(); ++i) {
    tau.push_back(static_cast<std::uint8_t>(a[i * rg.group_size]));
  }
  return tau;
}

std::vector<Circuit> sat_circuit_form(const ReducedGame& rg) {
  const int m = static_cast<int>(rg.group_size);
  const int n = static_cast<int>(rg.source_circuit->inputs.size());
  std::vector<Circuit> out;
  for (int i = 1; i <= n; ++i) {
    for (int l = 1; l <= m; ++l) out.push_back(compile_reduction1_payoff(*rg.source_circuit, m, i, l));
  }
  return out;
}

std::optional<Profile> first_disagreement(const GameView& a, const GameView& b,
                                          std::uint64_t budget) {
  if (a.action_counts() != b.action_counts()) throw InvalidInput("games have different shapes");
  const ProfileSpace space = a.space();
  const std::uint64_t total = space.size(budget);
  Profile p(space.players(), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    for (std::size_t i = 0; i < space.players(); ++i) {
      if (a.utility(i, p) != b.utility(i, p)) return p;
    }
    space.next(p);
  }
  return std::nullopt;
}

}  // namespace nwr
