#include <gtest/gtest.h>

#include <bit>

#include "nwr/circuit.hpp"
#include "nwr/circuit_builder.hpp"
#include "nwr/error.hpp"
#include "nwr/payoff_compiler.hpp"
#include "support.hpp"

using namespace nwr;
using testsupport::bits_of;
using testsupport::make_circuit;

namespace {

const char* kMixed =
    "circuit mixed\n"
    "inputs x1 x2 x3\n"
    "gate g1 = AND x1 x2\n"
    "gate g2 = NOT x3\n"
    "gate g3 = OR x2 x3\n"
    "gate g4 = AND g1 g2\n"
    "gate g5 = NOT g3\n"
    "gate g6 = OR g4 g5\n"
    "outputs g6\n";

bool has_message(const std::vector<Violation>& v, const std::string& text) {
  for (const auto& x : v) {
    if (x.message.find(text) != std::string::npos) return true;
  }
  return false;
}

std::uint64_t value_of(const std::vector<std::uint8_t>& bits, std::size_t from, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < width; ++k) v |= std::uint64_t{bits[from + k]} << k;
  return v;
}

}  // namespace

TEST(Validate, MinimalCircuitIsOk) {
  auto c = make_circuit("c", {"x1", "x2"}, {{"g1", GateKind::And, {"x1", "x2"}}}, {"g1"});
  EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, SelfReferenceIsACycle) {
  auto c = make_circuit("c", {"x1"}, {{"g1", GateKind::And, {"g1", "x1"}}}, {"g1"});
  auto v = validate(c);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(has_message(v, "cycle at g1"));
  EXPECT_EQ(v.front().gate, "g1");
}

TEST(Validate, NotArity) {
  auto c = make_circuit("c", {"x1", "x2"}, {{"g1", GateKind::Not, {"x1", "x2"}}}, {"g1"});
  auto v = validate(c);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(has_message(v, "NOT arity"));
}

TEST(Validate, UndefinedOutputAndOperand) {
  auto c = make_circuit("c", {"x1"}, {{"g1", GateKind::And, {"x1", "y"}}}, {"g9"});
  auto v = validate(c);
  EXPECT_TRUE(has_message(v, "undefined"));
  EXPECT_GE(v.size(), 2u);
}

TEST(Eval, MixedCircuitExamples) {
  Circuit c = parse_circuit(kMixed);
  EXPECT_EQ(c.size(), 6u);
  EXPECT_EQ(eval(c, std::vector<std::uint8_t>{1, 1, 1}), std::vector<std::uint8_t>{0});
  EXPECT_EQ(eval(c, std::vector<std::uint8_t>{1, 1, 0}), std::vector<std::uint8_t>{1});
}

TEST(Eval, IdentityOutput) {
  auto c = make_circuit("id", {"x1"}, {}, {"x1"});
  EXPECT_EQ(eval(c, std::vector<std::uint8_t>{0}), std::vector<std::uint8_t>{0});
  EXPECT_EQ(eval(c, std::vector<std::uint8_t>{1}), std::vector<std::uint8_t>{1});
}

TEST(Eval, RejectsBadInput) {
  Circuit c = parse_circuit(kMixed);
  EXPECT_THROW(eval(c, std::vector<std::uint8_t>{1, 1}), InvalidInput);
  auto cyclic = make_circuit("c", {"x1"}, {{"g1", GateKind::And, {"g1", "x1"}}}, {"g1"});
  EXPECT_THROW(CircuitEvaluator{cyclic}, InvalidInput);
}

TEST(Eval, AgreesWithNaiveEvaluatorOnRandomCircuits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int inputs = 1 + trial % 12;
    Circuit c = testsupport::random_circuit(rng, inputs, 1 + trial % 25);
    c.outputs.push_back(c.gates.front().id);
    CircuitEvaluator ev(c);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << inputs); ++v) {
      auto x = bits_of(v, static_cast<std::size_t>(inputs));
      ASSERT_EQ(ev.eval(x), testsupport::naive_eval(c, x)) << serialize(c);
    }
  }
}

TEST(Parse, OneGateCircuit) {
  Circuit c = parse_circuit("circuit c\ninputs x1\ngate g1 = NOT x1\noutputs g1");
  EXPECT_EQ(c.name, "c");
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0].kind, GateKind::Not);
  EXPECT_EQ(c.outputs, std::vector<std::string>{"g1"});
}

TEST(Parse, RoundTrip) {
  Circuit c = parse_circuit(kMixed);
  const std::string text = serialize(c);
  Circuit again = parse_circuit(text);
  EXPECT_EQ(again, c);
  EXPECT_EQ(serialize(again), text);
}

TEST(Parse, RoundTripRandomAndPayout) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Circuit c = testsupport::random_circuit(rng, 3, 8);
    const std::string text = serialize(c);
    EXPECT_EQ(serialize(parse_circuit(text)), text);
  }
  Circuit p = compile_reduction1_payoff(parse_circuit(kMixed), 2, 1, 2);
  EXPECT_EQ(parse_circuit(serialize(p)), p);
}

TEST(Parse, UnknownGateKind) {
  try {
    parse_circuit("circuit c\ninputs x1 x2\ngate g1 = XOR x1 x2\noutputs g1\n", "bad.cir");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.cir:3"), std::string::npos);
  }
}

TEST(Parse, DuplicateAndUndefined) {
  EXPECT_THROW(parse_circuit("circuit c\ninputs x1 x1\noutputs x1\n"), ParseError);
  EXPECT_THROW(parse_circuit("circuit c\ninputs x1\ngate g1 = NOT x1\ngate g1 = NOT x1\noutputs g1\n"),
               ParseError);
  try {
    parse_circuit("circuit c\ninputs x1\ngate g1 = AND x1 y\noutputs g1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Parse, CommentsAndForwardReferences) {
  Circuit c = parse_circuit(
      "# header\ncircuit c\ninputs x1\ngate g2 = NOT g1  # forward\ngate g1 = NOT x1\noutputs g2\n");
  EXPECT_EQ(eval(c, std::vector<std::uint8_t>{1}), std::vector<std::uint8_t>{1});
}

TEST(Payout, DecodeAndZeroDenominator) {
  PayoutLayout layout{2, 2};
  // sign=1, num=3, den=2
  EXPECT_EQ(decode_payout(layout, std::vector<std::uint8_t>{1, 1, 1, 0, 1}), Rational(-3, 2));
  EXPECT_THROW(decode_payout(layout, std::vector<std::uint8_t>{0, 1, 0, 0, 0}), InvalidInput);
  EXPECT_THROW(decode_payout(layout, std::vector<std::uint8_t>{0, 1}), InvalidInput);
}

// --- combinators, exhaustive sweeps ---------------------------------------

namespace {

struct Harness {
  CircuitBuilder b{"t"};
  Bits x, y;
  Harness(int wx, int wy) {
    for (int k = 0; k < wx; ++k) x.push_back(b.input("x" + std::to_string(k)));
    for (int k = 0; k < wy; ++k) y.push_back(b.input("y" + std::to_string(k)));
  }
  std::vector<std::uint8_t> run(const std::vector<Wire>& outs, std::uint64_t xv, std::uint64_t yv) const {
    Circuit c = b.build(outs);
    EXPECT_TRUE(validate(c).empty());
    auto in = bits_of(xv, x.size());
    auto yb = bits_of(yv, y.size());
    in.insert(in.end(), yb.begin(), yb.end());
    return eval(c, in);
  }
};

}  // namespace

TEST(Combinators, RippleAdd) {
  for (int wx = 1; wx <= 4; ++wx) {
    for (int wy = 1; wy <= 4; ++wy) {
      Harness h(wx, wy);
      Bits s = combinators::ripple_add(h.b, h.x, h.y);
      ASSERT_EQ(s.size(), static_cast<std::size_t>(std::max(wx, wy) + 1));
      Circuit c = h.b.build(s);
      CircuitEvaluator ev(c);
      for (std::uint64_t a = 0; a < (1u << wx); ++a) {
        for (std::uint64_t b = 0; b < (1u << wy); ++b) {
          auto in = bits_of(a, static_cast<std::size_t>(wx));
          auto bb = bits_of(b, static_cast<std::size_t>(wy));
          in.insert(in.end(), bb.begin(), bb.end());
          EXPECT_EQ(value_of(ev.eval(in), 0, s.size()), a + b);
        }
      }
    }
  }
}

TEST(Combinators, Subtract) {
  for (int w = 1; w <= 4; ++w) {
    Harness h(w, w);
    auto [diff, borrow] = combinators::subtract(h.b, h.x, h.y);
    std::vector<Wire> outs = diff;
    outs.push_back(borrow);
    CircuitEvaluator ev(h.b.build(outs));
    const std::uint64_t mod = std::uint64_t{1} << w;
    for (std::uint64_t a = 0; a < mod; ++a) {
      for (std::uint64_t b = 0; b < mod; ++b) {
        auto in = bits_of(a | (b << w), static_cast<std::size_t>(2 * w));
        auto out = ev.eval(in);
        EXPECT_EQ(value_of(out, 0, diff.size()), (a - b + mod) % mod);
        EXPECT_EQ(out.back(), a < b ? 1 : 0);
      }
    }
  }
}

TEST(Combinators, ResidueMod) {
  for (int w = 1; w <= 8; ++w) {
    for (std::uint64_t m = 1; m <= 9; ++m) {
      Harness h(w, 0);
      Bits r = combinators::residue_mod(h.b, h.x, m);
      ASSERT_EQ(r.size(), static_cast<std::size_t>(std::max(1, bits_for_count(m))));
      CircuitEvaluator ev(h.b.build(r));
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << w); ++a) {
        EXPECT_EQ(value_of(ev.eval(bits_of(a, static_cast<std::size_t>(w))), 0, r.size()), a % m)
            << "w=" << w << " m=" << m << " a=" << a;
      }
    }
  }
}

TEST(Combinators, EqualityAndMux) {
  for (int w = 1; w <= 4; ++w) {
    Harness h(w, w);
    Wire eq = combinators::equals(h.b, h.x, h.y);
    Wire eq5 = combinators::equals_const(h.b, h.x, 5);
    Bits mx = combinators::mux(h.b, h.x[0], h.x, h.y);
    std::vector<Wire> outs{eq, eq5};
    outs.insert(outs.end(), mx.begin(), mx.end());
    CircuitEvaluator ev(h.b.build(outs));
    for (std::uint64_t a = 0; a < (1u << w); ++a) {
      for (std::uint64_t b = 0; b < (1u << w); ++b) {
        auto out = ev.eval(bits_of(a | (b << w), static_cast<std::size_t>(2 * w)));
        EXPECT_EQ(out[0], a == b ? 1 : 0);
        EXPECT_EQ(out[1], a == 5 ? 1 : 0);
        EXPECT_EQ(value_of(out, 2, static_cast<std::size_t>(w)), (a & 1) ? a : b);
      }
    }
  }
}

TEST(Combinators, ConstantAndLookup) {
  for (int w = 1; w <= 8; ++w) {
    Harness h(w, 0);
    std::vector<std::uint64_t> table;
    for (std::uint64_t k = 0; k + 3 < (std::uint64_t{1} << w); ++k) table.push_back((k * 7 + 3) % 13);
    Bits t = combinators::lookup(h.b, h.x, table, 4);
    Bits c = combinators::constant(h.b, 11, 4);
    std::vector<Wire> outs = t;
    outs.insert(outs.end(), c.begin(), c.end());
    CircuitEvaluator ev(h.b.build(outs));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << w); ++a) {
      auto out = ev.eval(bits_of(a, static_cast<std::size_t>(w)));
      EXPECT_EQ(value_of(out, 0, 4), a < table.size() ? table[a] : 0);
      EXPECT_EQ(value_of(out, 4, 4), 11u);
    }
  }
}

TEST(Combinators, AllAnyOf) {
  Harness h(3, 0);
  Wire all = combinators::all_of(h.b, h.x);
  Wire any = combinators::any_of(h.b, h.x);
  CircuitEvaluator ev(h.b.build(std::vector<Wire>{all, any}));
  for (std::uint64_t a = 0; a < 8; ++a) {
    auto out = ev.eval(bits_of(a, 3));
    EXPECT_EQ(out[0], a == 7 ? 1 : 0);
    EXPECT_EQ(out[1], a != 0 ? 1 : 0);
  }
  EXPECT_EQ(bits_for_count(1), 0);
  EXPECT_EQ(bits_for_count(2), 1);
  EXPECT_EQ(bits_for_count(3), 2);
  EXPECT_EQ(bits_for_count(4), 2);
  EXPECT_EQ(bits_for_count(5), 3);
}

TEST(Builder, RejectsGateLikeInputIds) {
  CircuitBuilder b("t");
  EXPECT_THROW(b.input("g3"), InvalidInput);
}

// --- compiled payoff of the satisfiability reduction ----------------------

namespace {

// Direct formula, evaluated independently of the library:
//   (m + 1) * f(a) + ((member + sum of group actions) mod m)
std::int64_t direct_payoff(const Circuit& source, int m, int group, int member, const std::vector<int>& a) {
  const std::size_t n = source.inputs.size();
  bool f = true;
  std::vector<std::uint8_t> tau(n);
  for (std::size_t i = 0; i < n && f; ++i) {
    int v = a[i * static_cast<std::size_t>(m)];
    for (int l = 0; l < m; ++l) f = f && a[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(l)] == v;
    f = f && v <= 1;
    tau[i] = static_cast<std::uint8_t>(v);
  }
  if (f) f = testsupport::naive_eval(source, tau)[0] == 1;
  int s = member;
  for (int l = 0; l < m; ++l) s += a[static_cast<std::size_t>((group - 1) * m + l)];
  return (m + 1) * (f ? 1 : 0) + s % m;
}

std::vector<std::uint8_t> encode(const std::vector<int>& a, int m) {
  const int w = bits_for_count(static_cast<std::uint64_t>(m));
  std::vector<std::uint8_t> out;
  for (int v : a) {
    for (int k = 0; k < w; ++k) out.push_back(static_cast<std::uint8_t>((v >> k) & 1));
  }
  return out;
}

void check_exhaustive(const Circuit& source, int m) {
  const std::size_t players = source.inputs.size() * static_cast<std::size_t>(m);
  const std::vector<int> counts(players, m);
  for (int g = 1; g <= static_cast<int>(source.inputs.size()); ++g) {
    for (int l = 1; l <= m; ++l) {
      Circuit c = compile_reduction1_payoff(source, m, g, l);
      ASSERT_TRUE(validate(c).empty());
      ASSERT_TRUE(c.payout.has_value());
      CircuitEvaluator ev(c);
      for (const auto& a : testsupport::all_profiles(counts)) {
        Rational got = decode_payout(*c.payout, ev.eval(encode(a, m)));
        ASSERT_EQ(got, Rational(direct_payoff(source, m, g, l, a))) << "group " << g << " member " << l;
      }
    }
  }
}

}  // namespace

TEST(ReductionPayoff, IdentitySourceExamples) {
  auto x1 = make_circuit("x1", {"x1"}, {}, {"x1"});
  Circuit c = compile_reduction1_payoff(x1, 2, 1, 1);
  ASSERT_EQ(c.payout->den_bits, 1);
  CircuitEvaluator ev(c);
  auto out = ev.eval(encode({1, 1}, 2));
  EXPECT_EQ(decode_payout(*c.payout, out), Rational(4));
  EXPECT_EQ(out.back(), 1);  // denominator 1
  EXPECT_EQ(decode_payout(*c.payout, ev.eval(encode({0, 0}, 2))), Rational(1));
}

TEST(ReductionPayoff, UnsatisfiableSourceNeverPaysGlobalTerm) {
  auto contradiction = make_circuit("u", {"x1"}, {{"g1", GateKind::Not, {"x1"}}, {"g2", GateKind::And, {"x1", "g1"}}},
                                    {"g2"});
  for (int m = 2; m <= 4; ++m) {
    Circuit c = compile_reduction1_payoff(contradiction, m, 1, 1);
    CircuitEvaluator ev(c);
    for (const auto& a : testsupport::all_profiles(std::vector<int>(static_cast<std::size_t>(m), m))) {
      EXPECT_LE(decode_payout(*c.payout, ev.eval(encode(a, m))), Rational(m - 1));
    }
  }
  check_exhaustive(contradiction, 2);
}

TEST(ReductionPayoff, MatchesDirectFormulaExhaustively) {
  auto x1 = make_circuit("x1", {"x1"}, {}, {"x1"});
  auto and2 = make_circuit("and2", {"x1", "x2"}, {{"g1", GateKind::And, {"x1", "x2"}}}, {"g1"});
  check_exhaustive(x1, 2);
  check_exhaustive(x1, 3);
  check_exhaustive(x1, 4);
  check_exhaustive(and2, 2);
  check_exhaustive(and2, 3);
  check_exhaustive(parse_circuit(kMixed), 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3; ++t) check_exhaustive(testsupport::random_circuit(rng, 2, 5), 4);
}

TEST(ReductionPayoff, IndexErrors) {
  auto x1 = make_circuit("x1", {"x1"}, {}, {"x1"});
  EXPECT_THROW(compile_reduction1_payoff(x1, 2, 2, 1), InvalidInput);
  EXPECT_THROW(compile_reduction1_payoff(x1, 2, 1, 3), InvalidInput);
  EXPECT_THROW(compile_reduction1_payoff(x1, 1, 1, 1), InvalidInput);
  EXPECT_THROW(compile_reduction1_payoff(x1, 2, 0, 1), InvalidInput);
}
