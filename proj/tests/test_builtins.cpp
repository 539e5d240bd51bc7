#include <gtest/gtest.h>

#include <random>

#include "algnet/builtins.hpp"
#include "algnet/busy_beaver.hpp"

using namespace algnet;
using namespace algnet::machine;

TEST(PHalt, Examples) {
  const HaltLabels labels;
  EXPECT_EQ(p_halt(100, Program(), labels, 1000), labels.halts);
  EXPECT_EQ(p_halt(0, parse_program(Bitstring("010001")), labels, 1000), labels.loops);
  EXPECT_EQ(p_halt(1, parse_program(Bitstring("010001")), labels, 1000), labels.halts);
}

TEST(PHalt, RawInputAndMalformed) {
  const HaltLabels labels{Bitstring("1011"), Bitstring("0100")};
  const auto inc = parse_program(Bitstring("010001"));
  EXPECT_EQ(p_halt(halt_input(5, inc.encoding()), labels, 1000), labels.halts);
  EXPECT_EQ(p_halt(Bitstring("0"), labels, 1000), labels.loops);
  EXPECT_EQ(p_halt(halt_input(5, Bitstring("0100")), labels, 1000), labels.loops);
  // Trailing bits after the program are not a valid input.
  EXPECT_EQ(p_halt(halt_input(5, inc.encoding() + Bitstring("1")), labels, 1000), labels.loops);
}

TEST(PHalt, BudgetCap) {
  const Program slow(std::vector<Instruction>(20, Instruction::inc(0)));
  const HaltLabels labels;
  EXPECT_FALSE(p_halt(1000, slow, labels, 10).has_value());
  EXPECT_EQ(p_halt(5, slow, labels, 10), labels.loops);
  EXPECT_EQ(p_halt(1000, slow, labels, 100), labels.halts);
  // A proven loop needs no cap.
  const Program loop({Instruction::decjz(0, 1), Instruction::jmpback(1)});
  EXPECT_EQ(p_halt(1000, loop, labels, 10), labels.loops);
}

TEST(PHalt, ThresholdIsExactHaltingTime) {
  // p_halt(n, p) is h exactly when T(U, p) <= n.
  const HaltLabels labels;
  for (const auto& p : enumerate_programs(16)) {
    const auto v = run(p, Bitstring(), 200);
    if (!v.halted()) continue;
    ASSERT_EQ(p_halt(v.steps, p, labels, 1000), labels.halts);
    if (v.steps > 0) ASSERT_EQ(p_halt(v.steps - 1, p, labels, 1000), labels.loops);
  }
}

TEST(Builtins, TimeAndSuccessor) {
  const Program p({Instruction::inc(0), Instruction::inc(0), Instruction::inc(1)});
  const auto t = apply_time(p, 100);
  ASSERT_TRUE(t.halted());
  EXPECT_EQ(t.output.to_natural(), Natural{3});
  EXPECT_EQ(apply_successor(t).output.to_natural(), Natural{4});
  EXPECT_EQ(successor_time_length(p), kTimeLength + kSuccessorLength + p.length());

  const Program loop({Instruction::decjz(0, 1), Instruction::jmpback(1)});
  EXPECT_FALSE(apply_time(loop, 100).halted());
  EXPECT_FALSE(apply_successor(apply_time(loop, 100)).halted());
}

TEST(Builtins, Names) {
  for (auto b : {Builtin::Time, Builtin::Successor, Builtin::Halt, Builtin::Identity})
    EXPECT_EQ(builtin_from_string(to_string(b)), b);
  EXPECT_FALSE(builtin_from_string("nope").has_value());
  EXPECT_EQ(nominal_length(Builtin::Halt), kHaltLength);
}

TEST(FinalProgram, Evaluate) {
  const HaltLabels labels;
  EXPECT_EQ(evaluate_final(FinalProgram::identity(), 5, Bitstring("1"), labels, 100), Bitstring::from_natural(5));
  EXPECT_EQ(evaluate_final(FinalProgram::halt(), 100, Program().encoding(), labels, 1000), labels.halts);
  EXPECT_EQ(evaluate_final(FinalProgram::halt(), 0, Bitstring("010001"), labels, 1000), labels.loops);
  // The empty program as s returns its whole input gamma(x + 1) w.
  const auto out = evaluate_final(FinalProgram::program(Program()), 2, Bitstring("1"), labels, 10);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, algnet::gamma(3) + Bitstring("1"));
}

TEST(Concat, Examples) {
  EXPECT_EQ(concat_selfdelim({Bitstring()}).str(), "1");
  EXPECT_EQ(concat_selfdelim({Bitstring("0")}).str(), "0100");
  EXPECT_THROW(split_selfdelim(Bitstring("011")), MalformedEncoding);
  EXPECT_THROW(split_selfdelim(Bitstring("0")), MalformedEncoding);
}

TEST(Concat, RandomRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Bitstring> parts(rng() % 5);
    for (auto& p : parts) {
      const auto len = rng() % 40;
      for (std::size_t k = 0; k < len; ++k) p.push_back(rng() & 1);
    }
    ASSERT_EQ(split_selfdelim(concat_selfdelim(parts)), parts);
  }
}
