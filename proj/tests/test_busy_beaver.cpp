#include <gtest/gtest.h>

#include <sstream>

#include "algnet/builtins.hpp"
#include "algnet/busy_beaver.hpp"

using namespace algnet;
using namespace algnet::machine;

namespace {

const BBTable& table24() {
  static const BBTable t = enumerate_bb(24, 100000);
  return t;
}

}  // namespace

TEST(BusyBeaver, Examples) {
  const auto t1 = enumerate_bb(1, 100);
  EXPECT_EQ(t1.at(1).value, Natural{0});
  EXPECT_EQ(t1.at(1).witness, Bitstring("1"));

  const auto t6 = enumerate_bb(6, 100);
  EXPECT_GE(t6.at(6).value, Natural{1});
  EXPECT_GE(t6.at(6).value, t6.at(1).value);
  const auto v = run(parse_program(t6.at(6).witness), Bitstring(), 100);
  EXPECT_EQ(v.output.to_natural(), t6.at(6).value);
}

TEST(BusyBeaver, KnownSmallValues) {
  // Hand-checked: no 5-bit program can increment, the 6-bit INC R0 gives 1.
  const auto& t = table24();
  EXPECT_EQ(t.at(5).value, Natural{0});
  EXPECT_EQ(t.at(6).value, Natural{1});
  EXPECT_EQ(t.at(9).value, Natural{2});
  EXPECT_EQ(t.at(24).value, Natural{6});
  EXPECT_EQ(t.resolved_through(), 24u);
}

TEST(BusyBeaver, MonotoneWithValidWitnesses) {
  const auto& t = table24();
  for (std::size_t n = 1; n <= t.max_bits(); ++n) {
    const auto& e = t.at(n);
    ASSERT_LE(e.witness.size(), n);
    if (n > 1) {
      ASSERT_GE(e.value, t.at(n - 1).value);
      ASSERT_GE(e.max_steps, t.at(n - 1).max_steps);
      ASSERT_GE(e.unknown_count, t.at(n - 1).unknown_count);
    }
    const auto v = run(parse_program(e.witness), Bitstring(), t.budget());
    ASSERT_TRUE(v.halted());
    ASSERT_EQ(v.output.to_natural(), e.value);
  }
}

TEST(BusyBeaver, MatchesDirectMaximum) {
  const auto programs = enumerate_programs(18);
  std::vector<Natural> best(19, 0);
  for (const auto& p : programs) {
    const auto v = run(p, Bitstring(), 100000);
    if (v.halted()) best[p.length()] = std::max(best[p.length()], v.output.to_natural());
  }
  Natural running = 0;
  for (std::size_t n = 1; n <= 18; ++n) {
    running = std::max(running, best[n]);
    ASSERT_EQ(table24().at(n).value, running) << n;
  }
}

TEST(BusyBeaver, SerialAndParallelAgree) {
  const auto a = enumerate_bb(18, 20000);
  const auto b = serial::enumerate_bb(18, 20000);
  std::ostringstream sa, sb;
  a.write_csv(sa);
  b.write_csv(sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(BusyBeaver, CsvRoundTrip) {
  std::ostringstream os;
  table24().write_csv(os);
  std::istringstream is("# comment\n" + os.str());
  const auto back = BBTable::read_csv(is);
  ASSERT_EQ(back.max_bits(), 24u);
  EXPECT_EQ(back.budget(), table24().budget());
  for (std::size_t n = 1; n <= 24; ++n) {
    EXPECT_EQ(back.at(n).value, table24().at(n).value);
    EXPECT_EQ(back.at(n).witness, table24().at(n).witness);
    EXPECT_EQ(back.at(n).max_steps, table24().at(n).max_steps);
  }
  std::istringstream bad("n,bb_value\n1,0\n");
  EXPECT_THROW(BBTable::read_csv(bad), std::runtime_error);
}

TEST(BusyBeaver, TimeOverheadMatchesNominalLengths) {
  const auto c = table24().time_overhead();
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, kTimeLength + kSuccessorLength);
  // Direct check of the defining inequality.
  const auto& t = table24();
  for (std::size_t l = 1; l + *c <= 24; ++l) EXPECT_GT(t.at(l + *c).value, Natural{t.at(l).max_steps}) << l;
  bool smaller_fits = true;
  for (std::size_t l = 1; l + *c - 1 <= 24; ++l)
    if (t.at(l + *c - 1).value <= Natural{t.at(l).max_steps}) smaller_fits = false;
  EXPECT_FALSE(smaller_fits);
}

TEST(BusyBeaver, HaltingWithinBusyBeaverTime) {
  // Every program p with 5 + |p| <= L <= 24 halts within BB(L) steps or never,
  // so p_halt at BB(L) classifies it exactly.
  const auto& t = table24();
  const HaltLabels labels;
  for (const auto& p : enumerate_programs(24 - successor_time_length(Program()) + 1)) {
    const auto truth = oracle(p, Bitstring(), 100000);
    ASSERT_NE(truth.kind, VerdictKind::BudgetExhausted);
    for (std::size_t L = successor_time_length(p); L <= 24; ++L) {
      const auto label = p_halt(t.at(L).value, p, labels, 100000);
      ASSERT_TRUE(label.has_value());
      ASSERT_EQ(*label, truth.halted() ? labels.halts : labels.loops) << p.disassemble() << " L=" << L;
    }
  }
}
