#include <gtest/gtest.h>
#include <omp.h>

#include <sstream>

#include "algnet/builtins.hpp"
#include "algnet/busy_beaver.hpp"
#include "algnet/measures.hpp"
#include "support/oracles.hpp"

using namespace algnet;
using namespace algnet::measures;

namespace {

Estimator& shared() {
  static Estimator est;
  return est;
}

std::vector<Bitstring> strings_up_to(std::size_t bits) {
  std::vector<Bitstring> out;
  for (const auto& s : oracles::all_strings(bits)) out.emplace_back(s);
  return out;
}

}  // namespace

TEST(AHat, Examples) {
  auto& est = shared();
  const auto e = est.a_hat(Bitstring());
  EXPECT_EQ(e.value, 1u);
  EXPECT_TRUE(e.exact());
  EXPECT_EQ(e.witness->encoding(), Bitstring("1"));

  const auto z = est.a_hat(Bitstring("0"));
  EXPECT_EQ(z.value, 6u);
  EXPECT_EQ(z.witness->encoding(), Bitstring("010001"));
  // Nothing shorter than 6 bits outputs "0".
  for (const auto& p : machine::enumerate_programs(5))
    EXPECT_NE(machine::run(p, Bitstring(), 1000).output, Bitstring("0"));
}

TEST(AHat, WitnessesReexecute) {
  auto& est = shared();
  for (const auto& x : strings_up_to(8)) {
    const auto e = est.a_hat(x);
    if (!e.exact()) {
      EXPECT_EQ(e.value, compressed_bits(x));
      continue;
    }
    ASSERT_EQ(e.witness->length(), e.value);
    const auto v = machine::run(*e.witness, Bitstring(), e.budgets.steps);
    ASSERT_TRUE(v.halted());
    ASSERT_EQ(v.output, x);
  }
}

TEST(AHat, LiteralBound) {
  // a_hat(x) <= |x| + c_lang over every x of at most 8 bits. Exact values come
  // from at most 20-bit programs; fallbacks are zlib of at most 2 payload bytes.
  constexpr std::size_t c_lang = 86;
  auto& est = shared();
  std::size_t worst = 0;
  for (const auto& x : strings_up_to(8)) {
    const auto v = est.a_hat(x).value;
    ASSERT_LE(v, x.size() + c_lang) << x.str();
    worst = std::max(worst, v - std::min(v, x.size()));
  }
  EXPECT_EQ(worst, c_lang);
}

TEST(AHat, MatchesBruteForceMinimum) {
  // Independent minimum over all programs of at most 16 bits.
  const Budgets small{16, 2000};
  std::map<Bitstring, std::size_t> best;
  for (const auto& p : machine::enumerate_programs(16)) {
    const auto v = machine::oracle(p, Bitstring(), small.steps);
    if (v.halted() && !best.count(v.output)) best[v.output] = p.length();
  }
  for (const auto& [target, len] : best) EXPECT_EQ(estimate(target, Bitstring(), small).value, len) << target.str();
}

TEST(AHatCond, CopyConstant) {
  auto& est = shared();
  for (const auto& y : strings_up_to(8)) {
    const auto e = est.a_hat_cond(y, y);
    ASSERT_EQ(e.value, kCopyLength) << y.str();
    ASSERT_TRUE(e.exact());
  }
  EXPECT_EQ(kDefaultSlack, kCopyLength + 4);
}

TEST(AHatCond, EmptyTarget) {
  auto& est = shared();
  EXPECT_EQ(est.a_hat_cond(Bitstring(), Bitstring()).value, 1u);
  // ZERO R0: the empty program would copy the given string.
  for (const auto& x : {"0", "1", "0110"}) EXPECT_EQ(est.a_hat_cond(Bitstring(), Bitstring(x)).value, 6u);
}

TEST(AHatCond, IgnoringTheInputCostsAtMostFiveBits) {
  // Prefixing ZERO R0 to the a_hat witness adds 3 bits plus at most 2 header bits.
  auto& est = shared();
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const auto y = Bitstring::from_natural(i), x = Bitstring::from_natural(j);
      const auto plain = est.a_hat(y);
      const auto cond = est.a_hat_cond(y, x);
      if (!plain.exact() || plain.value + 5 > est.budgets().bits) continue;
      ASSERT_TRUE(cond.exact());
      ASSERT_LE(cond.value, plain.value + 5) << y.str() << " | " << x.str();
      ASSERT_EQ(machine::run(*cond.witness, x, cond.budgets.steps).output, y);
    }
}

TEST(AHatCond, SubadditivitySpotCheck) {
  // c_pair is measured on strings of at most 3 bits and checked on a disjoint
  // sample of 4- and 5-bit pairs.
  auto& est = shared();
  auto excess = [&](const Bitstring& x, const Bitstring& y) {
    return static_cast<std::int64_t>(est.a_hat(machine::concat_selfdelim({x, y})).value) -
           static_cast<std::int64_t>(est.a_hat(x).value) - static_cast<std::int64_t>(est.a_hat(y).value);
  };
  std::int64_t c_pair = 0;
  for (const auto& x : strings_up_to(3))
    for (const auto& y : strings_up_to(3)) c_pair = std::max(c_pair, excess(x, y));
  EXPECT_EQ(c_pair, 86);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto x = Bitstring::from_natural(15 + rng() % 48);
    const auto y = Bitstring::from_natural(15 + rng() % 48);
    ASSERT_LE(excess(x, y), c_pair) << x.str() << " " << y.str();
  }
}

TEST(AHat, UnreachableTargetsFallBackWithoutSearch) {
  const Budgets b{20, 100};
  const Bitstring big = Bitstring::from_natural(1000);
  const auto e = estimate(big, Bitstring(), b);
  EXPECT_FALSE(e.exact());
  EXPECT_EQ(e.value, compressed_bits(big));
  EXPECT_GT(compressed_bits(Bitstring(std::string(64, '1'))), compressed_bits(Bitstring()));
}

TEST(AHat, StableAcrossThreadCounts) {
  const auto targets = strings_up_to(4);
  std::vector<std::size_t> a, b;
  omp_set_num_threads(1);
  {
    Estimator e1;
    for (const auto& t : targets) a.push_back(e1.a_hat_cond(t, Bitstring("01")).value);
  }
  omp_set_num_threads(4);
  {
    Estimator e2;
    for (const auto& t : targets) b.push_back(e2.a_hat_cond(t, Bitstring("01")).value);
  }
  EXPECT_EQ(a, b);
}

TEST(Eac, Examples) {
  auto& est = shared();
  EXPECT_EQ(eac(Bitstring("0110"), Bitstring("0110"), est), 0);
  EXPECT_EQ(eac(Bitstring("0"), Bitstring(), est), 5);
  EXPECT_EQ(eac(Bitstring(), Bitstring("0"), est), -5);
}

TEST(LocalSynergy, Examples) {
  auto& est = shared();
  const Bitstring h("1011");
  EXPECT_EQ(local_synergy(h, h, h, est), 0);
  EXPECT_EQ(local_synergy(Bitstring("00"), Bitstring("00"), h, est), 0);
  const auto iso = Bitstring();
  EXPECT_EQ(local_synergy(h, iso, h, est),
            static_cast<std::int64_t>(est.a_hat_cond(h, iso).value) - static_cast<std::int64_t>(kCopyLength));
}

TEST(LocalSynergy, ExpectedOverPopulation) {
  auto& est = shared();
  const Bitstring h("1011");
  const std::vector<Bitstring> net(6, h), iso(6, Bitstring());
  const auto rep = expected_local_synergy(net, iso, h, est);
  EXPECT_DOUBLE_EQ(rep.mean, static_cast<double>(est.a_hat_cond(h, Bitstring()).value - kCopyLength));
  EXPECT_EQ(rep.per_node.size(), 6u);
  EXPECT_EQ(rep.slack_constant, kDefaultSlack);

  const auto single = expected_local_synergy({Bitstring("0")}, {Bitstring("0")}, h, est);
  EXPECT_EQ(single.mean, 0.0);
  EXPECT_THROW(expected_local_synergy({h}, {}, h, est), std::invalid_argument);
}

TEST(PickLabels, DefaultsWhenTheyPass) {
  auto& est = shared();
  const auto c = pick_labels(0, est, 1, Bitstring("0110"));
  EXPECT_TRUE(c.defaults);
  EXPECT_EQ(c.labels, machine::HaltLabels{});
  EXPECT_GE(c.halts_estimate.value, c.threshold);
  EXPECT_GE(c.loops_estimate.value, c.threshold);

  // Given w_min = "1", the label "1" is a copy and cannot pass.
  const auto d = pick_labels(0, est, 1);
  EXPECT_FALSE(d.defaults);
  EXPECT_NE(d.labels.halts, d.labels.loops);
}

TEST(PickLabels, LargeThresholds) {
  auto& est = shared();
  for (std::size_t x : {5u, 10u, 20u}) {
    const auto c = pick_labels(x, est, 7);
    EXPECT_EQ(c.threshold, x + kDefaultSlack);
    EXPECT_NE(c.labels.halts, c.labels.loops);
    for (const auto* label : {&c.labels.halts, &c.labels.loops}) {
      EXPECT_GE(est.a_hat_cond(*label, Bitstring("1"), {std::max<std::size_t>(20, c.threshold), 10000}).value,
                c.threshold);
      // No program within the step budget can reach a register this large.
      if (label->size() == 64) EXPECT_GT(label->to_natural(), Bitstring("1").to_natural() + 10000);
    }
    const auto again = pick_labels(x, est, 7);
    EXPECT_EQ(again.labels, c.labels);
  }
}

TEST(PickLabels, Unreachable) {
  Estimator est;
  EXPECT_THROW(pick_labels(2000, est, 1, Bitstring("1"), kDefaultSlack, 20), ThresholdUnreachable);
}

TEST(Estimator, CacheDump) {
  Estimator est({12, 500});
  est.a_hat(Bitstring("0"));
  est.a_hat(Bitstring());
  std::ostringstream os;
  est.write_cache_csv(os);
  EXPECT_EQ(os.str(), "target_bits,given_bits,value,method\n,,1,exact-enumeration\n0,,6,exact-enumeration\n");
}
