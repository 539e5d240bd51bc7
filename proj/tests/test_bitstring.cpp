#include <gtest/gtest.h>

#include "algnet/bitstring.hpp"
#include "support/oracles.hpp"

using algnet::BitReader;
using algnet::Bitstring;
using algnet::Natural;

TEST(Bitstring, BijectionSmallValues) {
  EXPECT_EQ(Bitstring::from_natural(0).str(), "");
  EXPECT_EQ(Bitstring::from_natural(1).str(), "0");
  EXPECT_EQ(Bitstring::from_natural(2).str(), "1");
  EXPECT_EQ(Bitstring::from_natural(3).str(), "00");
  EXPECT_EQ(Bitstring::from_natural(6).str(), "11");
  EXPECT_EQ(Bitstring::from_natural(7).str(), "000");
}

TEST(Bitstring, BijectionMatchesEnumerationOrder) {
  // The i-th string in (length, lex) order is string(i).
  const auto all = oracles::all_strings(12);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Bitstring b(all[i]);
    ASSERT_EQ(b.to_natural(), static_cast<Natural>(i)) << all[i];
    ASSERT_EQ(Bitstring::from_natural(i), b);
    if (i) ASSERT_LT(Bitstring(all[i - 1]), b);
  }
}

TEST(Bitstring, WideRoundTrip) {
  const Natural big = (Natural{1} << 100) + 12345;
  EXPECT_EQ(Bitstring::from_natural(big).to_natural(), big);
  EXPECT_EQ(algnet::parse_natural(algnet::to_decimal(big)), big);
  EXPECT_EQ(algnet::to_decimal(0), "0");
}

TEST(Bitstring, GammaCode) {
  EXPECT_EQ(algnet::gamma(1).str(), "1");
  EXPECT_EQ(algnet::gamma(2).str(), "010");
  EXPECT_EQ(algnet::gamma(3).str(), "011");
  EXPECT_EQ(algnet::gamma(4).str(), "00100");
  for (std::uint64_t n = 1; n < 5000; ++n) {
    const auto g = algnet::gamma(n);
    std::size_t pos = 0;
    ASSERT_EQ(oracles::ref_gamma(g.str(), pos), n);
    ASSERT_EQ(pos, g.size());
    BitReader r(g);
    std::uint64_t v = 0;
    ASSERT_TRUE(r.read_gamma(v));
    ASSERT_EQ(v, n);
    ASSERT_TRUE(r.exhausted());
  }
}

TEST(Bitstring, GammaWideAndTruncation) {
  Bitstring b;
  const Natural big = (Natural{1} << 90) + 7;
  algnet::append_gamma_wide(b, big);
  BitReader r(b);
  Natural v = 0;
  ASSERT_TRUE(r.read_gamma_wide(v));
  EXPECT_EQ(v, big);

  const auto g = algnet::gamma(9);
  BitReader t(g.substr(0, g.size() - 1));
  std::uint64_t out = 0;
  EXPECT_FALSE(t.read_gamma(out));
}

TEST(Bitstring, PrefixAndDisplay) {
  EXPECT_TRUE(Bitstring("01").is_prefix_of(Bitstring("0110")));
  EXPECT_FALSE(Bitstring("11").is_prefix_of(Bitstring("0110")));
  EXPECT_TRUE(Bitstring().is_prefix_of(Bitstring("1")));
  EXPECT_EQ(Bitstring().display(), "eps");
  EXPECT_THROW(Bitstring("012"), std::invalid_argument);
}
