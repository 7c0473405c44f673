#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "psqm/bits.hpp"
#include "psqm/rng.hpp"

using psqm::BitString;

TEST(BitString, RoundTripsText) {
  const auto b = BitString::from_string("01101");
  EXPECT_EQ(b.size(), 5U);
  EXPECT_EQ(b.to_string(), "01101");
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 1);
}

TEST(BitString, IndexIsBigEndian) {
  EXPECT_EQ(BitString::from_string("100").to_index(), 4U);
  EXPECT_EQ(BitString::from_string("001").to_index(), 1U);
  EXPECT_EQ(BitString::from_index(6, 4).to_string(), "0110");
}

TEST(BitString, IndexRoundTripProperty) {
  oracle::Gen gen(11);
  for (int t = 0; t < 500; ++t) {
    const auto w = static_cast<std::size_t>(1 + gen.below(40));
    const auto s = gen.bits(w);
    const auto b = BitString::from_string(s);
    EXPECT_EQ(BitString::from_index(b.to_index(), w), b);
  }
}

TEST(BitString, RejectsBadInput) {
  EXPECT_THROW(BitString::from_string("01x"), std::invalid_argument);
  EXPECT_THROW(BitString::from_index(4, 2), std::invalid_argument);
  EXPECT_THROW(BitString::from_string("0") ^ BitString::from_string("01"), std::invalid_argument);
  EXPECT_THROW(BitString::from_string("0101").slice(3, 2), std::out_of_range);
}

TEST(BitString, XorWeightAndDistance) {
  const auto a = BitString::from_string("1100");
  const auto b = BitString::from_string("1010");
  EXPECT_EQ((a ^ b).to_string(), "0110");
  EXPECT_EQ(a.weight(), 2);
  EXPECT_EQ(a.parity(), 0);
  EXPECT_EQ(psqm::hamming_distance(a, b), 2);
}

TEST(BitString, SliceAndConcat) {
  const auto a = BitString::from_string("110010");
  EXPECT_EQ(a.slice(2, 3).to_string(), "001");
  EXPECT_EQ(a.slice(0, 2).concat(a.slice(2, 4)), a);
}

TEST(InputTuple, ParsesAndFormats) {
  const auto t = psqm::parse_inputs("00,01,11");
  ASSERT_EQ(t.size(), 3U);
  EXPECT_EQ(t[2].to_string(), "11");
  EXPECT_EQ(psqm::format_inputs(t), "00,01,11");
}

TEST(Rng, SameSeedSameStream) {
  psqm::Rng a(42);
  psqm::Rng b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.below(1000), b.below(1000));
  }
}

TEST(Rng, BelowStaysInRange) {
  psqm::Rng r(3);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7U);
    ++seen[v];
  }
  for (int c : seen) {
    EXPECT_GT(c, 800);
  }
}
