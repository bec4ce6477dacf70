#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "logfloor/numeration.hpp"
#include "oracle/interval_oracle.hpp"

using namespace logfloor;

namespace {

std::vector<Digit> digits_of(std::string_view s) {
  std::vector<Digit> out;
  for (char ch : s) out.push_back(static_cast<Digit>(ch - '0'));
  return out;
}

// Long division of p/q in base b.
std::vector<Digit> long_division(long p, long q, unsigned b, std::size_t count) {
  std::vector<Digit> out;
  for (std::size_t i = 0; i < count; ++i) {
    p *= b;
    out.push_back(static_cast<Digit>(p / q));
    p %= q;
  }
  return out;
}

}  // namespace

TEST(ToWord, Examples) {
  EXPECT_EQ(to_word(10, 2).to_string(), "1010");
  EXPECT_EQ(to_word(0, 7).to_string(), "0");
  EXPECT_EQ(to_word(85, 2).to_string(), "1010101");
  EXPECT_THROW(to_word(-1, 2), std::invalid_argument);
  EXPECT_EQ(to_word(255, 16).to_string(), "15,15");
  EXPECT_EQ(parse_word("15,15", 16), to_word(255, 16));
}

TEST(ToWord, RoundTrip) {
  for (unsigned b : {2u, 3u, 10u}) {
    for (long n = 0; n <= 100000; ++n) {
      const Word w = to_word(n, b);
      ASSERT_EQ(from_word(w, b), n);
      ASSERT_EQ(w.size(), expansion_length(n, b));
      if (n > 0) ASSERT_NE(w[0], 0u);
    }
  }
}

TEST(FromWord, Examples) {
  EXPECT_EQ(from_word(GeneralWord{3, digits_of("1002")}, 2), 10);
  EXPECT_EQ(from_word(GeneralWord{2, digits_of("0")}, 5), 0);
  EXPECT_EQ(from_word(GeneralWord{4, {1, 3}}, 2), 5);
}

TEST(DigitStream, InverseSqrtTwo) {
  const ExactReal x = ExactReal::surd(0, BigRational(1, 2), 2);
  const std::vector<Digit> got = digit_stream(x, 2, 8);
  EXPECT_EQ(got, (std::vector<Digit>{1, 0, 1, 1, 0, 1, 0, 1}));
  oracle::Interval box(256);
  oracle::enclose(box, 0, BigRational(1, 2), 2);
  const auto ref = oracle::fraction_digits(box, 2, 200);
  ASSERT_TRUE(ref);
  const std::vector<Digit> long_run = digit_stream(x, 2, 200);
  for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(long_run[i], static_cast<Digit>((*ref)[i] - '0')) << i;
}

TEST(DigitStream, Rationals) {
  EXPECT_EQ(digit_stream(ExactReal(BigRational(1, 3)), 2, 6), (std::vector<Digit>{0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(digit_stream(ExactReal(0), 3, 5), std::vector<Digit>(5, 0));
  EXPECT_EQ(digit_stream(ExactReal(BigRational(1, 2)), 2, 4), (std::vector<Digit>{1, 0, 0, 0}));
  EXPECT_THROW(digit_stream(ExactReal(1), 2, 3), std::invalid_argument);
  EXPECT_THROW(digit_stream(ExactReal(-1), 2, 3), std::invalid_argument);
}

TEST(DigitStream, PartialSumsAndPrefixStability) {
  const ExactReal x = ExactReal::surd(BigRational(-1), 1, 3);  // sqrt(3) - 1
  for (unsigned b : {2u, 3u, 10u}) {
    DigitStream stream(x, b);
    const std::vector<Digit> first = stream.prefix(20);
    const std::vector<Digit> longer = stream.prefix(60);
    EXPECT_TRUE(std::equal(first.begin(), first.end(), longer.begin()));
    BigInt acc = 0;
    for (std::size_t k = 1; k <= 60; ++k) {
      acc = acc * b + longer[k - 1];
      const ExactReal err = x - ExactReal(BigRational(acc, ipow(b, k)));
      EXPECT_GE(err, ExactReal(0));
      EXPECT_LT(err, ExactReal(BigRational(1, ipow(b, k))));
    }
  }
}

TEST(DigitStream, RationalPeriodDividesOrder) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const unsigned b = std::vector<unsigned>{2, 3, 10}[t % 3];
    const long den = std::uniform_int_distribution<long>(2, 200)(rng);
    const long num = std::uniform_int_distribution<long>(0, den - 1)(rng);
    const std::vector<Digit> ds = digit_stream(ExactReal(BigRational(num, den)), b, 600);
    EXPECT_EQ(ds, long_division(num, den, b, 600));
    long free = den;
    for (long g = std::gcd(free, static_cast<long>(b)); g > 1; g = std::gcd(free, static_cast<long>(b))) free /= g;
    long order = 1;
    if (free > 1) {
      long pw = static_cast<long>(b) % free;
      while (pw != 1) {
        pw = pw * static_cast<long>(b) % free;
        ++order;
      }
    }
    // past the preperiod (at most 8 here) digits repeat with period `order`.
    for (std::size_t i = 40; i + static_cast<std::size_t>(order) < ds.size(); ++i) {
      ASSERT_EQ(ds[i], ds[i + static_cast<std::size_t>(order)]) << num << "/" << den << " base " << b;
    }
  }
}

TEST(DigitStream, ConcurrentReadersAgree) {
  DigitStream stream(ExactReal::surd(0, BigRational(1, 2), 2), 3);
  std::vector<std::vector<Digit>> seen(4);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    pool.emplace_back([&, i] { seen[i] = stream.prefix(50 + 10 * i); });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 1; i < seen.size(); ++i) {
    EXPECT_TRUE(std::equal(seen[0].begin(), seen[0].end(), seen[i].begin()));
  }
}

TEST(CharacteristicWord, Examples) {
  const std::vector<BigInt> s = {1, 2, 5, 11};
  EXPECT_EQ(characteristic_word(s, 6), (std::vector<std::uint8_t>{0, 1, 1, 0, 0, 1, 0}));
  EXPECT_EQ(characteristic_word(std::vector<BigInt>{}, 3), (std::vector<std::uint8_t>{0, 0, 0, 0}));
  EXPECT_EQ(characteristic_word(std::vector<BigInt>{0}, 2), (std::vector<std::uint8_t>{1, 0, 0}));
}
