#include <gtest/gtest.h>

#include "battery.hpp"
#include "logfloor/errors.hpp"
#include "logfloor/fk.hpp"

using namespace logfloor;

namespace {

NormalizedInstance make(const char* alpha, const char* beta, unsigned base) {
  return normalize({parse_exact_real(alpha), parse_exact_real(beta), base});
}

std::vector<BigInt> slice(const LevelCounts& lc, std::int64_t from, std::int64_t to) {
  std::vector<BigInt> out;
  for (std::int64_t k = from; k <= to; ++k) out.push_back(lc.at(k));
  return out;
}

std::vector<BigInt> big(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(FCounts, Examples) {
  EXPECT_EQ(slice(f_counts(make("sqrt(2)", "0", 2), 10), 0, 4), big({1, 1, 3, 6, 11}));
  EXPECT_EQ(slice(f_counts(make("1", "0", 2), 10), 0, 3), big({1, 2, 4, 8}));
  EXPECT_EQ(slice(f_counts(make("3/2", "0", 2), 10), 0, 3), big({1, 1, 3, 5}));
}

TEST(FCounts, BruteForceCounts) {
  // sqrt(2): 2^(2k) <= 2 n^2 < 2^(2k+2). 3/2: 2^(k+1) <= 3n < 2^(k+2).
  const LevelCounts s2 = f_counts(make("sqrt(2)", "0", 2), 40);
  const LevelCounts q = f_counts(make("3/2", "0", 2), 40);
  std::vector<long> s2_ref(20, 0), q_ref(20, 0);
  for (long n = 1; n < (1L << 19); ++n) {
    for (int k = 0; k < 20; ++k) {
      const BigInt two_n2 = BigInt(2) * n * n;
      if (two_n2 >= (BigInt(1) << (2 * k)) && two_n2 < (BigInt(1) << (2 * k + 2))) ++s2_ref[k];
      if (3 * n >= (1L << (k + 1)) && 3 * n < (1L << (k + 2))) ++q_ref[k];
    }
  }
  for (int k = 0; k < 18; ++k) {
    EXPECT_EQ(s2.at(k), s2_ref[k]) << k;
    EXPECT_EQ(q.at(k), q_ref[k]) << k;
  }
}

TEST(FCounts, NegativeLevels) {
  const LevelCounts lc = f_counts(make("1/10", "1/100", 10), 4);
  EXPECT_EQ(lc.k_min, -2);
  // u_0 = -2 (1/100); n = 1..9 give -1; n = 10..99 give 0.
  EXPECT_EQ(slice(lc, -2, 0), big({1, 9, 90}));
}

TEST(FCounts, Conservation) {
  for (const battery::Case& bc : battery::kCases) {
    const NormalizedInstance norm = normalize(battery::instance(bc));
    const LevelCounts lc = f_counts(norm, 60);
    BigInt sum = 0;
    for (std::int64_t k = lc.k_min; k <= lc.k_max; ++k) {
      sum += lc.at(k);
      EXPECT_EQ(sum, last_index_at_level(norm, k) - norm.domain_start + 1) << battery::label(bc) << " k=" << k;
    }
    EXPECT_GE(lc.enumerated_to, 1) << battery::label(bc);
  }
}

TEST(Align, Examples) {
  for (const char* alpha : {"sqrt(2)", "3/2", "1"}) {
    const NormalizedInstance norm = make(alpha, "0", 2);
    const LevelCounts lc = f_counts(norm, 60);
    const JumpData jd = c_seq(norm, 80, 0);
    const auto al = align_m0(lc, jd);
    ASSERT_TRUE(al) << alpha;
    EXPECT_EQ(al->m0, 0) << alpha;
    EXPECT_EQ(al->aligned_from, 1) << alpha;
  }
  const JumpData jd = c_seq(make("sqrt(2)", "0", 2), 5, 0);
  EXPECT_EQ(jd.c, big({1, 2, 5, 11, 22}));
  const LevelCounts lc = f_counts(make("sqrt(2)", "0", 2), 4);
  EXPECT_EQ(lc.at(1), jd.c[1] - jd.c[0]);
  EXPECT_EQ(lc.at(2), jd.c[2] - jd.c[1]);
  EXPECT_EQ(lc.at(3), jd.c[3] - jd.c[2]);
}

TEST(DSeq, Examples) {
  const NormalizedInstance s2 = make("sqrt(2)", "0", 2);
  const LevelCounts lc = f_counts(s2, 30);
  const DSequence d = d_seq(lc, s2, align_m0(lc, c_seq(s2, 50, 0)));
  EXPECT_EQ(d.at(1), 1);
  EXPECT_EQ(d.at(2), 0);
  EXPECT_EQ(d.at(3), -1);
  const std::vector<std::int64_t> r = r_direct_range(s2, 1, 5);
  EXPECT_EQ(d.at(1), r[1] - r[0]);
  EXPECT_EQ(d.at(3), r[3] - r[2]);
  EXPECT_GT(d.cross_checked, 20u);

  const NormalizedInstance one = make("1", "0", 2);
  const LevelCounts lc1 = f_counts(one, 30);
  const DSequence d1 = d_seq(lc1, one, align_m0(lc1, c_seq(one, 50, 0)));
  for (const BigInt& x : d1.d) EXPECT_EQ(x, 0);

  const NormalizedInstance q = make("3/2", "0", 2);
  const LevelCounts lcq = f_counts(q, 30);
  const DSequence dq = d_seq(lcq, q, align_m0(lcq, c_seq(q, 50, 0)));
  for (std::int64_t k = 1; k + 2 < 30; ++k) EXPECT_EQ(dq.at(k), dq.at(k + 2));
  EXPECT_NE(dq.at(1), dq.at(2));
}

TEST(Identities, BatteryTails) {
  for (const battery::Case& bc : battery::kCases) {
    const NormalizedInstance norm = normalize(battery::instance(bc));
    const LevelCounts lc = f_counts(norm, 200);
    const JumpData jd = c_seq(norm, 220, 0);
    const auto al = align_m0(lc, jd);
    ASSERT_TRUE(al) << battery::label(bc);
    for (std::int64_t k = al->aligned_from; k <= al->aligned_to; ++k) {
      ASSERT_EQ(lc.at(k), jd.c[static_cast<std::size_t>(k + al->m0)] - jd.c[static_cast<std::size_t>(k + al->m0 - 1)]);
    }
    EXPECT_GE(al->aligned_to - al->aligned_from, 150) << battery::label(bc);
    const DSequence d = d_seq(lc, norm, al);
    const std::vector<std::int64_t> r = r_direct_range(norm, 1, 220);
    auto r_at = [&](std::int64_t k) { return r[static_cast<std::size_t>(k - 1)]; };
    BigInt running = r_at(al->aligned_from + al->m0);
    for (std::int64_t k = al->aligned_from; k < al->aligned_to; ++k) {
      ASSERT_EQ(d.at(k), r_at(k + al->m0 + 1) - r_at(k + al->m0)) << battery::label(bc) << " k=" << k;
      running += d.at(k);
      ASSERT_EQ(running, r_at(k + al->m0 + 1));
    }
  }
}

TEST(DPeriodicity, Examples) {
  const PeriodicityVerdict q = decide_d_periodicity(make("3/2", "0", 2), 200);
  ASSERT_EQ(q.kind, PeriodicityVerdict::Kind::Periodic);
  EXPECT_EQ(q.period.period, 2);
  EXPECT_TRUE(q.certified);
  EXPECT_EQ(decide_d_periodicity(make("sqrt(2)", "0", 2), 200).kind, PeriodicityVerdict::Kind::AperiodicByTheorem);
  const PeriodicityVerdict one = decide_d_periodicity(make("1", "0", 2), 100);
  ASSERT_EQ(one.kind, PeriodicityVerdict::Kind::Periodic);
  EXPECT_EQ(one.period.period, 1);
  ASSERT_TRUE(one.certificate);
  for (std::int64_t x : one.certificate->block) EXPECT_EQ(x, 0);
}

TEST(DPeriodicity, RationalExactlyOnBattery) {
  for (const battery::Case& bc : battery::kCases) {
    const NormalizedInstance norm = normalize(battery::instance(bc));
    const PeriodicityVerdict v = decide_d_periodicity(norm, 200);
    EXPECT_EQ(v.kind == PeriodicityVerdict::Kind::Periodic, norm.alpha.is_rational()) << battery::label(bc);
    EXPECT_NE(v.kind, PeriodicityVerdict::Kind::Inconclusive) << battery::label(bc);
  }
}
