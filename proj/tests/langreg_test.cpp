#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "logfloor/errors.hpp"
#include "logfloor/langreg.hpp"

using namespace logfloor;

namespace {

NormalizedInstance make(const char* alpha, const char* beta, unsigned base) {
  return normalize({parse_exact_real(alpha), parse_exact_real(beta), base});
}

GeneralWord gw(unsigned bound, std::initializer_list<Digit> ds) { return GeneralWord{bound, ds}; }

DigitSource thue_morse() { return DigitSource::thue_morse_blocks(gw(3, {1, 0}), gw(3, {0, 2})); }

std::vector<std::string> rendered(const LanguageWords& lw) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n < lw.size(); ++n) out.push_back(lw.word(n).to_string());
  return out;
}

// Thue-Morse block digits written out directly: block j is "10" when the
// popcount of j is even, "02" otherwise.
std::vector<Digit> tm_digits(std::size_t count) {
  std::vector<Digit> out;
  for (unsigned j = 0; out.size() < count; ++j) {
    const bool even = std::popcount(j) % 2 == 0;
    out.push_back(even ? 1 : 0);
    out.push_back(even ? 0 : 2);
  }
  out.resize(count);
  return out;
}

DigitSource random_periodic(std::mt19937_64& rng, unsigned base) {
  const unsigned bound = 2 * base - 1;
  std::uniform_int_distribution<Digit> digit(0, bound - 1);
  GeneralWord pre{bound, {}}, period{bound, {}};
  const std::size_t pre_len = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
  const std::size_t per_len = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  for (std::size_t i = 0; i < pre_len; ++i) pre.digits.push_back(digit(rng));
  for (std::size_t i = 0; i < per_len; ++i) period.digits.push_back(digit(rng));
  Digit& lead = pre.digits.empty() ? period.digits.front() : pre.digits.front();
  if (lead == 0) lead = 1;
  return DigitSource::periodic(pre, period);
}

}  // namespace

TEST(Words, ThueMorseBlocks) {
  const LanguageWords lw = words(thue_morse(), 2, 6);
  EXPECT_EQ(lw.values, (std::vector<BigInt>{1, 2, 4, 10, 20, 42, 85}));
  EXPECT_EQ(rendered(lw),
            (std::vector<std::string>{"1", "10", "100", "1010", "10100", "101010", "1010101"}));
  const std::vector<BigInt> emitted = thue_morse().emit(16);
  const std::vector<Digit> ref = tm_digits(16);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(emitted[i], ref[i]);
}

TEST(Words, ExplicitAndRational) {
  const LanguageWords one = words(DigitSource::explicit_word(gw(5, {1})), 5, 10);
  EXPECT_EQ(rendered(one), std::vector<std::string>{"1"});
  const LanguageWords q = words(DigitSource::from_rk(make("3/2", "0", 2)), 2, 4);
  EXPECT_EQ(rendered(q), (std::vector<std::string>{"1", "10", "101", "1010", "10101"}));
}

TEST(Words, FromRkGivesJumpPositions) {
  for (const char* alpha : {"sqrt(2)", "3/2", "1/2+1/2*sqrt(5)"}) {
    for (unsigned b : {2u, 3u, 10u}) {
      const NormalizedInstance norm = make(alpha, "1/3", b);
      const LanguageWords lw = words(DigitSource::from_rk(norm), b, 60);
      const JumpData jd = c_seq(norm, 61, 0);
      for (std::size_t n = 0; n < lw.size(); ++n) ASSERT_EQ(lw.values[n], jd.c[n]) << alpha << " b=" << b;
    }
  }
}

TEST(Words, HornerInvariant) {
  std::mt19937_64 rng(8);
  std::vector<DigitSource> sources = {thue_morse(), DigitSource::from_rk(make("sqrt(3)", "1/3", 10))};
  for (int i = 0; i < 5; ++i) sources.push_back(random_periodic(rng, 3));
  for (const DigitSource& src : sources) {
    const LanguageWords lw = words(src, src.kind() == DigitSource::Kind::FromRk ? 10 : (src.bound() + 1) / 2, 200);
    const std::vector<BigInt> u = src.emit(lw.size());
    for (std::size_t n = 0; n + 1 < lw.size(); ++n) {
      ASSERT_EQ(lw.values[n + 1], lw.values[n] * lw.base + u[n + 1]) << src.describe();
      ASSERT_EQ(lw.lengths[n], expansion_length(lw.values[n], lw.base));
    }
  }
}

TEST(Words, LeadingZeroConvention) {
  EXPECT_THROW(words(DigitSource::explicit_word(gw(2, {0, 1})), 2, 3), std::invalid_argument);
  const LanguageWords lw = words(DigitSource::explicit_word(gw(2, {0, 1}), true), 2, 3);
  EXPECT_EQ(rendered(lw), (std::vector<std::string>{"0", "1"}));
}

TEST(LengthClaim, Examples) {
  LanguageWords tm = words(thue_morse(), 2, 500);
  const LengthClaimReport a = verify_length_claim(tm);
  EXPECT_EQ(a.n, 0u);
  EXPECT_TRUE(a.jumps.empty());
  LanguageWords q = words(DigitSource::from_rk(make("3/2", "0", 2)), 2, 500);
  EXPECT_EQ(verify_length_claim(q).n, 0u);
  LanguageWords one = words(DigitSource::explicit_word(gw(2, {1})), 2, 5);
  const LengthClaimReport v = verify_length_claim(one);
  EXPECT_EQ(v.n, 0u);
  EXPECT_TRUE(v.stabilized);
}

TEST(LengthClaim, OneWordPerLengthAfterN) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const unsigned b = 2 + t % 3;
    const DigitSource src = random_periodic(rng, b);
    LanguageWords lw = words(src, b, 400);
    const LengthClaimReport r = verify_length_claim(lw);
    EXPECT_TRUE(r.late_jumps.empty()) << src.describe();
    EXPECT_TRUE(r.stabilized) << src.describe();
    std::map<std::size_t, int> per_length;
    for (std::size_t n = r.n; n < lw.size(); ++n) ++per_length[lw.lengths[n]];
    for (const auto& [len, count] : per_length) EXPECT_EQ(count, 1) << src.describe() << " length " << len;
  }
}

TEST(FindPattern, RationalExamples) {
  const LanguageWords lw = words(DigitSource::from_rk(make("3/2", "0", 2)), 2, 100);
  const auto c0 = find_pattern(lw, 2, 0);
  ASSERT_TRUE(c0);
  EXPECT_EQ(c0->v0.to_string(), "1");
  EXPECT_EQ(c0->v1.to_string(), "01");
  EXPECT_TRUE(c0->v2.empty());
  EXPECT_EQ(c0->n0, 0u);
  const auto c1 = find_pattern(lw, 2, 1);
  ASSERT_TRUE(c1);
  EXPECT_EQ(c1->v0.to_string(), "1");
  EXPECT_EQ(c1->v1.to_string(), "01");
  EXPECT_EQ(c1->v2.to_string(), "0");
  EXPECT_THROW(find_pattern(lw, 2, 2), std::invalid_argument);
}

TEST(FindPattern, ThueMorseOddClassIsPeriodic) {
  // [10]_2 = [02]_2 = 2, so w_{2j+1} = 2 (4^{j+1} - 1) / 3 = ((10)^{j+1})_2 for
  // every block sequence; the odd residue classes carry no Thue-Morse
  // information and do admit a pattern.
  const LanguageWords lw = words(thue_morse(), 2, 999);
  for (std::size_t j = 0; 2 * j + 1 < lw.size(); ++j) {
    ASSERT_EQ(lw.values[2 * j + 1], (BigInt(4) * ipow(4, j) - 1) * 2 / 3) << j;
  }
  const auto odd = find_pattern(lw, 2, 1);
  ASSERT_TRUE(odd);
  EXPECT_EQ(odd->v0.to_string(), "1");
  EXPECT_EQ(odd->v1.to_string(), "01");
  EXPECT_EQ(odd->v2.to_string(), "0");
  EXPECT_FALSE(find_pattern(lw, 1, 0));
  EXPECT_FALSE(find_pattern(lw, 2, 0));
  // The even class ends in the Thue-Morse bit of its block.
  for (std::size_t j = 0; 2 * j < lw.size(); ++j) {
    const bool even = std::popcount(static_cast<unsigned>(j)) % 2 == 0;
    ASSERT_EQ(BigInt(lw.values[2 * j] % 2), even ? 1 : 0) << j;
  }
}

TEST(CertifyPattern, RationalExamples) {
  const DigitSource src = DigitSource::from_rk(make("3/2", "0", 2));
  const LanguageWords lw = words(src, 2, 100);
  const Certification c0 = certify_pattern(src, lw, *find_pattern(lw, 2, 0));
  ASSERT_TRUE(c0.certified()) << c0.detail;
  EXPECT_EQ(c0.pattern->constant, 1);
  // [V1 V2]_2 - 4 [V2]_2 with V1 = 01, V2 = empty
  EXPECT_EQ(from_word(parse_word("01", 2), 2) - 4 * 0, 1);
  const Certification c1 = certify_pattern(src, lw, *find_pattern(lw, 2, 1));
  ASSERT_TRUE(c1.certified()) << c1.detail;
  // [010]_2 - 4 [0]_2 = 2
  EXPECT_EQ(c1.pattern->constant, 2);
}

TEST(CertifyPattern, WrongSplitRejected) {
  const DigitSource src = DigitSource::from_rk(make("3/2", "0", 2));
  const LanguageWords lw = words(src, 2, 100);
  PatternCandidate bad = *find_pattern(lw, 2, 0);
  bad.v1 = parse_word("10", 2);
  const Certification c = certify_pattern(src, lw, bad);
  EXPECT_FALSE(c.certified());
  EXPECT_NE(std::find(c.failed.begin(), c.failed.end(), "iii"), c.failed.end());

  PatternCandidate wrong_period = *find_pattern(lw, 2, 0);
  wrong_period.v1 = parse_word("0", 2);
  wrong_period.period = 1;
  EXPECT_FALSE(certify_pattern(src, lw, wrong_period).certified());

  const DigitSource tm = thue_morse();
  const LanguageWords tw = words(tm, 2, 200);
  const Certification t = certify_pattern(tm, tw, *find_pattern(tw, 2, 1));
  EXPECT_FALSE(t.certified());
  EXPECT_NE(std::find(t.failed.begin(), t.failed.end(), "ii"), t.failed.end());
}

TEST(CertifyPattern, ReplayAgainstIndependentWords) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 15; ++t) {
    const unsigned b = 2 + t % 3;
    const DigitSource src = random_periodic(rng, b);
    const RegularityVerdict v = decide_regularity(src, b, 300);
    ASSERT_EQ(v.kind, RegularityVerdict::Kind::Regular) << src.describe();
    const LanguageWords lw = words(src, b, 2000);
    for (const CertifiedPattern& p : v.patterns) {
      for (std::size_t m = 0; m <= 10; ++m) {
        Word expect = p.v0;
        for (std::size_t i = 0; i < m; ++i) expect += p.v1;
        expect += p.v2;
        ASSERT_EQ(lw.word(p.n0 + m * p.period), expect) << src.describe();
        ASSERT_EQ(p.value_at(m), lw.values[p.n0 + m * p.period]);
      }
    }
  }
}

TEST(DecideRegularity, Examples) {
  const DigitSource q = DigitSource::from_rk(make("3/2", "0", 2));
  const RegularityVerdict rq = decide_regularity(q, 2, 500);
  ASSERT_EQ(rq.kind, RegularityVerdict::Kind::Regular);
  ASSERT_TRUE(rq.dfa);
  EXPECT_EQ(rq.patterns.size(), 2u);
  const LanguageWords lw = words(q, 2, 45);
  std::vector<Word> members;
  for (std::size_t n = 0; n < lw.size(); ++n) {
    if (lw.lengths[n] <= 40) members.push_back(lw.word(n));
  }
  EXPECT_TRUE(equivalent_up_to_length(*rq.dfa, trie_dfa(members, 2), 40).equivalent);

  const RegularityVerdict rs = decide_regularity(DigitSource::from_rk(make("sqrt(2)", "0", 2)), 2, 500);
  EXPECT_EQ(rs.kind, RegularityVerdict::Kind::NonRegular);
  ASSERT_TRUE(rs.aperiodicity);
  EXPECT_EQ(rs.aperiodicity->name, "surd-alpha");

  const RegularityVerdict rt = decide_regularity(thue_morse(), 2, 1000);
  EXPECT_EQ(rt.kind, RegularityVerdict::Kind::NonRegular);
  ASSERT_TRUE(rt.aperiodicity);
  EXPECT_EQ(rt.aperiodicity->name, "thue-morse-blocks");
}

TEST(DecideRegularity, FiniteAndUncertifiedSources) {
  const RegularityVerdict fin = decide_regularity(DigitSource::explicit_word(gw(3, {1, 2, 0, 2})), 2, 50);
  ASSERT_EQ(fin.kind, RegularityVerdict::Kind::Regular);
  EXPECT_EQ(enumerate_accepted(*fin.dfa, 10).size(), 4u);
  // Equal-length identical blocks give a periodic stream with no theorem
  // behind it; the verdict may not be NonRegular.
  const RegularityVerdict same = decide_regularity(DigitSource::thue_morse_blocks(gw(2, {1, 0}), gw(2, {1, 0})), 2, 100);
  EXPECT_NE(same.kind, RegularityVerdict::Kind::NonRegular);
}

TEST(DecideRegularity, PeriodicSourcesAreRegular) {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 12; ++t) {
    const unsigned b = 2 + t % 3;
    const DigitSource src = random_periodic(rng, b);
    const RegularityVerdict v = decide_regularity(src, b, 300);
    ASSERT_EQ(v.kind, RegularityVerdict::Kind::Regular) << src.describe();
    const LanguageWords lw = words(src, b, 70);
    std::vector<Word> members;
    for (std::size_t n = 0; n < lw.size(); ++n) {
      if (lw.lengths[n] <= 60) members.push_back(lw.word(n));
    }
    EXPECT_TRUE(equivalent_up_to_length(*v.dfa, trie_dfa(members, b), 60).equivalent) << src.describe();
  }
}

TEST(DecideRegularity, PrefixDoesNotChangeVerdict) {
  std::mt19937_64 rng(77);
  for (const char* alpha : {"3/2", "sqrt(2)", "7/4"}) {
    const NormalizedInstance norm = make(alpha, "0", 2);
    const DigitSource base_src = DigitSource::from_rk(norm);
    const auto expected = decide_regularity(base_src, 2, 300).kind;
    for (int t = 0; t < 10; ++t) {
      GeneralWord w{3, {}};
      const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
      for (std::size_t i = 0; i < len; ++i) w.digits.push_back(std::uniform_int_distribution<Digit>(0, 2)(rng));
      if (w.digits.front() == 0) w.digits.front() = 1;
      EXPECT_EQ(decide_regularity(base_src.with_prefix(w), 2, 300).kind, expected) << alpha;
    }
  }
}
