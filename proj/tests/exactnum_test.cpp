#include <gtest/gtest.h>

#include <random>

#include "logfloor/exactnum.hpp"
#include "oracle/interval_oracle.hpp"

using namespace logfloor;

namespace {

ExactReal q(long num, long den) { return ExactReal(BigRational(num, den)); }
ExactReal sqrt_of(long d) { return ExactReal::surd(0, 1, d); }

ExactReal random_value(std::mt19937_64& rng, long radicand) {
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 12);
  std::uniform_int_distribution<int> kind(0, 2);
  BigRational a(num(rng), den(rng));
  a.canonicalize();
  if (kind(rng) == 0) return ExactReal(a);
  BigRational c(num(rng), den(rng));
  c.canonicalize();
  return ExactReal::surd(a, c, radicand);
}

int to_int(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

void enclose(oracle::Interval& box, const ExactReal& x) {
  oracle::enclose(box, x.rational_part(), x.surd_coefficient(), x.radicand());
}

}  // namespace

TEST(Compare, Examples) {
  EXPECT_EQ(compare(q(1, 2), q(1, 2)), std::strong_ordering::equal);
  EXPECT_EQ(compare(sqrt_of(2), q(3, 2)), std::strong_ordering::less);
  EXPECT_EQ(compare(q(7, 5), sqrt_of(2)), std::strong_ordering::less);
  // cross-multiplied: 49/25 < 2
  EXPECT_LT(BigInt(49), BigInt(2 * 25));
}

TEST(Compare, AgreesWithIntervalOracle) {
  std::mt19937_64 rng(20261016);
  const long radicands[] = {2, 3, 5, 7};
  int decided = 0;
  for (int t = 0; t < 2000; ++t) {
    const long d = radicands[t % 4];
    const ExactReal x = random_value(rng, d);
    const ExactReal y = random_value(rng, d);
    oracle::Interval bx, by;
    enclose(bx, x);
    enclose(by, y);
    const auto sign = oracle::compare(bx, by);
    if (!sign) {
      EXPECT_EQ(x, y) << x.to_string() << " vs " << y.to_string();
      continue;
    }
    ++decided;
    EXPECT_EQ(to_int(compare(x, y)), *sign) << x.to_string() << " vs " << y.to_string();
  }
  EXPECT_GT(decided, 1900);
}

TEST(Compare, AntisymmetricAndTransitive) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const ExactReal x = random_value(rng, 5), y = random_value(rng, 5), z = random_value(rng, 5);
    EXPECT_EQ(to_int(compare(x, y)), -to_int(compare(y, x)));
    if (compare(x, y) <= 0 && compare(y, z) <= 0) EXPECT_LE(to_int(compare(x, z)), 0);
  }
}

TEST(Compare, MixedFieldsThrow) {
  EXPECT_THROW(compare(sqrt_of(2), sqrt_of(3)), FieldError);
  EXPECT_NO_THROW(compare(sqrt_of(2), q(1, 3)));
}

TEST(Floor, Examples) {
  EXPECT_EQ(floor(q(4, 3)), 1);
  EXPECT_EQ(floor(sqrt_of(2)), 1);
  EXPECT_EQ(floor(ExactReal(1024) / sqrt_of(2)), 724);
  // brute force: largest k with 2k^2 <= 1024^2
  long k = 0;
  while (2 * (k + 1) * (k + 1) <= 1024L * 1024L) ++k;
  EXPECT_EQ(k, 724);
  EXPECT_EQ(floor(q(-1, 3)), -1);
  EXPECT_EQ(ceil(q(-1, 3)), 0);
  EXPECT_EQ(ceil(q(4, 1)), 4);
}

TEST(Frac, Examples) {
  EXPECT_EQ(frac(q(7, 3)), q(1, 3));
  EXPECT_EQ(frac(sqrt_of(2)), sqrt_of(2) - ExactReal(1));
  EXPECT_EQ(frac(q(-1, 3)), q(2, 3));
}

TEST(FloorFrac, PropertyAndOracle) {
  std::mt19937_64 rng(11);
  const long radicands[] = {2, 6, 11};
  for (int t = 0; t < 1000; ++t) {
    const ExactReal x = random_value(rng, radicands[t % 3]);
    const ExactReal f = frac(x);
    EXPECT_GE(f, ExactReal(0));
    EXPECT_LT(f, ExactReal(1));
    EXPECT_EQ(ExactReal(floor(x)) + f, x);
    oracle::Interval box;
    enclose(box, x);
    if (auto fl = oracle::floor_of(box)) EXPECT_EQ(*fl, floor(x)) << x.to_string();
  }
}

TEST(Surd, NormTimesConjugate) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const ExactReal x = random_value(rng, 7);
    const BigRational a = x.rational_part(), c = x.surd_coefficient();
    const BigRational norm = a * a - c * c * (x.is_rational() ? BigInt(0) : x.radicand());
    EXPECT_EQ(x * x.conjugate(), ExactReal(norm));
    if (x.sign() != 0) EXPECT_EQ(x * x.inverse(), ExactReal(1));
  }
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_exact_real("3/2"), q(3, 2));
  const ExactReal r8 = parse_exact_real("sqrt(8)");
  EXPECT_EQ(r8.rational_part(), 0);
  EXPECT_EQ(r8.surd_coefficient(), 2);
  EXPECT_EQ(r8.radicand(), 2);
  EXPECT_EQ(parse_exact_real("1+2*sqrt(4)"), ExactReal(5));
  EXPECT_TRUE(parse_exact_real("1+2*sqrt(4)").is_integer());
}

TEST(Parse, RoundTripAndErrors) {
  for (const char* text : {"-7/4", "1/2+1/2*sqrt(5)", "1/10*sqrt(2)", "1+sqrt(2)", "-sqrt(3)", "0"}) {
    const ExactReal x = parse_exact_real(text);
    EXPECT_EQ(parse_exact_real(x.to_string()), x) << text;
  }
  for (const char* bad : {"", "1/0", "sqrt(0)", "sqrt(-2)", "abc", "1.5", "2^(1/3)"}) {
    EXPECT_THROW(parse_exact_real(bad), ParseError) << bad;
  }
}

TEST(Ipow, Basic) {
  EXPECT_EQ(ipow(2, 10), 1024);
  EXPECT_EQ(ipow(10, 0), 1);
}
