// Exact arithmetic over the rationals and real quadratic fields Q(sqrt(d)).
//
// Every value handled by the decision pipeline is an ExactReal: either a
// reduced rational p/q or a quadratic surd a + c*sqrt(d) with rational a, c
// (c != 0) and a square-free radicand d > 1. Comparison, floor and fractional
// part are decided exactly; there is no floating point anywhere in here.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logfloor {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Thrown by parse_exact_real on text outside the accepted grammar.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation mixes two different quadratic fields, or divides
/// by zero.
class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit ExactReal(const BigInt& value) : a_(value) {}
  explicit ExactReal(BigRational value);

  /// Builds a + c*sqrt(d). The radicand is reduced to its square-free part
  /// (the square factor moves into c); perfect squares and c == 0 collapse to
  /// a rational. Throws FieldError for d <= 0.
  static ExactReal surd(const BigRational& a, const BigRational& c, const BigInt& d);

  bool is_rational() const { return c_ == 0; }
  bool is_integer() const { return is_rational() && a_.get_den() == 1; }
  std::optional<BigRational> as_rational() const;

  /// Rational part a of a + c*sqrt(d).
  const BigRational& rational_part() const { return a_; }
  /// Coefficient c of sqrt(d); zero for rationals.
  const BigRational& surd_coefficient() const { return c_; }
  /// Square-free radicand d; zero for rationals.
  const BigInt& radicand() const { return d_; }

  /// -1, 0 or +1.
  int sign() const;

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& rhs);
  ExactReal& operator-=(const ExactReal& rhs);
  ExactReal& operator*=(const ExactReal& rhs);
  ExactReal& operator/=(const ExactReal& rhs);

  friend ExactReal operator+(ExactReal lhs, const ExactReal& rhs) { return lhs += rhs; }
  friend ExactReal operator-(ExactReal lhs, const ExactReal& rhs) { return lhs -= rhs; }
  friend ExactReal operator*(ExactReal lhs, const ExactReal& rhs) { return lhs *= rhs; }
  friend ExactReal operator/(ExactReal lhs, const ExactReal& rhs) { return lhs /= rhs; }

  /// Multiplicative inverse; (a - c*sqrt(d)) / (a^2 - c^2 d) for surds.
  ExactReal inverse() const;

  /// Algebraic conjugate a - c*sqrt(d); identity on rationals.
  ExactReal conjugate() const;

  friend bool operator==(const ExactReal& x, const ExactReal& y) {
    return x.a_ == y.a_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y);

  /// Canonical text, accepted back by parse_exact_real.
  std::string to_string() const;

 private:
  ExactReal(BigRational a, BigRational c, BigInt d)
      : a_(std::move(a)), c_(std::move(c)), d_(std::move(d)) {}

  void require_same_field(const ExactReal& other) const;
  void collapse_if_rational();

  BigRational a_;
  BigRational c_;
  BigInt d_;
};

/// Total order on ExactReal; EQ iff the two values are mathematically equal.
/// Throws FieldError if both operands are surds over different radicands.
std::strong_ordering compare(const ExactReal& x, const ExactReal& y);

/// Greatest integer <= x.
BigInt floor(const ExactReal& x);
/// Least integer >= x.
BigInt ceil(const ExactReal& x);
/// x - floor(x), always in [0, 1).
ExactReal frac(const ExactReal& x);

/// b^k for non-negative k.
BigInt ipow(const BigInt& base, unsigned long exponent);

/// Parses
///   INT | INT/INT | [RAT (+|-)] [RAT *] sqrt(INT)
/// with optional leading minus signs and whitespace. Terms over the same
/// radicand are summed. Throws ParseError on malformed text, d <= 0 or a zero
/// denominator.
ExactReal parse_exact_real(std::string_view text);

}  // namespace logfloor
