#include "logfloor/exactnum.hpp"

#include <cctype>
#include <utility>

namespace logfloor {

namespace {

// Radicands are user-facing inputs; trial division up to sqrt(d) must stay cheap.
const BigInt kMaxRadicand("1000000000000");

int sgn(const BigRational& q) { return ::sgn(q); }
int sgn(const BigInt& z) { return ::sgn(z); }

// Sign of a + c*sqrt(d): decided from the signs of a and c, and when they
// disagree, from a^2 versus c^2 d. Equality there is impossible because d is
// not a perfect square.
int surd_sign(const BigRational& a, const BigRational& c, const BigInt& d) {
  const int sa = sgn(a);
  const int sc = sgn(c);
  if (sc == 0) return sa;
  if (sa == 0 || sa == sc) return sc;
  const BigInt& an = a.get_num();
  const BigInt& ad = a.get_den();
  const BigInt& cn = c.get_num();
  const BigInt& cd = c.get_den();
  const BigInt lhs = an * an * cd * cd;
  const BigInt rhs = cn * cn * d * ad * ad;
  return lhs > rhs ? sa : sc;
}

// Splits d into s^2 * core with core square-free.
std::pair<BigInt, BigInt> square_free_split(const BigInt& d) {
  if (d > kMaxRadicand) {
    if (mpz_perfect_square_p(d.get_mpz_t()) != 0) {
      BigInt root;
      mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
      return {root, BigInt(1)};
    }
    throw FieldError("radicand " + d.get_str() + " is too large to reduce");
  }
  unsigned long rest = d.get_ui();
  unsigned long square = 1;
  for (unsigned long p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square *= p;
    }
  }
  return {BigInt(square), BigInt(rest)};
}

}  // namespace

ExactReal::ExactReal(BigRational value) : a_(std::move(value)) { a_.canonicalize(); }

ExactReal ExactReal::surd(const BigRational& a, const BigRational& c, const BigInt& d) {
  if (d <= 0) throw FieldError("radicand must be positive, got " + d.get_str());
  auto [square, core] = square_free_split(d);
  ExactReal out(a, c * square, core);
  out.a_.canonicalize();
  out.c_.canonicalize();
  if (core == 1) {
    out.a_ += out.c_;
    out.c_ = 0;
  }
  out.collapse_if_rational();
  return out;
}

std::optional<BigRational> ExactReal::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return a_;
}

int ExactReal::sign() const { return surd_sign(a_, c_, d_); }

void ExactReal::collapse_if_rational() {
  if (c_ == 0) d_ = 0;
}

void ExactReal::require_same_field(const ExactReal& other) const {
  if (!is_rational() && !other.is_rational() && d_ != other.d_) {
    throw FieldError("values over sqrt(" + d_.get_str() + ") and sqrt(" + other.d_.get_str() +
                     ") do not share a quadratic field");
  }
}

ExactReal ExactReal::operator-() const { return ExactReal(-a_, -c_, d_); }

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
  require_same_field(rhs);
  a_ += rhs.a_;
  if (!rhs.is_rational()) {
    c_ += rhs.c_;
    d_ = rhs.d_;
  }
  collapse_if_rational();
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs) { return *this += -rhs; }

ExactReal& ExactReal::operator*=(const ExactReal& rhs) {
  require_same_field(rhs);
  if (rhs.is_rational()) {
    a_ *= rhs.a_;
    c_ *= rhs.a_;
  } else if (is_rational()) {
    c_ = a_ * rhs.c_;
    a_ *= rhs.a_;
    d_ = rhs.d_;
  } else {
    BigRational a = a_ * rhs.a_ + c_ * rhs.c_ * d_;
    BigRational c = a_ * rhs.c_ + c_ * rhs.a_;
    a_ = std::move(a);
    c_ = std::move(c);
  }
  collapse_if_rational();
  return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& rhs) { return *this *= rhs.inverse(); }

ExactReal ExactReal::inverse() const {
  if (sign() == 0) throw FieldError("division by zero");
  if (is_rational()) return ExactReal(BigRational(1) / a_);
  const BigRational norm = a_ * a_ - c_ * c_ * d_;
  return ExactReal(a_ / norm, -c_ / norm, d_);
}

ExactReal ExactReal::conjugate() const { return ExactReal(a_, -c_, d_); }

std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y) { return compare(x, y); }

std::string ExactReal::to_string() const {
  if (is_rational()) return a_.get_str();
  std::string out;
  BigRational magnitude = abs(c_);
  if (a_ != 0) {
    out = a_.get_str();
    out += c_ < 0 ? "-" : "+";
  } else if (c_ < 0) {
    out = "-";
  }
  if (magnitude != 1) out += magnitude.get_str() + "*";
  out += "sqrt(" + d_.get_str() + ")";
  return out;
}

std::strong_ordering compare(const ExactReal& x, const ExactReal& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt floor(const ExactReal& x) {
  const BigRational& a = x.rational_part();
  BigInt fa;
  mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  if (x.is_rational()) return fa;

  const BigRational& c = x.surd_coefficient();
  const BigInt& d = x.radicand();

  // x >= n  <=>  (a - n) + c sqrt(d) >= 0. With a = an/ad and c = cn/cd the
  // squared comparison is (an - n ad)^2 cd^2 against cn^2 d ad^2.
  const BigInt& an = a.get_num();
  const BigInt& ad = a.get_den();
  const BigInt& cn = c.get_num();
  const BigInt& cd = c.get_den();
  const int sc = sgn(c);
  const BigInt cd2 = cd * cd;
  const BigInt rhs = cn * cn * d * ad * ad;
  auto at_least = [&](const BigInt& n) {
    const BigInt shifted = an - n * ad;
    const int sa = sgn(shifted);
    int s;
    if (sa == 0 || sa == sc) {
      s = sc;
    } else {
      const BigInt lhs = shifted * shifted * cd2;
      s = lhs > rhs ? sa : sc;
    }
    return s >= 0;
  };

  // floor(|c| sqrt(d)) is isqrt(N D) / D or one less, where c^2 d = N / D.
  const BigRational c2d = c * c * d;
  BigInt root;
  const BigInt nd = c2d.get_num() * c2d.get_den();
  mpz_sqrt(root.get_mpz_t(), nd.get_mpz_t());
  BigInt estimate;
  mpz_fdiv_q(estimate.get_mpz_t(), root.get_mpz_t(), c2d.get_den_mpz_t());
  const BigInt guess = sc > 0 ? BigInt(fa + estimate) : BigInt(fa - estimate - 1);

  // Bracket lo <= x < hi, then bisect.
  BigInt width = 4;
  BigInt lo = guess - 2;
  BigInt hi = guess + 3;
  while (!at_least(lo)) {
    lo -= width;
    width *= 2;
  }
  while (at_least(hi)) {
    hi += width;
    width *= 2;
  }
  while (hi - lo > 1) {
    BigInt mid = lo + (hi - lo) / 2;
    if (at_least(mid)) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return lo;
}

BigInt ceil(const ExactReal& x) {
  BigInt f = floor(x);
  if (ExactReal(f) == x) return f;
  return f + 1;
}

ExactReal frac(const ExactReal& x) { return x - ExactReal(floor(x)); }

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }
  bool accept(char ch) {
    if (!peek(ch)) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }
  BigInt integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

BigRational rational_literal(Cursor& in) {
  BigInt num = in.integer();
  BigInt den = 1;
  if (in.accept('/')) {
    den = in.integer();
    if (den == 0) in.fail("zero denominator");
  }
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

ExactReal sqrt_call(Cursor& in, const BigRational& coefficient) {
  in.expect('(');
  const bool negative = in.accept('-');
  BigInt d = in.integer();
  in.expect(')');
  if (negative || d == 0) in.fail("radicand must be positive");
  try {
    return ExactReal::surd(0, coefficient, d);
  } catch (const FieldError& e) {
    in.fail(e.what());
  }
}

ExactReal term(Cursor& in) {
  if (in.accept_word("sqrt")) return sqrt_call(in, 1);
  BigRational value = rational_literal(in);
  if (in.accept('*')) {
    if (!in.accept_word("sqrt")) in.fail("expected sqrt after '*'");
    return sqrt_call(in, value);
  }
  return ExactReal(value);
}

}  // namespace

ExactReal parse_exact_real(std::string_view text) {
  Cursor in(text);
  if (in.done()) in.fail("empty input");
  ExactReal total;
  bool negative = in.accept('-');
  while (true) {
    ExactReal t = term(in);
    try {
      total += negative ? -t : t;
    } catch (const FieldError& e) {
      in.fail(e.what());
    }
    if (in.done()) break;
    if (in.accept('+')) {
      negative = false;
    } else if (in.accept('-')) {
      negative = true;
    } else {
      in.fail("unexpected character");
    }
  }
  return total;
}

}  // namespace logfloor
