// MPFR interval enclosures of a + c*sqrt(d), used only by tests as an
// independent check on the exact comparisons. Working precision comes from
// LOGFLOOR_ORACLE_BITS (default 200).
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <optional>
#include <string>

namespace oracle {

inline mpfr_prec_t precision() {
  if (const char* env = std::getenv("LOGFLOOR_ORACLE_BITS")) {
    const long bits = std::strtol(env, nullptr, 10);
    if (bits >= MPFR_PREC_MIN && bits <= 1 << 20) return static_cast<mpfr_prec_t>(bits);
  }
  return 200;
}

class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = precision()) {
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Encloses a + c*sqrt(d) (d == 0 means the rational a) in [lo, hi].
inline void enclose(Interval& out, const mpq_class& a, const mpq_class& c, const mpz_class& d) {
  const mpfr_prec_t bits = mpfr_get_prec(out.lo());
  if (d == 0 || c == 0) {
    mpfr_set_q(out.lo(), a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi(), a.get_mpq_t(), MPFR_RNDU);
    return;
  }
  mpfr_t root_lo, root_hi;
  mpfr_init2(root_lo, bits);
  mpfr_init2(root_hi, bits);
  mpfr_set_z(root_lo, d.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(root_hi, d.get_mpz_t(), MPFR_RNDU);
  mpfr_sqrt(root_lo, root_lo, MPFR_RNDD);
  mpfr_sqrt(root_hi, root_hi, MPFR_RNDU);
  if (c > 0) {
    mpfr_mul_q(out.lo(), root_lo, c.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(out.hi(), root_hi, c.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(out.lo(), root_hi, c.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(out.hi(), root_lo, c.get_mpq_t(), MPFR_RNDU);
  }
  mpfr_add_q(out.lo(), out.lo(), a.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(out.hi(), out.hi(), a.get_mpq_t(), MPFR_RNDU);
  mpfr_clear(root_lo);
  mpfr_clear(root_hi);
}

/// Sign of x - y when the enclosures are disjoint, nullopt when they overlap.
inline std::optional<int> compare(const Interval& x, const Interval& y) {
  if (mpfr_less_p(x.hi(), y.lo())) return -1;
  if (mpfr_greater_p(x.lo(), y.hi())) return 1;
  return std::nullopt;
}

/// floor of the enclosed value when both endpoints share it.
inline std::optional<mpz_class> floor_of(const Interval& x) {
  mpz_class lo, hi;
  mpfr_get_z(lo.get_mpz_t(), x.lo(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), x.hi(), MPFR_RNDD);
  if (lo != hi) return std::nullopt;
  return lo;
}

/// floor(log_b x) for x > 0 when both endpoints share it.
inline std::optional<long> level_of(const Interval& x, unsigned base) {
  if (mpfr_sgn(x.lo()) <= 0) return std::nullopt;
  mpq_class lo, hi;
  mpfr_get_q(lo.get_mpq_t(), x.lo());
  mpfr_get_q(hi.get_mpq_t(), x.hi());
  long k = 0;
  mpq_class power = 1;
  while (power > lo) {
    power /= base;
    --k;
  }
  while (power * base <= lo) {
    power *= base;
    ++k;
  }
  if (hi >= power * base) return std::nullopt;
  return k;
}

/// The first `count` base-b digits of frac(x), when the enclosure pins them down.
inline std::optional<std::string> fraction_digits(const Interval& x, unsigned base, std::size_t count) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), base, count);
  const mpfr_prec_t bits = mpfr_get_prec(x.lo());
  mpfr_t lo, hi;
  mpfr_init2(lo, bits + 64);
  mpfr_init2(hi, bits + 64);
  mpfr_mul_z(lo, x.lo(), scale.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(hi, x.hi(), scale.get_mpz_t(), MPFR_RNDU);
  mpz_class a, b;
  mpfr_get_z(a.get_mpz_t(), lo, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi, MPFR_RNDD);
  mpfr_clear(lo);
  mpfr_clear(hi);
  if (a != b) return std::nullopt;
  mpz_class digits = a % scale;
  if (digits < 0) digits += scale;
  std::string out(count, '0');
  for (std::size_t i = count; i-- > 0;) {
    const mpz_class q = digits % base;
    out[i] = static_cast<char>('0' + q.get_ui());
    digits /= base;
  }
  return out;
}

}  // namespace oracle
