// Base-b numeration: canonical expansions (n)_b, Horner values [w]_b of words
// whose digits may exceed b - 1, digit streams of reals in [0, 1) and
// characteristic words of integer sets.
#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logfloor/exactnum.hpp"

namespace logfloor {

using Digit = std::uint32_t;

/// A finite word over {0, ..., base - 1}. The empty word is allowed.
class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument if base < 2 or some digit >= base.
  Word(unsigned base, std::vector<Digit> digits);

  unsigned base() const { return base_; }
  const std::vector<Digit>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }

  /// Sub-word [pos, pos + count).
  Word slice(std::size_t pos, std::size_t count) const;
  Word& operator+=(const Word& tail);
  friend Word operator+(Word head, const Word& tail) { return head += tail; }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  /// Plain digit string for base <= 10, comma-separated digits otherwise.
  std::string to_string() const;

 private:
  unsigned base_ = 2;
  std::vector<Digit> digits_;
};

/// Parses the to_string format back; "" and "ε" are the empty word.
Word parse_word(std::string_view text, unsigned base);

/// A word over {0, ..., bound - 1}, read in some base b that may be < bound.
struct GeneralWord {
  unsigned bound = 2;
  std::vector<Digit> digits;
};

/// Canonical base-b expansion of n >= 0, most significant digit first.
/// (0)_b is the one-digit word "0". Throws std::invalid_argument if n < 0.
Word to_word(const BigInt& n, unsigned base);

/// Number of digits of (n)_b for n >= 0.
std::size_t expansion_length(const BigInt& n, unsigned base);

/// Horner value sum w_i b^(len-1-i); digits are not restricted to < b.
BigInt from_word(std::span<const Digit> digits, unsigned base);
BigInt from_word(const GeneralWord& word, unsigned base);
BigInt from_word(const Word& word, unsigned base);

/// Greedy base-b expansion of a real x in [0, 1): digit i (1-based) is the
/// coefficient of b^-i. The first n digits are floor(b^n x) written with n
/// digits, so terminating expansions end in zeros. Thread-safe memoization.
class DigitStream {
 public:
  /// Throws std::invalid_argument unless 0 <= x < 1 and base >= 2.
  DigitStream(ExactReal x, unsigned base);

  DigitStream(const DigitStream&) = delete;
  DigitStream& operator=(const DigitStream&) = delete;

  const ExactReal& value() const { return x_; }
  unsigned base() const { return base_; }

  /// Digit i >= 1.
  Digit digit(std::size_t i) const;
  /// Digits 1..count.
  std::vector<Digit> prefix(std::size_t count) const;

 private:
  void extend_locked(std::size_t count) const;

  ExactReal x_;
  unsigned base_;
  mutable std::mutex mutex_;
  mutable std::vector<Digit> digits_;
};

/// Convenience wrapper: the first `count` digits of x in base b.
std::vector<Digit> digit_stream(const ExactReal& x, unsigned base, std::size_t count);

/// Bit i is 1 iff i is in S, for 0 <= i <= n_max. S must be sorted ascending.
std::vector<std::uint8_t> characteristic_word(std::span<const BigInt> set, std::size_t n_max);

}  // namespace logfloor
