#include "logfloor/numeration.hpp"

#include <algorithm>
#include <stdexcept>

namespace logfloor {

Word::Word(unsigned base, std::vector<Digit> digits) : base_(base), digits_(std::move(digits)) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  for (Digit d : digits_) {
    if (d >= base) {
      throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " +
                                  std::to_string(base));
    }
  }
}

Word Word::slice(std::size_t pos, std::size_t count) const {
  Word out;
  out.base_ = base_;
  auto first = digits_.begin() + static_cast<std::ptrdiff_t>(std::min(pos, digits_.size()));
  auto last = digits_.begin() + static_cast<std::ptrdiff_t>(std::min(pos + count, digits_.size()));
  out.digits_.assign(first, last);
  return out;
}

Word& Word::operator+=(const Word& tail) {
  if (tail.base_ != base_ && !tail.empty()) {
    throw std::invalid_argument("cannot concatenate words over different bases");
  }
  digits_.insert(digits_.end(), tail.digits_.begin(), tail.digits_.end());
  return *this;
}

std::string Word::to_string() const {
  std::string out;
  if (base_ <= 10) {
    for (Digit d : digits_) out.push_back(static_cast<char>('0' + d));
    return out;
  }
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i != 0) out.push_back(',');
    out += std::to_string(digits_[i]);
  }
  return out;
}

Word parse_word(std::string_view text, unsigned base) {
  std::vector<Digit> digits;
  if (text.empty() || text == "ε") return Word(base, {});
  if (base <= 10) {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit in word '" + std::string(text) + "'");
      digits.push_back(static_cast<Digit>(ch - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      digits.push_back(static_cast<Digit>(std::stoul(std::string(text.substr(start, comma - start)))));
      start = comma + 1;
    }
  }
  return Word(base, std::move(digits));
}

Word to_word(const BigInt& n, unsigned base) {
  if (n < 0) throw std::invalid_argument("to_word needs n >= 0, got " + n.get_str());
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  std::vector<Digit> digits;
  if (base <= 36) {
    const std::string text = n.get_str(static_cast<int>(base));
    digits.reserve(text.size());
    for (char ch : text) {
      digits.push_back(ch <= '9' ? static_cast<Digit>(ch - '0') : static_cast<Digit>(ch - 'a' + 10));
    }
  } else {
    BigInt rest = n;
    do {
      digits.push_back(static_cast<Digit>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base)));
    } while (rest != 0);
    std::reverse(digits.begin(), digits.end());
  }
  return Word(base, std::move(digits));
}

std::size_t expansion_length(const BigInt& n, unsigned base) {
  if (n < 0) throw std::invalid_argument("expansion_length needs n >= 0");
  if (n == 0) return 1;
  std::size_t len = mpz_sizeinbase(n.get_mpz_t(), static_cast<int>(std::min(base, 62U)));
  if (base > 62) return to_word(n, base).size();
  // mpz_sizeinbase may overshoot by one for bases that are not powers of two.
  if (len > 1 && ipow(BigInt(base), len - 1) > n) --len;
  return len;
}

BigInt from_word(std::span<const Digit> digits, unsigned base) {
  BigInt value = 0;
  for (Digit d : digits) {
    value *= base;
    value += d;
  }
  return value;
}

BigInt from_word(const GeneralWord& word, unsigned base) { return from_word(word.digits, base); }

BigInt from_word(const Word& word, unsigned base) { return from_word(word.digits(), base); }

DigitStream::DigitStream(ExactReal x, unsigned base) : x_(std::move(x)), base_(base) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  if (x_.sign() < 0 || compare(x_, ExactReal(1)) >= 0) {
    throw std::invalid_argument("digit stream needs 0 <= x < 1, got " + x_.to_string());
  }
}

void DigitStream::extend_locked(std::size_t count) const {
  if (digits_.size() >= count) return;
  const std::size_t target = std::max(count, 2 * digits_.size());
  const BigInt scaled = floor(ExactReal(ipow(BigInt(base_), target)) * x_);
  Word w = to_word(scaled, base_);
  std::vector<Digit> out(target - std::min(target, w.size()), 0);
  out.insert(out.end(), w.digits().begin(), w.digits().end());
  // scaled < b^target, so the padded word has exactly `target` digits.
  digits_ = std::move(out);
}

Digit DigitStream::digit(std::size_t i) const {
  if (i == 0) throw std::invalid_argument("digit index starts at 1");
  std::lock_guard lock(mutex_);
  extend_locked(i);
  return digits_[i - 1];
}

std::vector<Digit> DigitStream::prefix(std::size_t count) const {
  std::lock_guard lock(mutex_);
  extend_locked(count);
  return {digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::vector<Digit> digit_stream(const ExactReal& x, unsigned base, std::size_t count) {
  return DigitStream(x, base).prefix(count);
}

std::vector<std::uint8_t> characteristic_word(std::span<const BigInt> set, std::size_t n_max) {
  std::vector<std::uint8_t> bits(n_max + 1, 0);
  for (const BigInt& n : set) {
    if (n < 0) continue;
    if (n > static_cast<unsigned long>(n_max)) break;
    bits[n.get_ui()] = 1;
  }
  return bits;
}

}  // namespace logfloor
