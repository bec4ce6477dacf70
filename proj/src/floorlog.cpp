#include "logfloor/floorlog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "logfloor/errors.hpp"
#include "logfloor/numeration.hpp"

namespace logfloor {

namespace {

std::int64_t to_int64(const BigInt& z, const char* what) {
  if (!z.fits_slong_p()) throw std::out_of_range(std::string(what) + " does not fit in 64 bits");
  return z.get_si();
}

ExactReal at(const ExactReal& alpha, const ExactReal& beta, std::int64_t n) {
  return alpha * ExactReal(static_cast<long>(n)) + beta;
}

}  // namespace

void validate(const ProblemInstance& instance) {
  if (instance.base < 2) throw std::invalid_argument("base must be at least 2");
  if (instance.alpha.sign() <= 0) throw std::invalid_argument("alpha must be positive");
  try {
    (void)(instance.alpha + instance.beta);
  } catch (const FieldError&) {
    throw std::invalid_argument("alpha and beta must lie in a common quadratic field");
  }
}

std::int64_t level(const ExactReal& x, unsigned base) {
  if (x.sign() <= 0) throw std::invalid_argument("log of a non-positive value");
  const BigInt whole = floor(x);
  if (whole >= 1) return static_cast<std::int64_t>(expansion_length(whole, base)) - 1;
  // b^-j <= x < b^(1-j) for the least j with x b^j >= 1.
  std::int64_t j = 0;
  ExactReal scaled = x;
  while (compare(scaled, ExactReal(1)) < 0) {
    scaled *= ExactReal(static_cast<long>(base));
    ++j;
  }
  return -j;
}

NormalizedInstance normalize(const ProblemInstance& instance) {
  validate(instance);
  NormalizedInstance norm;
  norm.original = instance;
  norm.base = instance.base;

  ExactReal alpha = instance.alpha;
  ExactReal beta = instance.beta;
  const ExactReal b(static_cast<long>(instance.base));

  // alpha >= b: b^m <= alpha < b^(m+1) and log_b(alpha n + beta) = m + log_b(alpha' n + beta').
  if (compare(alpha, b) >= 0) {
    const std::int64_t m = level(alpha, instance.base);
    const ExactReal scale(ipow(BigInt(instance.base), static_cast<unsigned long>(m)));
    alpha /= scale;
    beta /= scale;
    norm.value_offset = m;
  }

  // beta = j alpha + r with 0 <= r < alpha, so alpha n + beta = alpha (n + j) + r.
  const BigInt j = floor(beta / alpha);
  norm.index_shift = to_int64(j, "index shift");
  beta -= alpha * ExactReal(j);

  norm.alpha = alpha;
  norm.beta = beta;
  norm.domain_start = beta.sign() > 0 ? 0 : 1;
  norm.inv_alpha = alpha.inverse();
  norm.beta_over_alpha = beta * norm.inv_alpha;

  if (instance.beta.sign() > 0) {
    norm.n_min = 0;
  } else {
    norm.n_min = to_int64(floor(-instance.beta / instance.alpha) + 1, "n_min");
  }
  return norm;
}

std::vector<std::int64_t> u_original(const ProblemInstance& instance, std::int64_t from, std::int64_t to) {
  validate(instance);
  std::vector<std::int64_t> out;
  for (std::int64_t n = from; n <= to; ++n) {
    const ExactReal x = at(instance.alpha, instance.beta, n);
    if (x.sign() <= 0) throw std::out_of_range("u_n undefined at n = " + std::to_string(n));
    out.push_back(level(x, instance.base));
  }
  return out;
}

std::vector<std::int64_t> u_seq(const NormalizedInstance& norm, std::int64_t from, std::int64_t to) {
  if (from < norm.domain_start) {
    throw std::out_of_range("u_n requested below the domain start " + std::to_string(norm.domain_start));
  }
  std::vector<std::int64_t> out;
  if (to >= from) out.reserve(static_cast<std::size_t>(to - from + 1));
  for (std::int64_t n = from; n <= to; ++n) out.push_back(level(at(norm.alpha, norm.beta, n), norm.base));
  return out;
}

std::vector<std::int64_t> v_seq(const NormalizedInstance& norm, std::int64_t from, std::int64_t to) {
  const std::vector<std::int64_t> u = u_seq(norm, from, to + 1);
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) v.push_back(u[i + 1] - u[i]);
  return v;
}

std::vector<std::int64_t> jump_word(const NormalizedInstance& norm, std::int64_t to) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::min(norm.domain_start, to + 1)), 1);
  if (to < norm.domain_start) return out;
  const std::vector<std::int64_t> v = v_seq(norm, norm.domain_start, to);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

ExactReal jump_threshold(const NormalizedInstance& norm, unsigned long k) {
  return ExactReal(ipow(BigInt(norm.base), k)) * norm.inv_alpha - norm.beta_over_alpha;
}

BigInt c_value(const NormalizedInstance& norm, unsigned long k) { return floor(jump_threshold(norm, k)); }

JumpData c_seq(const NormalizedInstance& norm, unsigned long k_max, std::int64_t check_limit) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  JumpData out;
  out.c.reserve(k_max);
  std::vector<BigInt> entry;  // entry[k-1]: n at which level k is entered
  BigInt power = norm.base;
  for (unsigned long k = 1; k <= k_max; ++k) {
    const ExactReal x = ExactReal(power) * norm.inv_alpha - norm.beta_over_alpha;
    BigInt ck = floor(x);
    const bool integral = x.is_integer();
    if (integral) out.integrality_hits.push_back(k);
    entry.push_back(integral ? BigInt(ck - 1) : ck);
    out.c.push_back(std::move(ck));
    power *= norm.base;
  }

  out.v_from = norm.domain_start;
  out.n0 = norm.domain_start - 1;
  if (check_limit <= norm.domain_start) return out;
  const std::vector<std::int64_t> u = u_seq(norm, norm.domain_start, check_limit);
  std::map<std::int64_t, std::int64_t> observed;  // level -> n
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const std::int64_t n = norm.domain_start + static_cast<std::int64_t>(i);
    const std::int64_t step = u[i + 1] - u[i];
    out.v.push_back(step);
    if (step > 1) out.n0 = n;
    for (std::int64_t lvl = std::max<std::int64_t>(u[i] + 1, 1); lvl <= u[i + 1]; ++lvl) observed[lvl] = n;
  }
  const std::int64_t last_n = check_limit - 1;
  for (unsigned long k = 1; k <= k_max; ++k) {
    const BigInt& expected = entry[k - 1];
    const auto hit = observed.find(static_cast<std::int64_t>(k));
    if (expected <= last_n) {
      if (hit == observed.end() || BigInt(static_cast<long>(hit->second)) != expected) {
        throw ConsistencyError("level " + std::to_string(k) + " should be entered at n = " +
                               expected.get_str() + " but enumeration disagrees");
      }
    } else if (hit != observed.end()) {
      throw ConsistencyError("level " + std::to_string(k) + " entered at n = " +
                             std::to_string(hit->second) + ", before its jump position " + expected.get_str());
    }
  }
  return out;
}

}  // namespace logfloor
