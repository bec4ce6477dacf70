// The sequence u_n = floor(log_b(alpha n + beta)): normalization to
// 0 <= beta < alpha < b, exact evaluation of u_n and v_n = u_{n+1} - u_n, and
// the jump positions c_k = floor((b^k - beta) / alpha).
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "logfloor/exactnum.hpp"

namespace logfloor {

struct ProblemInstance {
  ExactReal alpha;
  ExactReal beta;
  unsigned base = 2;
};

/// Checks alpha > 0, base >= 2 and that alpha and beta lie in a common
/// quadratic field. Throws std::invalid_argument otherwise.
void validate(const ProblemInstance& instance);

struct NormalizedInstance {
  ProblemInstance original;
  ExactReal alpha;  // 0 <= beta < alpha < base
  ExactReal beta;
  unsigned base = 2;
  /// u_n(original) = value_offset + u_{n + index_shift}(normalized) for n >= n_min.
  /// Negative when the original beta is negative.
  std::int64_t index_shift = 0;
  std::int64_t value_offset = 0;
  /// Least original n >= 0 with alpha n + beta > 0.
  std::int64_t n_min = 0;
  /// Least normalized n >= 0 with alpha n + beta > 0: 1 when beta == 0, else 0.
  std::int64_t domain_start = 0;

  ExactReal inv_alpha;       // 1 / alpha
  ExactReal beta_over_alpha;  // beta / alpha, in [0, 1)
};

NormalizedInstance normalize(const ProblemInstance& instance);

/// floor(log_b x) for x > 0, by exact power comparisons. May be negative.
std::int64_t level(const ExactReal& x, unsigned base);

/// u_n of the original instance for n in [from, to]; requires from >= n_min.
std::vector<std::int64_t> u_original(const ProblemInstance& instance, std::int64_t from, std::int64_t to);

/// u_n of the normalized instance for n in [from, to]; requires
/// from >= domain_start. Throws std::out_of_range otherwise.
std::vector<std::int64_t> u_seq(const NormalizedInstance& norm, std::int64_t from, std::int64_t to);

/// v_n = u_{n+1} - u_n of the normalized instance for n in [from, to].
std::vector<std::int64_t> v_seq(const NormalizedInstance& norm, std::int64_t from, std::int64_t to);

/// v_n for 0 <= n <= to, indexed from n = 0 so that base-b kernels are
/// taken over the true index. Below domain_start u_n is -infinity and the
/// step into the domain counts as a jump: v_n = 1 there, which keeps
/// v_n = 1 exactly at n = c_k for k >= 0 (c_0 = floor((1 - beta)/alpha)).
std::vector<std::int64_t> jump_word(const NormalizedInstance& norm, std::int64_t to);

/// (b^k - beta) / alpha for the normalized instance.
ExactReal jump_threshold(const NormalizedInstance& norm, unsigned long k);

/// c_k = floor((b^k - beta) / alpha).
BigInt c_value(const NormalizedInstance& norm, unsigned long k);

struct JumpData {
  /// c[i] = c_{i+1}, i.e. c_1 .. c_kmax.
  std::vector<BigInt> c;
  /// k with (b^k - beta) / alpha an integer, ascending. Two hits force a
  /// rational alpha.
  std::vector<unsigned long> integrality_hits;
  /// v_n for n in [v_from, v_from + v.size()).
  std::int64_t v_from = 0;
  std::vector<std::int64_t> v;
  /// Least N such that v_n is 0 or 1 for every checked n > N.
  std::int64_t n0 = 0;

  std::optional<unsigned long> integrality_hit() const {
    if (integrality_hits.empty()) return std::nullopt;
    return integrality_hits.front();
  }
  bool rationality_witness() const { return integrality_hits.size() >= 2; }
};

/// Computes c_1..c_kmax exactly and cross-checks them against v on
/// n <= check_limit: each level k >= 1 is entered exactly at n = c_k
/// (n = c_k - 1 when (b^k - beta)/alpha is an integer). Throws
/// ConsistencyError on disagreement.
JumpData c_seq(const NormalizedInstance& norm, unsigned long k_max, std::int64_t check_limit = 100000);

}  // namespace logfloor
