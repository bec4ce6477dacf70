// Level counts f_k = #{n : u_n = k} and d_k = f_{k+1} - b f_k.
//
// f_k has two exact routes: direct enumeration of u_n, and the ceiling
// formula f_k = ceil(Y_{k+1}) - max(ceil(Y_k), n_start) with
// Y_k = (b^k - beta) / alpha. Enumeration covers the low levels and is
// compared against the formula; higher levels use the formula alone.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "logfloor/floorlog.hpp"
#include "logfloor/rkseq.hpp"

namespace logfloor {

struct LevelCounts {
  unsigned base = 2;
  /// Level of u at the domain start; may be negative.
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;
  /// f[i] = f_{k_min + i}.
  std::vector<BigInt> f;
  /// Levels k_min .. enumerated_to were also counted by enumeration.
  std::int64_t enumerated_to = 0;
  /// Last n visited by the enumeration.
  std::int64_t enumerated_n = 0;
  std::optional<std::int64_t> m0;

  const BigInt& at(std::int64_t k) const { return f.at(static_cast<std::size_t>(k - k_min)); }
  bool has(std::int64_t k) const { return k >= k_min && k <= k_max; }
};

/// Throws ConsistencyError when the two routes disagree on an enumerated level.
LevelCounts f_counts(const NormalizedInstance& norm, std::int64_t k_max, std::int64_t enumeration_cap = 1 << 16);

/// Last n with u_n <= k, i.e. ceil(Y_{k+1}) - 1.
BigInt last_index_at_level(const NormalizedInstance& norm, std::int64_t k);

struct Alignment {
  std::int64_t m0 = 0;
  /// f_k = c_{k+m0+1} - c_{k+m0} for every k in [aligned_from, aligned_to].
  std::int64_t aligned_from = 0;
  std::int64_t aligned_to = 0;
  /// Other offsets that also validate on the tail.
  std::vector<std::int64_t> other_offsets;
};

/// Least m0 in [0, max_offset] for which the identity holds on the upper
/// half of the levels k >= 1 covered by both inputs. Levels below 1 are
/// never used.
std::optional<Alignment> align_m0(const LevelCounts& lc, const JumpData& jd, std::int64_t max_offset = 16);

struct DSequence {
  std::int64_t k_from = 0;
  /// d[i] = d_{k_from + i}.
  std::vector<BigInt> d;
  /// d_k = r_{k+m0+1} - r_{k+m0} and the partial-sum recovery were checked
  /// on this many aligned levels.
  std::size_t cross_checked = 0;

  const BigInt& at(std::int64_t k) const { return d.at(static_cast<std::size_t>(k - k_from)); }
};

/// d_k for k in [k_min, k_max - 1]. With an alignment, checks the
/// difference identity and r_{k+m0+1} = r_{k0+m0} + sum_{i=k0..k} d_i on
/// the aligned levels; throws ConsistencyError on mismatch.
DSequence d_seq(const LevelCounts& lc, const NormalizedInstance& norm, const std::optional<Alignment>& alignment);

/// Rational alpha = p/q: for k >= 1, d_k depends only on b^k mod p, so the
/// residue cycle certifies periodicity. Surd alpha: AperiodicByTheorem. Both
/// paths run the alignment and partial-sum cross-checks over k <= window.
PeriodicityVerdict decide_d_periodicity(const NormalizedInstance& norm, std::size_t window);

}  // namespace logfloor
