#include "logfloor/fk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "logfloor/errors.hpp"

namespace logfloor {

namespace {

ExactReal power_of(unsigned base, std::int64_t k) {
  if (k >= 0) return ExactReal(ipow(BigInt(base), static_cast<unsigned long>(k)));
  return ExactReal(BigRational(BigInt(1), ipow(BigInt(base), static_cast<unsigned long>(-k))));
}

// ceil(Y_k), the first n with u_n >= k.
BigInt first_index_at_or_above(const NormalizedInstance& norm, std::int64_t k) {
  return ceil((power_of(norm.base, k) - norm.beta) * norm.inv_alpha);
}

BigInt count_by_formula(const NormalizedInstance& norm, std::int64_t k) {
  const BigInt lo = std::max(first_index_at_or_above(norm, k), BigInt(norm.domain_start));
  const BigInt hi = first_index_at_or_above(norm, k + 1);
  return hi > lo ? BigInt(hi - lo) : BigInt(0);
}

std::int64_t value_at(std::span<const std::int64_t> block, std::int64_t start, std::int64_t period, std::int64_t k) {
  const auto len = static_cast<std::int64_t>(block.size());
  if (k <= len) return block[static_cast<std::size_t>(k - 1)];
  return block[static_cast<std::size_t>(start + (k - 1 - start) % period)];
}

}  // namespace

BigInt last_index_at_level(const NormalizedInstance& norm, std::int64_t k) {
  return first_index_at_or_above(norm, k + 1) - 1;
}

LevelCounts f_counts(const NormalizedInstance& norm, std::int64_t k_max, std::int64_t enumeration_cap) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  LevelCounts lc;
  lc.base = norm.base;
  lc.k_min = level(norm.alpha * ExactReal(static_cast<long>(norm.domain_start)) + norm.beta, norm.base);
  lc.k_max = k_max;
  for (std::int64_t k = lc.k_min; k <= k_max; ++k) lc.f.push_back(count_by_formula(norm, k));

  // Enumerate every level whose last index stays under the cap.
  std::int64_t top = lc.k_min - 1;
  BigInt last = norm.domain_start - 1;
  for (std::int64_t k = lc.k_min; k <= k_max; ++k) {
    const BigInt end = last_index_at_level(norm, k);
    if (end > enumeration_cap) break;
    top = k;
    last = end;
  }
  lc.enumerated_to = top;
  lc.enumerated_n = last.get_si();
  if (top < lc.k_min) return lc;
  std::map<std::int64_t, BigInt> counted;
  for (std::int64_t u : u_seq(norm, norm.domain_start, lc.enumerated_n)) counted[u] += 1;
  for (std::int64_t k = lc.k_min; k <= top; ++k) {
    const BigInt seen = counted.count(k) ? counted[k] : BigInt(0);
    if (seen != lc.at(k)) {
      throw ConsistencyError("f_" + std::to_string(k) + ": enumeration counts " + seen.get_str() +
                             ", ceiling formula gives " + lc.at(k).get_str());
    }
  }
  return lc;
}

std::optional<Alignment> align_m0(const LevelCounts& lc, const JumpData& jd, std::int64_t max_offset) {
  const auto c_top = static_cast<std::int64_t>(jd.c.size());  // c_1 .. c_top
  auto c = [&](std::int64_t k) -> const BigInt& { return jd.c[static_cast<std::size_t>(k - 1)]; };
  auto holds = [&](std::int64_t m, std::int64_t k) { return lc.at(k) == c(k + m + 1) - c(k + m); };

  std::optional<Alignment> best;
  for (std::int64_t m = 0; m <= max_offset; ++m) {
    const std::int64_t hi = std::min(lc.k_max, c_top - m - 1);
    const std::int64_t lo = std::max<std::int64_t>(1, lc.k_min);
    if (hi < lo) break;
    const std::int64_t tail = std::max(lo, (lo + hi + 1) / 2);
    bool ok = true;
    for (std::int64_t k = tail; k <= hi && ok; ++k) ok = holds(m, k);
    if (!ok) continue;
    if (best) {
      best->other_offsets.push_back(m);
      continue;
    }
    Alignment a;
    a.m0 = m;
    a.aligned_to = hi;
    a.aligned_from = tail;
    while (a.aligned_from > lo && holds(m, a.aligned_from - 1)) --a.aligned_from;
    best = a;
  }
  return best;
}

DSequence d_seq(const LevelCounts& lc, const NormalizedInstance& norm, const std::optional<Alignment>& alignment) {
  DSequence out;
  out.k_from = lc.k_min;
  for (std::int64_t k = lc.k_min; k < lc.k_max; ++k) out.d.push_back(lc.at(k + 1) - BigInt(lc.base) * lc.at(k));
  if (!alignment) return out;

  const std::int64_t m0 = alignment->m0;
  const std::int64_t k0 = alignment->aligned_from;
  const std::int64_t k1 = alignment->aligned_to - 1;  // d_k needs f_{k+1}
  if (k1 < k0) return out;
  const std::vector<std::int64_t> r =
      r_direct_range(norm, static_cast<unsigned long>(k0 + m0), static_cast<unsigned long>(k1 + m0 + 1));
  auto r_at = [&](std::int64_t j) { return BigInt(static_cast<long>(r[static_cast<std::size_t>(j - k0 - m0)])); };
  BigInt running = r_at(k0 + m0);
  for (std::int64_t k = k0; k <= k1; ++k) {
    const BigInt expected = r_at(k + m0 + 1) - r_at(k + m0);
    if (out.at(k) != expected) {
      throw ConsistencyError("d_" + std::to_string(k) + " = " + out.at(k).get_str() + " but r_" +
                             std::to_string(k + m0 + 1) + " - r_" + std::to_string(k + m0) + " = " +
                             expected.get_str());
    }
    running += out.at(k);
    if (running != r_at(k + m0 + 1)) {
      throw ConsistencyError("partial sums of d fail to recover r_" + std::to_string(k + m0 + 1));
    }
    ++out.cross_checked;
  }
  return out;
}

PeriodicityVerdict decide_d_periodicity(const NormalizedInstance& norm, std::size_t window) {
  PeriodicityVerdict verdict;
  verdict.window = window;
  const auto k_max = static_cast<std::int64_t>(std::max<std::size_t>(window, 4));
  const LevelCounts lc = f_counts(norm, k_max + 1);
  const JumpData jd = c_seq(norm, static_cast<unsigned long>(k_max + 2 + 16), 0);
  const std::optional<Alignment> alignment = align_m0(lc, jd);
  const DSequence ds = d_seq(lc, norm, alignment);
  const std::string checks = alignment ? "; d matched r differences and partial sums on " +
                                             std::to_string(ds.cross_checked) + " aligned levels (m0 = " +
                                             std::to_string(alignment->m0) + ")"
                                       : "; no alignment with c found";

  if (!norm.alpha.is_rational()) {
    verdict.kind = PeriodicityVerdict::Kind::AperiodicByTheorem;
    verdict.reason = "alpha = " + norm.alpha.to_string() +
                     " is a quadratic irrational; d_k = r_{k+m0+1} - r_{k+m0} and r is not ultimately periodic" +
                     checks;
    return verdict;
  }

  const BigInt modulus = norm.alpha.as_rational()->get_num();
  const std::size_t limit = std::max<std::size_t>(window, std::size_t{1} << 20);
  const std::optional<ResidueCycle> cycle = residue_cycle(modulus, norm.base, limit);
  if (!cycle) {
    verdict.kind = PeriodicityVerdict::Kind::Inconclusive;
    verdict.reason = "b^k mod " + modulus.get_str() + " did not cycle within " + std::to_string(limit) + " steps";
    return verdict;
  }
  // For k >= 1, f_k = ceil(Y_{k+1}) - ceil(Y_k) and d_k is a function of b^k mod p.
  ResidueCycleCertificate cert;
  cert.modulus = modulus;
  cert.base = norm.base;
  cert.residue_preperiod = cycle->preperiod;
  cert.residue_period = cycle->period;
  const std::int64_t len = cycle->preperiod + cycle->period;
  const LevelCounts block_counts = len + 1 <= lc.k_max ? lc : f_counts(norm, len + 1, 0);
  for (std::int64_t k = 1; k <= len; ++k) {
    cert.block.push_back(BigInt(block_counts.at(k + 1) - BigInt(norm.base) * block_counts.at(k)).get_si());
  }
  for (std::int64_t k = 1; k < lc.k_max; ++k) {
    const BigInt dk = lc.at(k + 1) - BigInt(norm.base) * lc.at(k);
    if (dk != value_at(cert.block, cert.residue_preperiod, cert.residue_period, k)) {
      throw ConsistencyError("d_" + std::to_string(k) + " disagrees with its residue-cycle prediction");
    }
  }
  verdict.kind = PeriodicityVerdict::Kind::Periodic;
  verdict.period = reduce_eventual_period(cert.block, cert.residue_preperiod, cert.residue_period);
  verdict.certified = true;
  verdict.reason = "d_k depends only on " + std::to_string(norm.base) + "^k mod " + modulus.get_str() +
                   " for k >= 1" + checks;
  verdict.certificate = std::move(cert);
  return verdict;
}

}  // namespace logfloor
