#include "logfloor/rkseq.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "logfloor/errors.hpp"

namespace logfloor {

namespace {

std::int64_t small(const BigInt& z) {
  if (!z.fits_slong_p()) throw ConsistencyError("r value out of range: " + z.get_str());
  return z.get_si();
}

// floor(b frac(power/alpha - beta/alpha) + (b - 1) frac(beta/alpha)). With
// power = b^k this is r_k; with power = b^k mod p it is r_k again when
// alpha = p/q, because the two arguments differ by an integer.
std::int64_t closed_form(const NormalizedInstance& norm, const BigInt& power) {
  const ExactReal x = ExactReal(power) * norm.inv_alpha - norm.beta_over_alpha;
  const ExactReal b(static_cast<long>(norm.base));
  const ExactReal value = b * frac(x) + ExactReal(static_cast<long>(norm.base) - 1) * frac(norm.beta_over_alpha);
  return small(floor(value));
}

bool pk_holds(const NormalizedInstance& norm, const BigInt& power) {
  return compare(frac(ExactReal(power) * norm.inv_alpha), norm.beta_over_alpha) >= 0;
}

LemmaCase case_of(bool pk, bool pk1) {
  if (pk) return pk1 ? LemmaCase::A : LemmaCase::B;
  return pk1 ? LemmaCase::C : LemmaCase::D;
}

std::int64_t case_value(LemmaCase c, std::int64_t digit, std::int64_t base) {
  switch (c) {
    case LemmaCase::A:
      return digit;
    case LemmaCase::B:
      return digit - 1;
    case LemmaCase::C:
      return base + digit;
    case LemmaCase::D:
      return base + digit - 1;
  }
  return -1;
}

std::int64_t value_at(std::span<const std::int64_t> block, std::int64_t start, std::int64_t period,
                      std::int64_t k) {
  const auto len = static_cast<std::int64_t>(block.size());
  if (k <= len) return block[static_cast<std::size_t>(k - 1)];
  return block[static_cast<std::size_t>(start + (k - 1 - start) % period)];
}

}  // namespace

char to_char(LemmaCase c) {
  switch (c) {
    case LemmaCase::A:
      return 'A';
    case LemmaCase::B:
      return 'B';
    case LemmaCase::C:
      return 'C';
    case LemmaCase::D:
      return 'D';
  }
  return '?';
}

std::string to_string(PeriodicityVerdict::Kind kind) {
  switch (kind) {
    case PeriodicityVerdict::Kind::Periodic:
      return "Periodic";
    case PeriodicityVerdict::Kind::AperiodicByTheorem:
      return "AperiodicByTheorem";
    case PeriodicityVerdict::Kind::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::int64_t r_direct(const NormalizedInstance& norm, unsigned long k) {
  return closed_form(norm, ipow(BigInt(norm.base), k));
}

std::vector<std::int64_t> r_direct_range(const NormalizedInstance& norm, unsigned long k_first,
                                         unsigned long k_last) {
  std::vector<std::int64_t> out;
  if (k_last < k_first) return out;
  out.reserve(k_last - k_first + 1);
  BigInt power = ipow(BigInt(norm.base), k_first);
  for (unsigned long k = k_first; k <= k_last; ++k) {
    out.push_back(closed_form(norm, power));
    power *= norm.base;
  }
  return out;
}

std::int64_t r_recur(const NormalizedInstance& norm, unsigned long k) {
  if (k < 1) throw std::invalid_argument("r_recur needs k >= 1");
  return small(c_value(norm, k + 1) - c_value(norm, k) * norm.base);
}

std::vector<std::int64_t> r_recur_range(const NormalizedInstance& norm, unsigned long k_first,
                                        unsigned long k_last) {
  if (k_first < 1) throw std::invalid_argument("r_recur needs k >= 1");
  std::vector<std::int64_t> out;
  if (k_last < k_first) return out;
  out.reserve(k_last - k_first + 1);
  BigInt power = ipow(BigInt(norm.base), k_first);
  BigInt previous = floor(ExactReal(power) * norm.inv_alpha - norm.beta_over_alpha);
  for (unsigned long k = k_first; k <= k_last; ++k) {
    power *= norm.base;
    BigInt next = floor(ExactReal(power) * norm.inv_alpha - norm.beta_over_alpha);
    out.push_back(small(next - previous * norm.base));
    previous = std::move(next);
  }
  return out;
}

PropositionPk eval_pk(const NormalizedInstance& norm, unsigned long k) {
  return {k, pk_holds(norm, ipow(BigInt(norm.base), k))};
}

std::vector<RkRecord> classify_range(const NormalizedInstance& norm, unsigned long k_first,
                                     unsigned long k_last) {
  if (k_first < 1) throw std::invalid_argument("classify needs k >= 1");
  std::vector<RkRecord> out;
  if (k_last < k_first) return out;
  const DigitStream digits(frac(norm.inv_alpha), norm.base);
  const std::vector<Digit> tail = digits.prefix(k_last + 1);
  const auto base = static_cast<std::int64_t>(norm.base);

  BigInt power = ipow(BigInt(norm.base), k_first);
  bool pk = pk_holds(norm, power);
  for (unsigned long k = k_first; k <= k_last; ++k) {
    BigInt next_power = power * norm.base;
    const bool pk1 = pk_holds(norm, next_power);
    RkRecord rec;
    rec.k = k;
    rec.base = norm.base;
    rec.pk = pk;
    rec.pk1 = pk1;
    rec.case_tag = case_of(pk, pk1);
    rec.next_digit = tail[k];  // a_{k+1}
    rec.r = closed_form(norm, power);
    rec.c_k = floor(ExactReal(power) * norm.inv_alpha - norm.beta_over_alpha);
    const std::int64_t expected = case_value(rec.case_tag, rec.next_digit, base);
    if (expected != rec.r) {
      throw ConsistencyError("r_" + std::to_string(k) + " = " + std::to_string(rec.r) + " but case " +
                             to_char(rec.case_tag) + " predicts " + std::to_string(expected));
    }
    out.push_back(std::move(rec));
    power = std::move(next_power);
    pk = pk1;
  }
  return out;
}

RkRecord classify(const NormalizedInstance& norm, unsigned long k) { return classify_range(norm, k, k).front(); }

TransitionReport check_transitions(std::span<const RkRecord> records) {
  TransitionReport report;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const RkRecord& cur = records[i];
    const RkRecord& nxt = records[i + 1];
    if (nxt.k != cur.k + 1) throw std::invalid_argument("check_transitions needs consecutive k");
    const auto b = static_cast<std::int64_t>(cur.base);
    const std::int64_t a = cur.next_digit;
    const std::int64_t a1 = nxt.next_digit;
    const bool low = cur.r == a || cur.r == b + a;
    const bool low_next = nxt.r == a1 || nxt.r == a1 - 1;
    const bool high = cur.r == a - 1 || cur.r == b + a - 1;
    const bool high_next = nxt.r == b + a1 || nxt.r == b + a1 - 1;
    ++report.pairs_checked;
    if (low != low_next || high != high_next) report.violations.push_back(cur.k);
  }
  return report;
}

RemarkReport check_remark(std::span<const RkRecord> records) {
  RemarkReport report;
  for (const RkRecord& rec : records) {
    ++report.records_checked;
    const auto top = 2 * static_cast<std::int64_t>(rec.base) - 2;
    const bool in_range = rec.r >= 0 && rec.r <= top;
    const bool b_case_ok = rec.case_tag != LemmaCase::B || rec.next_digit >= 1;
    if (!in_range || !b_case_ok) report.violations.push_back(rec.k);
  }
  return report;
}

ExpansionFormReport check_expansion_form(const NormalizedInstance& norm, unsigned long k) {
  if (k < 1) throw std::invalid_argument("check_expansion_form needs k >= 1");
  const RkRecord rec = classify(norm, k);
  const std::vector<std::int64_t> r = r_direct_range(norm, 1, k);
  GeneralWord word{2 * norm.base - 1, {}};
  for (std::int64_t v : r) word.digits.push_back(static_cast<Digit>(v));
  BigInt value = from_word(word, norm.base);

  const std::vector<Digit> alpha_digits = DigitStream(frac(norm.inv_alpha), norm.base).prefix(k + 1);
  // a_2 .. a_{k+1}
  std::vector<Digit> tail(alpha_digits.begin() + 1, alpha_digits.end());

  ExpansionFormReport report;
  report.k = k;
  report.case_tag = rec.case_tag;
  const auto b = static_cast<std::int64_t>(norm.base);
  const std::int64_t a = rec.next_digit;
  if (rec.r == b + a - 1 && a == 0) {
    report.incremented = true;
    value += 1;
  } else if (rec.r == a - 1 || rec.r == b + a - 1) {
    // a_2 .. a_k (a_{k+1} - 1); a >= 1 here.
    tail.back() -= 1;
  }
  const BigInt plain = from_word(std::span<const Digit>(tail), norm.base);
  const BigInt with_one = plain + ipow(BigInt(norm.base), k);
  report.rendered = to_word(value, norm.base).to_string();
  report.allowed = {to_word(plain, norm.base).to_string(), to_word(with_one, norm.base).to_string()};
  report.holds = value == plain || value == with_one;
  return report;
}

ExpansionSweep check_expansion_forms(const NormalizedInstance& norm, unsigned long k_max) {
  ExpansionSweep sweep;
  if (k_max < 1) return sweep;
  const std::vector<RkRecord> records = classify_range(norm, 1, k_max);
  const auto b = static_cast<std::int64_t>(norm.base);
  BigInt value = 0;      // [r_1 .. r_k]_b
  BigInt digits = 0;     // [a_2 .. a_{k+1}]_b
  BigInt power = 1;      // b^k
  for (const RkRecord& rec : records) {
    value = value * norm.base + rec.r;
    digits = digits * norm.base + rec.next_digit;
    power *= norm.base;
    const std::int64_t a = rec.next_digit;
    bool holds = false;
    if (rec.r == a || rec.r == b + a) {
      holds = value == digits || value == power + digits;
    } else if (rec.r == b + a - 1 && a == 0) {
      const BigInt bumped = value + 1;
      holds = bumped == digits || bumped == power + digits;
    } else if (rec.r == a - 1 || rec.r == b + a - 1) {
      const BigInt lowered = digits - 1;
      holds = value == lowered || value == power + lowered;
    }
    ++sweep.checked;
    if (!holds) sweep.violations.push_back(rec.k);
  }
  return sweep;
}

EventualPeriod reduce_eventual_period(std::span<const std::int64_t> block, std::int64_t cycle_start,
                                      std::int64_t cycle_period) {
  if (cycle_period < 1 || static_cast<std::int64_t>(block.size()) != cycle_start + cycle_period) {
    throw std::invalid_argument("block does not cover preperiod plus one period");
  }
  std::int64_t period = cycle_period;
  for (std::int64_t candidate = 1; candidate <= cycle_period; ++candidate) {
    if (cycle_period % candidate != 0) continue;
    bool ok = true;
    for (std::int64_t i = 0; i < cycle_period && ok; ++i) {
      ok = block[static_cast<std::size_t>(cycle_start + i)] ==
           block[static_cast<std::size_t>(cycle_start + (i + candidate) % cycle_period)];
    }
    if (ok) {
      period = candidate;
      break;
    }
  }
  std::int64_t pre = cycle_start;
  while (pre > 0 && value_at(block, cycle_start, cycle_period, pre) ==
                        value_at(block, cycle_start, cycle_period, pre + period)) {
    --pre;
  }
  return {pre, period};
}

std::optional<ResidueCycle> residue_cycle(const BigInt& modulus, unsigned base, std::size_t limit) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  std::map<BigInt, std::int64_t> seen;
  ResidueCycle cycle;
  BigInt rho = BigInt(base) % modulus;
  for (std::int64_t k = 1;; ++k) {
    auto it = seen.find(rho);
    if (it != seen.end()) {
      cycle.preperiod = it->second - 1;
      cycle.period = k - it->second;
      return cycle;
    }
    if (static_cast<std::size_t>(k) > limit) return std::nullopt;
    seen.emplace(rho, k);
    cycle.residues.push_back(rho);
    rho = (rho * base) % modulus;
  }
}

std::int64_t r_from_residue(const NormalizedInstance& norm, const BigInt& residue) {
  return closed_form(norm, residue);
}

bool verify_certificate(const NormalizedInstance& norm, const ResidueCycleCertificate& cert,
                        std::size_t replay_limit) {
  const std::int64_t len = cert.residue_preperiod + cert.residue_period;
  if (cert.residue_period < 1 || static_cast<std::int64_t>(cert.block.size()) != len) return false;
  if (cert.base != norm.base) return false;
  BigInt rho = BigInt(cert.base) % cert.modulus;
  BigInt cycle_entry;
  BigInt power = norm.base;
  for (std::int64_t k = 1; k <= len; ++k) {
    if (k == cert.residue_preperiod + 1) cycle_entry = rho;
    const std::int64_t expected = cert.block[static_cast<std::size_t>(k - 1)];
    if (r_from_residue(norm, rho) != expected) return false;
    if (static_cast<std::size_t>(k) <= replay_limit && closed_form(norm, power) != expected) return false;
    rho = (rho * cert.base) % cert.modulus;
    power *= norm.base;
  }
  // b^(len+1) mod p must land back on the cycle entry.
  return rho == cycle_entry;
}

PeriodicityVerdict detect_period(const NormalizedInstance& norm, std::size_t window) {
  PeriodicityVerdict verdict;
  verdict.window = window;
  if (!norm.alpha.is_rational()) {
    verdict.kind = PeriodicityVerdict::Kind::AperiodicByTheorem;
    verdict.reason = "alpha = " + norm.alpha.to_string() +
                     " is a quadratic irrational; r is ultimately periodic only for rational alpha";
    return verdict;
  }
  const BigRational alpha = *norm.alpha.as_rational();
  const BigInt modulus = alpha.get_num();
  const std::size_t limit = std::max<std::size_t>(window, std::size_t{1} << 20);
  const std::optional<ResidueCycle> cycle = residue_cycle(modulus, norm.base, limit);
  if (!cycle) {
    verdict.kind = PeriodicityVerdict::Kind::Inconclusive;
    verdict.reason = "b^k mod " + modulus.get_str() + " did not cycle within " + std::to_string(limit) + " steps";
    return verdict;
  }

  ResidueCycleCertificate cert;
  cert.modulus = modulus;
  cert.base = norm.base;
  cert.residue_preperiod = cycle->preperiod;
  cert.residue_period = cycle->period;
  for (const BigInt& rho : cycle->residues) cert.block.push_back(r_from_residue(norm, rho));
  if (!verify_certificate(norm, cert)) throw ConsistencyError("residue-cycle certificate failed to replay");

  const EventualPeriod reduced = reduce_eventual_period(cert.block, cert.residue_preperiod, cert.residue_period);
  const std::vector<std::int64_t> direct = r_direct_range(norm, 1, window);
  for (std::size_t i = 0; i < direct.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    if (direct[i] != value_at(cert.block, cert.residue_preperiod, cert.residue_period, k)) {
      throw ConsistencyError("r_" + std::to_string(k) + " disagrees with its residue-cycle prediction");
    }
  }

  verdict.kind = PeriodicityVerdict::Kind::Periodic;
  verdict.period = reduced;
  verdict.certified = true;
  verdict.reason = "r_k depends only on " + std::to_string(norm.base) + "^k mod " + modulus.get_str() +
                   ", which cycles with preperiod " + std::to_string(cert.residue_preperiod) + " and period " +
                   std::to_string(cert.residue_period);
  verdict.certificate = std::move(cert);
  return verdict;
}

PeriodicityVerdict detect_period_empirical(std::span<const std::int64_t> seq) {
  PeriodicityVerdict verdict;
  verdict.window = seq.size();
  const std::size_t n = seq.size();
  for (std::size_t period = 1; 3 * period <= n; ++period) {
    std::size_t start = n - period;
    while (start > 0 && seq[start - 1] == seq[start - 1 + period]) --start;
    if (n - start >= 3 * period) {
      verdict.kind = PeriodicityVerdict::Kind::Periodic;
      verdict.period = {static_cast<std::int64_t>(start), static_cast<std::int64_t>(period)};
      verdict.certified = false;
      verdict.reason = "empirical: repeats at least three times inside the window";
      return verdict;
    }
  }
  verdict.kind = PeriodicityVerdict::Kind::Inconclusive;
  verdict.reason = "no period repeating three times inside the window";
  return verdict;
}

}  // namespace logfloor
