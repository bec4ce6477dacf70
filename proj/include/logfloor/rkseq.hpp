// The digit-recurrence sequence r_k with c_{k+1} = b c_k + r_k.
//
// r_k has a closed form in the fractional parts of (b^k - beta)/alpha and
// beta/alpha, and a four-way classification by the propositions
//   P_k : frac(b^k / alpha) >= beta / alpha
// which compare the tail 0.a_{k+1}a_{k+2}... of the base-b expansion of
// 1/alpha with 0.b_1b_2... of beta/alpha. This module evaluates both routes
// exactly, checks the structural identities between them, and decides
// ultimate periodicity of r with a replayable certificate.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logfloor/floorlog.hpp"
#include "logfloor/numeration.hpp"

namespace logfloor {

/// Which of the four closed forms r_k takes, writing a = a_{k+1}:
///   A: r = a        (P_k,  P_{k+1})
///   B: r = a - 1    (P_k, !P_{k+1})
///   C: r = b + a    (!P_k,  P_{k+1})
///   D: r = b + a - 1 (!P_k, !P_{k+1})
enum class LemmaCase { A, B, C, D };

char to_char(LemmaCase c);

struct PropositionPk {
  unsigned long k = 0;
  bool holds = false;
};

struct RkRecord {
  unsigned long k = 0;
  unsigned base = 2;
  std::int64_t r = 0;
  LemmaCase case_tag = LemmaCase::A;
  bool pk = false;
  bool pk1 = false;
  /// a_{k+1}, the (k+1)-th digit of frac(1/alpha).
  Digit next_digit = 0;
  BigInt c_k;
};

/// r_k = floor(b frac((b^k - beta)/alpha) + (b - 1) frac(beta/alpha)), k >= 0.
std::int64_t r_direct(const NormalizedInstance& norm, unsigned long k);
std::vector<std::int64_t> r_direct_range(const NormalizedInstance& norm, unsigned long k_first,
                                         unsigned long k_last);

/// r_k = c_{k+1} - b c_k, k >= 1.
std::int64_t r_recur(const NormalizedInstance& norm, unsigned long k);
std::vector<std::int64_t> r_recur_range(const NormalizedInstance& norm, unsigned long k_first,
                                        unsigned long k_last);

PropositionPk eval_pk(const NormalizedInstance& norm, unsigned long k);

/// Classifies r_k by (P_k, P_{k+1}) and checks the case formula against
/// r_direct. Throws ConsistencyError on mismatch.
RkRecord classify(const NormalizedInstance& norm, unsigned long k);
std::vector<RkRecord> classify_range(const NormalizedInstance& norm, unsigned long k_first,
                                     unsigned long k_last);

struct TransitionReport {
  std::size_t pairs_checked = 0;
  /// k such that the pair (r_k, r_{k+1}) breaks one of the two equivalences
  ///   r_k in {a, b+a}     <=> r_{k+1} in {a', a'-1}
  ///   r_k in {a-1, b+a-1} <=> r_{k+1} in {b+a', b+a'-1}.
  std::vector<unsigned long> violations;
};

/// Records must have consecutive k. A single record passes vacuously.
TransitionReport check_transitions(std::span<const RkRecord> records);

struct RemarkReport {
  std::size_t records_checked = 0;
  /// k with r_k outside [0, 2b-2], or case B with a_{k+1} == 0.
  std::vector<unsigned long> violations;
};

RemarkReport check_remark(std::span<const RkRecord> records);

struct ExpansionFormReport {
  unsigned long k = 0;
  LemmaCase case_tag = LemmaCase::A;
  /// The D case with a_{k+1} = 0 tests [r_1..r_k]_b + 1 instead.
  bool incremented = false;
  std::string rendered;
  std::vector<std::string> allowed;
  bool holds = false;
};

/// Renders ([r_1 .. r_k]_b)_b and checks it against the two-element set of
/// words allowed for the case of r_k. Words are compared as canonical
/// expansions, so a leading zero in a_2 .. a_{k+1} is dropped.
ExpansionFormReport check_expansion_form(const NormalizedInstance& norm, unsigned long k);

struct ExpansionSweep {
  std::size_t checked = 0;
  std::vector<unsigned long> violations;
};

/// Same check for every k in [1, k_max], accumulating values incrementally.
ExpansionSweep check_expansion_forms(const NormalizedInstance& norm, unsigned long k_max);

/// A sequence s_1, s_2, ... with s_{k + period} = s_k for all k > preperiod.
struct EventualPeriod {
  std::int64_t preperiod = 0;
  std::int64_t period = 1;
};

/// Minimal (preperiod, period) of a sequence known to be periodic with
/// period cycle_period from index cycle_start + 1 on. block holds s_1 ..
/// s_{cycle_start + cycle_period}.
EventualPeriod reduce_eventual_period(std::span<const std::int64_t> block, std::int64_t cycle_start,
                                      std::int64_t cycle_period);

/// Certificate for rational alpha = p/q: r_k depends only on b^k mod p, and
/// that residue sequence cycles.
struct ResidueCycleCertificate {
  BigInt modulus;
  unsigned base = 2;
  std::int64_t residue_preperiod = 0;
  std::int64_t residue_period = 1;
  /// Sequence values for k = 1 .. residue_preperiod + residue_period.
  std::vector<std::int64_t> block;
};

struct PeriodicityVerdict {
  enum class Kind { Periodic, AperiodicByTheorem, Inconclusive };
  Kind kind = Kind::Inconclusive;
  EventualPeriod period;
  bool certified = false;
  std::optional<ResidueCycleCertificate> certificate;
  std::string reason;
  std::size_t window = 0;
};

std::string to_string(PeriodicityVerdict::Kind kind);

/// b^k mod p for k = 1, 2, ... until the first repeat; returns
/// (residue_preperiod, residue_period, residues) or nullopt past `limit` steps.
struct ResidueCycle {
  std::int64_t preperiod = 0;
  std::int64_t period = 1;
  std::vector<BigInt> residues;  // k = 1 .. preperiod + period
};
std::optional<ResidueCycle> residue_cycle(const BigInt& modulus, unsigned base, std::size_t limit);

/// r_k for rational alpha = p/q evaluated from the residue rho = b^k mod p.
std::int64_t r_from_residue(const NormalizedInstance& norm, const BigInt& residue);

/// Rational alpha: certified Periodic from the cycle of b^k mod p.
/// Surd alpha: AperiodicByTheorem. The first `window` terms are replayed
/// against r_direct.
PeriodicityVerdict detect_period(const NormalizedInstance& norm, std::size_t window);

/// Recomputes the residues, checks the cycle closes and that every block
/// value matches r_from_residue; terms up to replay_limit are also compared
/// with r_direct.
bool verify_certificate(const NormalizedInstance& norm, const ResidueCycleCertificate& cert,
                        std::size_t replay_limit = 256);

/// For streams with no algebraic certificate: the smallest period (then
/// preperiod) that repeats at least three times inside the window, reported
/// as uncertified Periodic, or Inconclusive.
PeriodicityVerdict detect_period_empirical(std::span<const std::int64_t> seq);

}  // namespace logfloor
