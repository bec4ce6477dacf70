// The base-changed language of a digit sequence u = u_0 u_1 u_2 ...: the
// canonical base-b expansions of w_n = [u_0 .. u_n]_b, where the digits u_i
// may exceed b - 1. The language is regular exactly when u is ultimately
// periodic. Regular verdicts are backed by certified word families
// V0 V1^m V2; non-regular verdicts by a named aperiodicity certificate.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logfloor/automata.hpp"
#include "logfloor/floorlog.hpp"
#include "logfloor/numeration.hpp"
#include "logfloor/rkseq.hpp"

namespace logfloor {

class DigitSource {
 public:
  enum class Kind { FromRk, Periodic, Explicit, ThueMorseBlocks };

  /// u_0 = c_1 (a value, possibly >= b), then u_k = r_k for k >= 1, so that
  /// w_n = c_{n+1}.
  static DigitSource from_rk(NormalizedInstance norm);
  /// preperiod · period^omega. period must be non-empty.
  static DigitSource periodic(GeneralWord preperiod, GeneralWord period, bool leading_zero_ok = false);
  /// A finite sequence; the language has one word per prefix.
  static DigitSource explicit_word(GeneralWord word, bool leading_zero_ok = false);
  /// The Thue-Morse word 0110 1001 ... with 0 -> a and 1 -> b.
  static DigitSource thue_morse_blocks(GeneralWord a, GeneralWord b);

  /// The same source with `prefix` emitted first.
  DigitSource with_prefix(const GeneralWord& prefix) const;

  Kind kind() const { return kind_; }
  /// Every emitted digit is < bound, except u_0 of a FromRk source.
  unsigned bound() const { return bound_; }
  bool leading_zero_ok() const { return leading_zero_ok_; }
  const std::vector<Digit>& prefix() const { return prefix_; }
  /// Present for FromRk sources.
  const std::optional<NormalizedInstance>& instance() const { return instance_; }
  const GeneralWord& first_part() const { return first_; }
  const GeneralWord& second_part() const { return second_; }
  /// Number of digits for Explicit sources; nullopt for infinite ones.
  std::optional<std::size_t> finite_length() const;

  /// u_0 .. u_{count-1}, truncated for finite sources.
  std::vector<BigInt> emit(std::size_t count) const;

  std::string describe() const;

 private:
  DigitSource() = default;

  Kind kind_ = Kind::Explicit;
  unsigned bound_ = 2;
  bool leading_zero_ok_ = false;
  std::vector<Digit> prefix_;
  std::optional<NormalizedInstance> instance_;
  GeneralWord first_;   // Periodic: preperiod, Explicit: word, ThueMorseBlocks: block a
  GeneralWord second_;  // Periodic: period, ThueMorseBlocks: block b
};

std::string to_string(DigitSource::Kind kind);

/// u_{n + period} = u_n for every n >= start (0-based).
struct SourcePeriod {
  std::size_t start = 0;
  std::size_t period = 1;
  /// Residue-cycle certificate for r when the source is FromRk.
  std::optional<ResidueCycleCertificate> certificate;
};

/// Provable eventual period of u, or nullopt when none is available
/// (aperiodic, finite, or a FromRk source whose certificate failed).
std::optional<SourcePeriod> certified_period(const DigitSource& src, std::size_t window = 1000);

struct AperiodicityCertificate {
  std::string name;
  std::string statement;
};

/// Structural certificates only: surd alpha, or Thue-Morse over two distinct
/// blocks of equal length.
std::optional<AperiodicityCertificate> aperiodicity_certificate(const DigitSource& src);

struct LanguageWords {
  unsigned base = 2;
  /// values[n] = w_n.
  std::vector<BigInt> values;
  /// lengths[n] = |(w_n)_b|.
  std::vector<std::size_t> lengths;
  std::optional<std::size_t> length_stabilization;

  std::size_t size() const { return values.size(); }
  Word word(std::size_t n) const { return to_word(values.at(n), base); }
};

/// w_0 .. w_{n_max} (fewer for finite sources). Throws std::invalid_argument
/// when u_0 = 0 and the source does not allow a leading zero.
LanguageWords words(const DigitSource& src, unsigned base, std::size_t n_max);

struct LengthClaimReport {
  /// Least N with |w_{n+1}| = |w_n| + 1 for every computed n >= N.
  std::size_t n = 0;
  std::size_t steps_checked = 0;
  /// n with |w_{n+1}| - |w_n| >= 2.
  std::vector<std::size_t> jumps;
  /// Jumps after a run of kStableRun one-digit steps. Non-empty would
  /// contradict eventual one-digit growth on this data.
  std::vector<std::size_t> late_jumps;
  /// N lies in the first half of the computed range.
  bool stabilized = false;

  static constexpr std::size_t kStableRun = 64;
};

/// Fewer than two words pass vacuously with N = 0. Records N in
/// lw.length_stabilization.
LengthClaimReport verify_length_claim(LanguageWords& lw);

struct PatternCandidate {
  Word v0;
  Word v1;
  Word v2;
  std::size_t n0 = 0;
  std::size_t period = 1;
  std::size_t residue = 0;
  /// Window words confirmed, m = 0, 1, 2, ...
  std::size_t confirmed = 0;
};

/// Earliest n0 >= min_index with n0 = residue (mod p) such that every window
/// word w_{n0 + m p} equals V0 V1^m V2 with |V1| = p, V0 non-empty with a
/// nonzero leading digit. At least three words must be confirmed. Ties
/// between splits go to the shortest V0.
std::optional<PatternCandidate> find_pattern(const LanguageWords& lw, std::size_t p, std::size_t residue,
                                             std::size_t min_index = 0);

struct CertifiedPattern {
  Word v0;
  Word v1;
  Word v2;
  std::size_t period = 1;
  std::size_t n0 = 0;
  std::size_t residue = 0;
  /// [V1 V2]_b - b^p [V2]_b, equal to [u_{n+1} .. u_{n+p}]_b on the class.
  BigInt constant;

  /// [V0 V1^m V2]_b.
  BigInt value_at(std::size_t m) const;
  WordPattern as_word_pattern() const { return {v0, v1, v2}; }
};

struct Certification {
  std::optional<CertifiedPattern> pattern;
  /// Failing clauses among "i" (m = 0 and m = 1 words), "ii" (period of u
  /// divides p and the class lies in the periodic part), "iii" (constant
  /// identity), "iv" (digit validity). Clause i implies clause iii through
  /// the Horner recurrence, so a wrong split usually fails both.
  std::vector<std::string> failed;
  std::string detail;

  bool certified() const { return pattern.has_value(); }
};

/// lw must be generated from src and contain w_{n0 + p}.
Certification certify_pattern(const DigitSource& src, const LanguageWords& lw, const PatternCandidate& candidate,
                              std::size_t window = 1000);

struct RegularityVerdict {
  enum class Kind { Regular, NonRegular, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<Dfa> dfa;
  std::vector<CertifiedPattern> patterns;
  std::vector<Word> exceptions;
  std::optional<AperiodicityCertificate> aperiodicity;
  std::optional<SourcePeriod> source_period;
  std::size_t window = 0;
  /// Regular verdicts: the DFA agrees with the enumerated words on every
  /// string up to this length.
  std::size_t self_check_length = 0;
  std::string evidence;
};

std::string to_string(RegularityVerdict::Kind kind);

/// Regular needs a certified pattern for every residue class. Throws
/// ConsistencyError if a certified DFA disagrees with direct enumeration.
RegularityVerdict decide_regularity(const DigitSource& src, unsigned base, std::size_t window = 1000);

}  // namespace logfloor
