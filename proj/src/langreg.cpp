#include "logfloor/langreg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

#include "logfloor/errors.hpp"

namespace logfloor {

namespace {

unsigned bound_of(const GeneralWord& w) {
  Digit top = 0;
  for (Digit d : w.digits) {
    if (d >= w.bound) throw std::invalid_argument("digit " + std::to_string(d) + " exceeds the word's bound");
    top = std::max(top, d);
  }
  return std::max<unsigned>(w.bound, top + 1);
}

std::string render(const std::vector<Digit>& digits) {
  std::string out;
  bool wide = std::any_of(digits.begin(), digits.end(), [](Digit d) { return d > 9; });
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(digits[i]);
  }
  return out.empty() ? "ε" : out;
}

constexpr std::size_t kSelfCheckLength = 60;

}  // namespace

std::string to_string(DigitSource::Kind kind) {
  switch (kind) {
    case DigitSource::Kind::FromRk: return "rk";
    case DigitSource::Kind::Periodic: return "periodic";
    case DigitSource::Kind::Explicit: return "explicit";
    case DigitSource::Kind::ThueMorseBlocks: return "tm-blocks";
  }
  return "?";
}

std::string to_string(RegularityVerdict::Kind kind) {
  switch (kind) {
    case RegularityVerdict::Kind::Regular: return "Regular";
    case RegularityVerdict::Kind::NonRegular: return "NonRegular";
    case RegularityVerdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DigitSource DigitSource::from_rk(NormalizedInstance norm) {
  DigitSource src;
  src.kind_ = Kind::FromRk;
  src.bound_ = 2 * norm.base - 1;
  src.leading_zero_ok_ = true;
  src.instance_ = std::move(norm);
  return src;
}

DigitSource DigitSource::periodic(GeneralWord preperiod, GeneralWord period, bool leading_zero_ok) {
  if (period.digits.empty()) throw std::invalid_argument("period word must be non-empty");
  DigitSource src;
  src.kind_ = Kind::Periodic;
  src.bound_ = std::max(bound_of(preperiod), bound_of(period));
  src.leading_zero_ok_ = leading_zero_ok;
  src.first_ = std::move(preperiod);
  src.second_ = std::move(period);
  return src;
}

DigitSource DigitSource::explicit_word(GeneralWord word, bool leading_zero_ok) {
  DigitSource src;
  src.kind_ = Kind::Explicit;
  src.bound_ = bound_of(word);
  src.leading_zero_ok_ = leading_zero_ok;
  src.first_ = std::move(word);
  return src;
}

DigitSource DigitSource::thue_morse_blocks(GeneralWord a, GeneralWord b) {
  if (a.digits.empty() || b.digits.empty()) throw std::invalid_argument("blocks must be non-empty");
  DigitSource src;
  src.kind_ = Kind::ThueMorseBlocks;
  src.bound_ = std::max(bound_of(a), bound_of(b));
  src.first_ = std::move(a);
  src.second_ = std::move(b);
  return src;
}

DigitSource DigitSource::with_prefix(const GeneralWord& prefix) const {
  DigitSource out = *this;
  out.bound_ = std::max(bound_, bound_of(prefix));
  std::vector<Digit> combined = prefix.digits;
  combined.insert(combined.end(), prefix_.begin(), prefix_.end());
  out.prefix_ = std::move(combined);
  return out;
}

std::optional<std::size_t> DigitSource::finite_length() const {
  if (kind_ != Kind::Explicit) return std::nullopt;
  return prefix_.size() + first_.digits.size();
}

std::vector<BigInt> DigitSource::emit(std::size_t count) const {
  std::vector<BigInt> out;
  if (const auto len = finite_length()) count = std::min(count, *len);
  out.reserve(count);
  for (std::size_t i = 0; i < prefix_.size() && out.size() < count; ++i) out.emplace_back(prefix_[i]);
  const std::size_t rest = count - out.size();
  if (rest == 0) return out;
  switch (kind_) {
    case Kind::FromRk: {
      out.push_back(c_value(*instance_, 1));
      if (rest > 1) {
        for (std::int64_t r : r_direct_range(*instance_, 1, rest - 1)) out.emplace_back(static_cast<long>(r));
      }
      break;
    }
    case Kind::Periodic: {
      const auto& pre = first_.digits;
      const auto& per = second_.digits;
      for (std::size_t i = 0; i < rest; ++i) {
        out.emplace_back(i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()]);
      }
      break;
    }
    case Kind::Explicit:
      for (std::size_t i = 0; i < rest; ++i) out.emplace_back(first_.digits[i]);
      break;
    case Kind::ThueMorseBlocks: {
      for (std::uint64_t j = 0; out.size() < count; ++j) {
        const auto& block = (std::popcount(j) % 2 == 0 ? first_ : second_).digits;
        for (Digit d : block) {
          if (out.size() == count) break;
          out.emplace_back(d);
        }
      }
      break;
    }
  }
  return out;
}

std::string DigitSource::describe() const {
  std::string head = prefix_.empty() ? "" : render(prefix_) + " · ";
  switch (kind_) {
    case Kind::FromRk:
      return head + "c_1 r_1 r_2 ... for alpha = " + instance_->alpha.to_string() +
             ", beta = " + instance_->beta.to_string() + ", b = " + std::to_string(instance_->base);
    case Kind::Periodic:
      return head + render(first_.digits) + " (" + render(second_.digits) + ")^omega";
    case Kind::Explicit:
      return head + render(first_.digits);
    case Kind::ThueMorseBlocks:
      return head + "Thue-Morse over blocks " + render(first_.digits) + ", " + render(second_.digits);
  }
  return "?";
}

std::optional<SourcePeriod> certified_period(const DigitSource& src, std::size_t window) {
  const std::size_t shift = src.prefix().size();
  switch (src.kind()) {
    case DigitSource::Kind::Periodic: {
      const std::size_t start = shift + src.first_part().digits.size();
      const std::size_t period = src.second_part().digits.size();
      std::vector<std::int64_t> block;
      for (const BigInt& d : src.emit(start + period)) block.push_back(d.get_si());
      const EventualPeriod reduced = reduce_eventual_period(block, static_cast<std::int64_t>(start),
                                                            static_cast<std::int64_t>(period));
      return SourcePeriod{static_cast<std::size_t>(reduced.preperiod), static_cast<std::size_t>(reduced.period),
                          std::nullopt};
    }
    case DigitSource::Kind::FromRk: {
      const PeriodicityVerdict verdict = detect_period(*src.instance(), window);
      if (verdict.kind != PeriodicityVerdict::Kind::Periodic || !verdict.certified) return std::nullopt;
      // r_{k+P} = r_k for k > preperiod, and u_k = r_k for k >= 1.
      return SourcePeriod{shift + static_cast<std::size_t>(verdict.period.preperiod) + 1,
                          static_cast<std::size_t>(verdict.period.period), verdict.certificate};
    }
    case DigitSource::Kind::Explicit:
    case DigitSource::Kind::ThueMorseBlocks:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<AperiodicityCertificate> aperiodicity_certificate(const DigitSource& src) {
  if (src.kind() == DigitSource::Kind::FromRk && !src.instance()->alpha.is_rational()) {
    return AperiodicityCertificate{
        "surd-alpha", "alpha = " + src.instance()->alpha.to_string() +
                          " is a quadratic irrational, so r (and u) is not ultimately periodic"};
  }
  if (src.kind() == DigitSource::Kind::ThueMorseBlocks) {
    const auto& a = src.first_part().digits;
    const auto& b = src.second_part().digits;
    if (a.size() == b.size() && a != b) {
      return AperiodicityCertificate{
          "thue-morse-blocks", "u is the image of the Thue-Morse word under the injective uniform block map 0 -> " +
                                   render(a) + ", 1 -> " + render(b) +
                                   "; the Thue-Morse word is not ultimately periodic and neither is its image"};
    }
  }
  return std::nullopt;
}

LanguageWords words(const DigitSource& src, unsigned base, std::size_t n_max) {
  if (base < 2) throw std::invalid_argument("base must be at least 2");
  const std::vector<BigInt> digits = src.emit(n_max + 1);
  LanguageWords lw;
  lw.base = base;
  if (digits.empty()) return lw;
  if (digits.front() == 0 && !src.leading_zero_ok()) {
    throw std::invalid_argument("u_0 = 0 needs the leading-zero convention flag");
  }
  lw.values.reserve(digits.size());
  lw.lengths.reserve(digits.size());
  BigInt value = 0;
  std::size_t length = 1;
  BigInt threshold = base;  // b^length
  for (const BigInt& d : digits) {
    value = value * base + d;
    while (value >= threshold) {
      threshold *= base;
      ++length;
    }
    lw.values.push_back(value);
    lw.lengths.push_back(length);
  }
  return lw;
}

LengthClaimReport verify_length_claim(LanguageWords& lw) {
  LengthClaimReport report;
  if (lw.size() < 2) {
    report.stabilized = true;
    lw.length_stabilization = 0;
    return report;
  }
  report.steps_checked = lw.size() - 1;
  std::size_t run = 0;
  bool apparent = false;
  for (std::size_t n = 0; n + 1 < lw.size(); ++n) {
    const std::size_t step = lw.lengths[n + 1] - lw.lengths[n];
    if (step == 1) {
      if (++run >= LengthClaimReport::kStableRun) apparent = true;
      continue;
    }
    run = 0;
    report.n = n + 1;
    if (step >= 2) {
      report.jumps.push_back(n);
      if (apparent) report.late_jumps.push_back(n);
    }
  }
  report.stabilized = 2 * report.n <= lw.size() - 1;
  lw.length_stabilization = report.n;
  return report;
}

namespace {

class WordCache {
 public:
  explicit WordCache(const LanguageWords& lw) : lw_(lw) {}
  const Word& at(std::size_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, lw_.word(n)).first;
    return it->second;
  }

 private:
  const LanguageWords& lw_;
  std::map<std::size_t, Word> cache_;
};

// z == v0 v1^m v2, where v0 = z0[0, split), v2 = z0[split, ...), v1 = z1[split, split + p).
bool matches_family(const Word& z, const Word& z0, const Word& z1, std::size_t split, std::size_t p, std::size_t m) {
  if (z.size() != z0.size() + m * p) return false;
  for (std::size_t i = 0; i < split; ++i) {
    if (z[i] != z0[i]) return false;
  }
  for (std::size_t i = 0; i < m * p; ++i) {
    if (z[split + i] != z1[split + i % p]) return false;
  }
  for (std::size_t i = split; i < z0.size(); ++i) {
    if (z[i + m * p] != z0[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<PatternCandidate> find_pattern(const LanguageWords& lw, std::size_t p, std::size_t residue,
                                             std::size_t min_index) {
  if (p < 1) throw std::invalid_argument("pattern period must be positive");
  if (residue >= p) throw std::invalid_argument("residue must be below the period");
  WordCache cache(lw);
  std::size_t n0 = residue;
  if (n0 < min_index) n0 += (min_index - n0 + p - 1) / p * p;
  for (; n0 + 2 * p < lw.size(); n0 += p) {
    if (lw.lengths[n0 + p] != lw.lengths[n0] + p) continue;
    const Word& z0 = cache.at(n0);
    const Word& z1 = cache.at(n0 + p);
    std::size_t lcp = 0;
    while (lcp < z0.size() && z0[lcp] == z1[lcp]) ++lcp;
    std::size_t lcs = 0;
    while (lcs < z0.size() && z0[z0.size() - 1 - lcs] == z1[z1.size() - 1 - lcs]) ++lcs;
    for (std::size_t split = 1; split <= std::min(lcp, z0.size()); ++split) {
      if (z0.size() - split > lcs) continue;
      if (z0[0] == 0) break;
      std::size_t m = 2;
      bool ok = true;
      for (; n0 + m * p < lw.size(); ++m) {
        if (lw.lengths[n0 + m * p] != lw.lengths[n0] + m * p ||
            !matches_family(cache.at(n0 + m * p), z0, z1, split, p, m)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      PatternCandidate c;
      c.v0 = z0.slice(0, split);
      c.v1 = z1.slice(split, p);
      c.v2 = z0.slice(split, z0.size() - split);
      c.n0 = n0;
      c.period = p;
      c.residue = residue;
      c.confirmed = m;
      return c;
    }
  }
  return std::nullopt;
}

BigInt CertifiedPattern::value_at(std::size_t m) const {
  Word w = v0;
  for (std::size_t i = 0; i < m; ++i) w += v1;
  w += v2;
  return from_word(w, v0.base());
}

Certification certify_pattern(const DigitSource& src, const LanguageWords& lw, const PatternCandidate& cand,
                              std::size_t window) {
  Certification out;
  const unsigned b = lw.base;
  const std::size_t p = cand.period;
  std::ostringstream detail;

  // (iv) digits < b, V0 canonical, |V1| = p.
  bool digits_ok = !cand.v0.empty() && cand.v0[0] != 0 && cand.v1.size() == p && p >= 1;
  for (const Word* w : {&cand.v0, &cand.v1, &cand.v2}) {
    if (!w->empty() && w->base() != b) digits_ok = false;
  }
  if (!digits_ok) {
    out.failed.push_back("iv");
    detail << "digit validity fails; ";
  }
  auto value = [&](const Word& w) { return w.empty() ? BigInt(0) : from_word(w, b); };

  // (i) m = 0 and m = 1 words.
  if (cand.n0 + p >= lw.size()) throw std::invalid_argument("language window does not reach w_{n0 + p}");
  const BigInt base_word = value(cand.v0 + cand.v2);
  const BigInt next_word = value(cand.v0 + cand.v1 + cand.v2);
  if (base_word != lw.values[cand.n0] || next_word != lw.values[cand.n0 + p] ||
      cand.v0.size() + cand.v2.size() != lw.lengths[cand.n0]) {
    out.failed.push_back("i");
    detail << "V0V2 or V0V1V2 differs from w_" << cand.n0 << " or w_" << cand.n0 + p << "; ";
  }

  // (ii) u has a certified period dividing p and the class sits past the preperiod.
  const std::optional<SourcePeriod> period = certified_period(src, window);
  BigInt block_value = 0;
  if (!period) {
    out.failed.push_back("ii");
    detail << "u has no certified eventual period; ";
  } else if (p % period->period != 0 || cand.n0 + 1 < period->start) {
    out.failed.push_back("ii");
    detail << "u has period " << period->period << " from index " << period->start << ", incompatible with p = " << p
           << " at n0 = " << cand.n0 << "; ";
  } else {
    const std::vector<BigInt> digits = src.emit(cand.n0 + p + 1);
    for (std::size_t i = cand.n0 + 1; i <= cand.n0 + p; ++i) block_value = block_value * b + digits[i];
  }

  // (iii) [V1 V2]_b - b^p [V2]_b equals the block [u_{n0+1} .. u_{n0+p}]_b.
  const BigInt constant = value(cand.v1 + cand.v2) - ipow(BigInt(b), p) * value(cand.v2);
  if (period && constant != block_value) {
    out.failed.push_back("iii");
    detail << "[V1V2] - b^p [V2] = " << constant.get_str() << " but the u-block gives " << block_value.get_str()
           << "; ";
  }
  if (!out.failed.empty()) {
    const std::vector<std::string> order{"i", "ii", "iii", "iv"};
    std::sort(out.failed.begin(), out.failed.end(), [&](const std::string& x, const std::string& y) {
      return std::find(order.begin(), order.end(), x) < std::find(order.begin(), order.end(), y);
    });
    out.detail = detail.str();
    return out;
  }

  CertifiedPattern cert;
  cert.v0 = cand.v0;
  cert.v1 = cand.v1;
  cert.v2 = cand.v2;
  cert.period = p;
  cert.n0 = cand.n0;
  cert.residue = cand.residue;
  cert.constant = constant;
  out.pattern = std::move(cert);
  return out;
}

RegularityVerdict decide_regularity(const DigitSource& src, unsigned base, std::size_t window) {
  RegularityVerdict verdict;
  verdict.window = window;

  if (const auto len = src.finite_length()) {
    const LanguageWords lw = words(src, base, *len == 0 ? 0 : *len - 1);
    for (std::size_t n = 0; n < lw.size(); ++n) verdict.exceptions.push_back(lw.word(n));
    std::sort(verdict.exceptions.begin(), verdict.exceptions.end());
    verdict.exceptions.erase(std::unique(verdict.exceptions.begin(), verdict.exceptions.end()),
                             verdict.exceptions.end());
    verdict.dfa = trie_dfa(verdict.exceptions, base);
    verdict.kind = RegularityVerdict::Kind::Regular;
    verdict.evidence = "finite source: the language is finite";
    return verdict;
  }

  if (auto cert = aperiodicity_certificate(src)) {
    verdict.kind = RegularityVerdict::Kind::NonRegular;
    verdict.aperiodicity = std::move(cert);
    verdict.evidence = "u is not ultimately periodic: " + verdict.aperiodicity->statement;
    return verdict;
  }

  verdict.source_period = certified_period(src, window);
  if (!verdict.source_period) {
    verdict.kind = RegularityVerdict::Kind::Inconclusive;
    std::ostringstream ev;
    ev << "no periodicity or aperiodicity certificate for " << src.describe() << "; window " << window
       << " pattern probes:";
    LanguageWords lw = words(src, base, window);
    for (std::size_t p = 1; p <= 8; ++p) {
      std::size_t found = 0;
      for (std::size_t r = 0; r < p; ++r) found += find_pattern(lw, p, r).has_value() ? 1 : 0;
      ev << " p=" << p << ":" << found << "/" << p;
    }
    verdict.evidence = ev.str();
    return verdict;
  }

  const SourcePeriod& sp = *verdict.source_period;
  const std::size_t p = sp.period;
  const std::size_t min_index = sp.start == 0 ? 0 : sp.start - 1;
  const std::size_t n_max = std::max(window, min_index + 4 * p + 64);
  LanguageWords lw = words(src, base, n_max);

  std::vector<WordPattern> families;
  std::size_t first_uncovered = 0;
  std::vector<std::size_t> anchors(p);
  for (std::size_t r = 0; r < p; ++r) {
    const std::optional<PatternCandidate> cand = find_pattern(lw, p, r, min_index);
    if (!cand) {
      verdict.kind = RegularityVerdict::Kind::Inconclusive;
      verdict.evidence = "u is ultimately periodic (period " + std::to_string(p) + " from index " +
                         std::to_string(sp.start) + ") but no word family was found for residue " +
                         std::to_string(r) + " within " + std::to_string(lw.size()) + " words";
      verdict.patterns.clear();
      return verdict;
    }
    Certification cert = certify_pattern(src, lw, *cand, window);
    if (!cert.certified()) {
      throw ConsistencyError("word family for residue " + std::to_string(r) + " failed certification: " +
                             cert.detail);
    }
    anchors[r] = cand->n0;
    first_uncovered = std::max(first_uncovered, cand->n0);
    families.push_back(cert.pattern->as_word_pattern());
    verdict.patterns.push_back(std::move(*cert.pattern));
  }
  for (std::size_t n = 0; n < first_uncovered; ++n) {
    if (n < anchors[n % p]) verdict.exceptions.push_back(lw.word(n));
  }
  std::sort(verdict.exceptions.begin(), verdict.exceptions.end());
  verdict.exceptions.erase(std::unique(verdict.exceptions.begin(), verdict.exceptions.end()),
                           verdict.exceptions.end());
  Dfa dfa = from_patterns(families, verdict.exceptions, base);

  // Every word of length <= kSelfCheckLength, enumerated directly.
  std::size_t reach = lw.size();
  while (lw.lengths.back() <= kSelfCheckLength) {
    reach *= 2;
    lw = words(src, base, reach);
  }
  std::vector<Word> members;
  for (std::size_t n = 0; n < lw.size() && lw.lengths[n] <= kSelfCheckLength; ++n) members.push_back(lw.word(n));
  const Equivalence check = equivalent_up_to_length(dfa, trie_dfa(members, base), kSelfCheckLength);
  if (!check.equivalent) {
    throw ConsistencyError("certified automaton disagrees with enumeration on " +
                           Word(base, check.witness).to_string());
  }
  verdict.self_check_length = kSelfCheckLength;
  verdict.dfa = std::move(dfa);
  verdict.kind = RegularityVerdict::Kind::Regular;
  verdict.evidence = "u is ultimately periodic with period " + std::to_string(p) + " from index " +
                     std::to_string(sp.start) + "; " + std::to_string(p) + " certified word families, " +
                     std::to_string(verdict.exceptions.size()) + " exceptions";
  return verdict;
}

}  // namespace logfloor
