#include <algorithm>
#include <chrono>

#include "logfloor/cli.hpp"
#include "logfloor/errors.hpp"

namespace logfloor::cli {

namespace {

template <typename T>
void read_field(const Json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario field '") + key + "': " + e.what());
  }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* where) {
  if (!j.is_object()) throw ParseError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ParseError(std::string("unknown ") + where + " key '" + key + "'");
    }
  }
}

Json strings(std::span<const BigInt> values) {
  Json out = Json::array();
  for (const BigInt& v : values) out.push_back(v.get_str());
  return out;
}

Json strings(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(w.to_string());
  return out;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
    start_ = now;
    return static_cast<std::int64_t>(ms);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Scenario scenario_from_json(const Json& j) {
  reject_unknown(j, {"name", "alpha", "beta", "base", "limits", "checks", "format"}, "scenario");
  Scenario s;
  read_field(j, "name", s.name);
  read_field(j, "alpha", s.alpha);
  read_field(j, "beta", s.beta);
  read_field(j, "base", s.base);
  read_field(j, "format", s.format);
  if (j.contains("limits")) {
    const Json& l = j.at("limits");
    reject_unknown(l, {"kmax", "nmax", "window", "kernel_depth", "kernel_prefix"}, "limits");
    read_field(l, "kmax", s.limits.kmax);
    read_field(l, "nmax", s.limits.nmax);
    read_field(l, "window", s.limits.window);
    read_field(l, "kernel_depth", s.limits.kernel_depth);
    read_field(l, "kernel_prefix", s.limits.kernel_prefix);
  }
  if (j.contains("checks")) {
    const Json& c = j.at("checks");
    reject_unknown(c, {"lemmas", "language", "kernel", "fk"}, "checks");
    read_field(c, "lemmas", s.checks.lemmas);
    read_field(c, "language", s.checks.language);
    read_field(c, "kernel", s.checks.kernel);
    read_field(c, "fk", s.checks.fk);
  }
  return s;
}

Json to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["base"] = s.base;
  j["limits"] = {{"kmax", s.limits.kmax},
                 {"nmax", s.limits.nmax},
                 {"window", s.limits.window},
                 {"kernel_depth", s.limits.kernel_depth},
                 {"kernel_prefix", s.limits.kernel_prefix}};
  j["checks"] = {{"lemmas", s.checks.lemmas},
                 {"language", s.checks.language},
                 {"kernel", s.checks.kernel},
                 {"fk", s.checks.fk}};
  j["format"] = s.format;
  return j;
}

ProblemInstance validate(const Scenario& s) {
  if (s.base < 2) throw ParseError("base must be at least 2");
  const Limits& l = s.limits;
  if (l.kmax < 1 || l.nmax < 1 || l.window < 1 || l.kernel_prefix < 1 || l.kernel_depth < 0) {
    throw ParseError("limits must be positive");
  }
  if (s.format != "json" && s.format != "compact") throw ParseError("format must be json or compact");
  ProblemInstance inst{parse_exact_real(s.alpha), parse_exact_real(s.beta), s.base};
  try {
    logfloor::validate(inst);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

Json to_json(const NormalizedInstance& norm) {
  return {{"alpha", norm.alpha.to_string()},
          {"beta", norm.beta.to_string()},
          {"base", norm.base},
          {"index_shift", norm.index_shift},
          {"value_offset", norm.value_offset},
          {"n_min", norm.n_min},
          {"domain_start", norm.domain_start}};
}

Json to_json(const RkRecord& rec) {
  return {{"k", rec.k},
          {"r", rec.r},
          {"case", std::string(1, to_char(rec.case_tag))},
          {"p_k", rec.pk},
          {"p_k1", rec.pk1},
          {"next_digit", rec.next_digit},
          {"c_k", rec.c_k.get_str()}};
}

Json to_json(const PeriodicityVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["certified"] = v.certified;
  if (v.kind == PeriodicityVerdict::Kind::Periodic) {
    j["preperiod"] = v.period.preperiod;
    j["period"] = v.period.period;
  }
  j["window"] = v.window;
  j["reason"] = v.reason;
  if (v.certificate) {
    j["certificate"] = {{"modulus", v.certificate->modulus.get_str()},
                        {"base", v.certificate->base},
                        {"residue_preperiod", v.certificate->residue_preperiod},
                        {"residue_period", v.certificate->residue_period},
                        {"block", v.certificate->block}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

Json to_json(const Dfa& dfa) {
  Json states = Json::array();
  for (Dfa::State s = 0; s < dfa.state_count(); ++s) {
    Json next = Json::array();
    for (Digit a = 0; a < dfa.alphabet_size(); ++a) next.push_back(dfa.next(s, a));
    states.push_back({{"id", s}, {"accepting", dfa.accepting(s)}, {"next", next}});
  }
  Json j;
  j["alphabet"] = dfa.alphabet_size();
  j["start"] = dfa.start();
  j["dead_state"] = dfa.dead_state() ? Json(*dfa.dead_state()) : Json(nullptr);
  j["states"] = std::move(states);
  return j;
}

Json to_json(const CertifiedPattern& p) {
  return {{"v0", p.v0.to_string()},
          {"v1", p.v1.to_string()},
          {"v2", p.v2.to_string()},
          {"period", p.period},
          {"residue", p.residue},
          {"n0", p.n0},
          {"constant", p.constant.get_str()}};
}

Json to_json(const RegularityVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  Json patterns = Json::array();
  for (const CertifiedPattern& p : v.patterns) patterns.push_back(to_json(p));
  j["patterns"] = std::move(patterns);
  j["exceptions"] = strings(v.exceptions);
  j["dfa_states"] = v.dfa ? Json(v.dfa->state_count()) : Json(nullptr);
  j["dfa_live_states"] = v.dfa ? Json(v.dfa->live_state_count()) : Json(nullptr);
  if (v.aperiodicity) {
    j["certificate"] = {{"type", "aperiodicity"}, {"name", v.aperiodicity->name},
                        {"statement", v.aperiodicity->statement}};
  } else if (v.source_period && v.kind == RegularityVerdict::Kind::Regular) {
    Json c = {{"type", "periodicity"}, {"start", v.source_period->start}, {"period", v.source_period->period}};
    if (v.source_period->certificate) c["residue_modulus"] = v.source_period->certificate->modulus.get_str();
    j["certificate"] = std::move(c);
  } else {
    j["certificate"] = nullptr;
  }
  j["self_check_length"] = v.self_check_length;
  j["window"] = v.window;
  j["evidence"] = v.evidence;
  return j;
}

Json to_json(const KernelReport& r) {
  return {{"base", r.base},
          {"depth", r.depth},
          {"prefix_len", r.prefix_len},
          {"distinct_by_depth", r.distinct_by_depth},
          {"distinct", r.distinct},
          {"closure", r.closure}};
}

Json to_json(const LengthClaimReport& r) {
  return {{"n", r.n},
          {"steps_checked", r.steps_checked},
          {"jumps", r.jumps},
          {"late_jumps", r.late_jumps},
          {"stabilized", r.stabilized}};
}

namespace {

unsigned auto_kernel_depth(unsigned base, std::int64_t terms, std::int64_t prefix) {
  unsigned depth = 0;
  BigInt need = prefix * base;
  while (depth < 8 && need <= terms) {
    ++depth;
    need *= base;
  }
  return depth;
}

}  // namespace

Json run_analyze(const Scenario& s, bool with_timings) {
  const ProblemInstance inst = validate(s);
  const Limits& lim = s.limits;
  Stopwatch clock;
  Json timings;
  Json report;
  report["schema"] = kReportSchema;
  report["tool_version"] = kToolVersion;
  report["scenario"] = to_json(s);

  const NormalizedInstance norm = normalize(inst);
  report["normalization"] = to_json(norm);
  timings["normalize"] = clock.lap_ms();

  Json evidence;
  const auto kmax = static_cast<unsigned long>(lim.kmax);
  const JumpData jd = c_seq(norm, kmax, lim.nmax);
  {
    const std::size_t shown = std::min<std::size_t>(jd.c.size(), 16);
    evidence["c"] = {{"k_max", kmax},
                     {"first", strings(std::span(jd.c).first(shown))},
                     {"integrality_hits", jd.integrality_hits},
                     {"checked_through_n", lim.nmax},
                     {"n0", jd.n0}};
  }
  timings["c"] = clock.lap_ms();

  const std::vector<std::int64_t> r_direct = r_direct_range(norm, 1, kmax);
  const std::vector<std::int64_t> r_rec = r_recur_range(norm, 1, kmax);
  if (r_direct != r_rec) throw ConsistencyError("closed-form r_k and c-recurrence r_k disagree");
  Json r_json;
  r_json["first"] = std::vector<std::int64_t>(r_direct.begin(), r_direct.begin() + std::min<std::size_t>(r_direct.size(), 32));
  r_json["routes_agree_through"] = kmax;
  if (s.checks.lemmas) {
    const std::vector<RkRecord> records = classify_range(norm, 1, kmax);
    const TransitionReport tr = check_transitions(records);
    const RemarkReport rr = check_remark(records);
    const ExpansionSweep es = check_expansion_forms(norm, kmax);
    r_json["lemma_checks"] = {{"classified", records.size()},
                              {"transition_violations", tr.violations},
                              {"remark_violations", rr.violations},
                              {"expansion_violations", es.violations}};
  }
  evidence["r"] = std::move(r_json);
  timings["r"] = clock.lap_ms();

  const auto window = static_cast<std::size_t>(lim.window);
  const PeriodicityVerdict r_verdict = detect_period(norm, window);
  timings["r_periodicity"] = clock.lap_ms();

  Json verdicts;
  verdicts["r_periodicity"] = to_json(r_verdict);

  std::optional<RegularityVerdict> lang;
  if (s.checks.language) {
    lang = decide_regularity(DigitSource::from_rk(norm), norm.base, window);
    verdicts["language_regularity"] = to_json(*lang);
    LanguageWords lw = words(DigitSource::from_rk(norm), norm.base, window);
    evidence["length_claim"] = to_json(verify_length_claim(lw));
    if (lang->dfa) evidence["dfa"] = to_json(*lang->dfa);
  } else {
    verdicts["language_regularity"] = nullptr;
  }
  timings["language"] = clock.lap_ms();

  if (s.checks.kernel) {
    // jump_word layout: indexed from n = 0, with v_n = 1 below the domain.
    std::vector<std::int64_t> v(static_cast<std::size_t>(jd.v_from), 1);
    v.insert(v.end(), jd.v.begin(), jd.v.end());
    const unsigned depth =
        lim.kernel_depth > 0 ? static_cast<unsigned>(lim.kernel_depth)
                             : auto_kernel_depth(norm.base, static_cast<std::int64_t>(v.size()), lim.kernel_prefix);
    try {
      evidence["kernel"] = to_json(kernel_explore(v, norm.base, depth, static_cast<std::size_t>(lim.kernel_prefix)));
      evidence["kernel"]["sequence"] = "v";
    } catch (const std::out_of_range& e) {
      evidence["kernel"] = {{"resource_limit", e.what()}};
    }
  }
  timings["kernel"] = clock.lap_ms();

  std::optional<PeriodicityVerdict> d_verdict;
  if (s.checks.fk) {
    const LevelCounts lc = f_counts(norm, lim.kmax);
    const JumpData wide = c_seq(norm, kmax + 17, 0);
    const std::optional<Alignment> al = align_m0(lc, wide);
    const DSequence ds = d_seq(lc, norm, al);
    const std::size_t shown = std::min<std::size_t>(lc.f.size(), 16);
    Json fk = {{"k_min", lc.k_min},
               {"f_first", strings(std::span(lc.f).first(shown))},
               {"enumerated_to", lc.enumerated_to},
               {"m0", al ? Json(al->m0) : Json(nullptr)},
               {"d_first", strings(std::span(ds.d).first(std::min<std::size_t>(ds.d.size(), 16)))},
               {"cross_checked", ds.cross_checked}};
    if (al) {
      fk["aligned_from"] = al->aligned_from;
      fk["other_offsets"] = al->other_offsets;
    }
    evidence["fk"] = std::move(fk);
    d_verdict = decide_d_periodicity(norm, static_cast<std::size_t>(std::min<std::int64_t>(lim.kmax, lim.window)));
    verdicts["d_periodicity"] = to_json(*d_verdict);
  } else {
    verdicts["d_periodicity"] = nullptr;
  }
  timings["fk"] = clock.lap_ms();

  // u is b-regular exactly when alpha is rational; every link must agree.
  const bool rational = norm.alpha.is_rational();
  const bool r_periodic = r_verdict.kind == PeriodicityVerdict::Kind::Periodic && r_verdict.certified;
  const bool r_aperiodic = r_verdict.kind == PeriodicityVerdict::Kind::AperiodicByTheorem;
  auto contradiction = [&](const std::string& what) {
    throw ConsistencyError("verdict chain disagrees for alpha = " + norm.alpha.to_string() + ": " + what);
  };
  if (r_periodic && !rational) contradiction("r certified periodic for irrational alpha");
  if (r_aperiodic && rational) contradiction("r aperiodic for rational alpha");
  if (lang) {
    if (lang->kind == RegularityVerdict::Kind::Regular && !r_periodic) contradiction("regular language, r not periodic");
    if (lang->kind == RegularityVerdict::Kind::NonRegular && !r_aperiodic) contradiction("non-regular language, r periodic");
  }
  if (d_verdict) {
    if ((d_verdict->kind == PeriodicityVerdict::Kind::Periodic) != r_periodic) contradiction("d and r periodicity differ");
  }
  Json u;
  if (r_periodic && (!lang || lang->kind == RegularityVerdict::Kind::Regular)) {
    u["kind"] = "Regular";
    u["reason"] = "alpha is rational; r is ultimately periodic with a residue-cycle certificate";
  } else if (r_aperiodic && (!lang || lang->kind == RegularityVerdict::Kind::NonRegular)) {
    u["kind"] = "NonRegular";
    u["reason"] = "alpha is a quadratic irrational; r is not ultimately periodic";
  } else {
    u["kind"] = "Inconclusive";
    u["reason"] = "a link of the chain produced no certificate";
  }
  u["alpha_rational"] = rational;
  verdicts["u_regularity"] = std::move(u);

  report["verdicts"] = std::move(verdicts);
  report["evidence"] = std::move(evidence);
  if (with_timings) report["timings_ms"] = std::move(timings);
  return report;
}

}  // namespace logfloor::cli
