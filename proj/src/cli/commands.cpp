#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logfloor/cli.hpp"
#include "logfloor/errors.hpp"

namespace logfloor::cli {

namespace {

struct InstanceOptions {
  std::string alpha;
  std::string beta = "0";
  unsigned base = 2;

  void attach(CLI::App& app, bool alpha_required = true) {
    auto* a = app.add_option("--alpha", alpha, "alpha > 0, e.g. 3/2, sqrt(2), 1/2+1/2*sqrt(5)");
    if (alpha_required) a->required();
    app.add_option("--beta", beta, "beta, in the same quadratic field as alpha")->capture_default_str();
    app.add_option("--base", base, "base b >= 2")->capture_default_str();
  }
  ProblemInstance instance() const {
    ProblemInstance inst{parse_exact_real(alpha), parse_exact_real(beta), base};
    try {
      validate(inst);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return inst;
  }
};

// "1002" or "1,0,10,2".
GeneralWord parse_digits(const std::string& text) {
  GeneralWord w;
  if (text.empty() || text == "ε") return w;
  std::vector<std::string> parts;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  } else {
    for (char ch : text) parts.emplace_back(1, ch);
  }
  Digit top = 0;
  for (const std::string& part : parts) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad digit '" + part + "' in '" + text + "'");
    }
    const unsigned long d = std::stoul(part);
    w.digits.push_back(static_cast<Digit>(d));
    top = std::max(top, static_cast<Digit>(d));
  }
  w.bound = std::max<unsigned>(2, top + 1);
  return w;
}

struct SourceOptions {
  std::string kind = "rk";
  InstanceOptions inst;
  std::string pre;
  std::string period;
  std::string word;
  std::string block_a = "10";
  std::string block_b = "02";
  std::string prefix;
  bool leading_zero = false;

  void attach(CLI::App& app) {
    app.add_option("--source", kind, "digit source")
        ->check(CLI::IsMember({"rk", "periodic", "explicit", "tm-blocks"}))
        ->capture_default_str();
    inst.attach(app, false);
    app.add_option("--pre", pre, "periodic source: preperiod digits");
    app.add_option("--period", period, "periodic source: period digits");
    app.add_option("--word", word, "explicit source: digits");
    app.add_option("--block-a", block_a, "tm-blocks source: image of 0")->capture_default_str();
    app.add_option("--block-b", block_b, "tm-blocks source: image of 1")->capture_default_str();
    app.add_option("--prefix", prefix, "digits emitted before the source");
    app.add_flag("--leading-zero", leading_zero, "accept u_0 = 0");
  }

  DigitSource source() const {
    DigitSource src = [&] {
      if (kind == "rk") {
        if (inst.alpha.empty()) throw ParseError("--source rk needs --alpha");
        return DigitSource::from_rk(normalize(inst.instance()));
      }
      if (kind == "periodic") {
        if (period.empty()) throw ParseError("--source periodic needs --period");
        return DigitSource::periodic(parse_digits(pre), parse_digits(period), leading_zero);
      }
      if (kind == "explicit") return DigitSource::explicit_word(parse_digits(word), leading_zero);
      return DigitSource::thue_morse_blocks(parse_digits(block_a), parse_digits(block_b));
    }();
    if (!prefix.empty()) src = src.with_prefix(parse_digits(prefix));
    return src;
  }
  unsigned base() const { return inst.base; }
};

void emit(std::ostream& out, const Json& j, bool compact) { out << (compact ? j.dump() : j.dump(2)) << '\n'; }

std::string join(const std::vector<std::int64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

int exit_code_for(const std::exception_ptr& ep, std::string& message) {
  try {
    std::rethrow_exception(ep);
  } catch (const ConsistencyError& e) {
    message = std::string("internal consistency failure: ") + e.what();
    return kInconsistent;
  } catch (const std::exception& e) {
    message = e.what();
    return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of floor(log_b(alpha n + beta)) and its b-regularity", "logfloor"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  bool compact = false;
  app.add_flag("--compact", compact, "single-line JSON");

  // seq
  auto* seq = app.add_subcommand("seq", "u_n = floor(log_b(alpha n + beta)) for n in [from, to]");
  InstanceOptions seq_inst;
  std::int64_t seq_from = -1;
  std::int64_t seq_to = -1;
  bool seq_diff = false;
  bool seq_json = false;
  seq_inst.attach(*seq);
  seq->add_option("--from", seq_from, "first n (default: least n with alpha n + beta > 0)");
  seq->add_option("--to", seq_to, "last n (default: from + 15)");
  seq->add_flag("--diff", seq_diff, "print v_n = u_{n+1} - u_n instead");
  seq->add_flag("--json", seq_json, "JSON array output");

  // rk
  auto* rk = app.add_subcommand("rk", "classified r_k records, k = 1..kmax");
  InstanceOptions rk_inst;
  std::int64_t rk_kmax = 200;
  rk_inst.attach(*rk);
  rk->add_option("--kmax", rk_kmax)->capture_default_str()->check(CLI::PositiveNumber);

  // digits
  auto* digits = app.add_subcommand("digits", "base-b digits of an exact real");
  std::string digits_value;
  unsigned digits_base = 2;
  std::size_t digits_count = 64;
  digits->add_option("--value", digits_value, "exact real, e.g. 1/2*sqrt(2)")->required();
  digits->add_option("--base", digits_base)->capture_default_str();
  digits->add_option("--count", digits_count, "fractional digits")->capture_default_str();

  // language
  auto* language = app.add_subcommand("language", "words of the base-changed language and the length claim");
  SourceOptions lang_src;
  std::int64_t lang_nmax = 100000;
  std::int64_t lang_window = 1000;
  std::size_t lang_show = 32;
  lang_src.attach(*language);
  language->add_option("--nmax", lang_nmax, "words for the length claim")->capture_default_str();
  language->add_option("--window", lang_window, "words searched for word families")->capture_default_str();
  language->add_option("--show", lang_show, "words printed")->capture_default_str();

  // decide
  auto* decide = app.add_subcommand("decide", "regularity verdict for the base-changed language");
  SourceOptions decide_src;
  std::int64_t decide_window = 1000;
  decide_src.attach(*decide);
  decide->add_option("--window", decide_window)->capture_default_str();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "b-kernel exploration of the jump indicator or of v");
  InstanceOptions kernel_inst;
  unsigned kernel_depth = 0;
  std::size_t kernel_prefix = 64;
  std::int64_t kernel_nmax = 100000;
  std::string kernel_seq = "chi";
  kernel_inst.attach(*kernel);
  kernel->add_option("--depth", kernel_depth, "depth (default: deepest fitting in nmax, at most 8)");
  kernel->add_option("--prefix", kernel_prefix, "terms compared per kernel element")->capture_default_str();
  kernel->add_option("--nmax", kernel_nmax, "terms generated")->capture_default_str();
  kernel->add_option("--seq", kernel_seq, "chi: indicator of {c_k}; v: v_n from the domain start")
      ->check(CLI::IsMember({"chi", "v"}))
      ->capture_default_str();

  // fk
  auto* fk = app.add_subcommand("fk", "level counts f_k, d_k and the periodicity of d");
  InstanceOptions fk_inst;
  std::int64_t fk_kmax = 200;
  fk_inst.attach(*fk);
  fk->add_option("--kmax", fk_kmax)->capture_default_str()->check(CLI::PositiveNumber);

  // dfa
  auto* dfa = app.add_subcommand("dfa", "minimal automaton of a regular base-changed language");
  SourceOptions dfa_src;
  std::int64_t dfa_window = 1000;
  bool dfa_dot = false;
  bool dfa_dfao = false;
  dfa_src.attach(*dfa);
  dfa->add_option("--window", dfa_window)->capture_default_str();
  dfa->add_flag("--dot", dfa_dot, "Graphviz output");
  dfa->add_flag("--dfao", dfa_dfao, "automaton with output for the set of language values");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "full pipeline report");
  Scenario flags;
  std::string scenario_file;
  std::string batch_file;
  bool no_lemmas = false;
  bool no_language = false;
  bool no_kernel = false;
  bool no_fk = false;
  bool no_timings = false;
  auto* a_alpha = analyze->add_option("--alpha", flags.alpha);
  auto* a_beta = analyze->add_option("--beta", flags.beta);
  auto* a_base = analyze->add_option("--base", flags.base);
  auto* a_name = analyze->add_option("--name", flags.name);
  auto* a_kmax = analyze->add_option("--kmax", flags.limits.kmax);
  auto* a_nmax = analyze->add_option("--nmax", flags.limits.nmax);
  auto* a_window = analyze->add_option("--window", flags.limits.window);
  auto* a_kdepth = analyze->add_option("--kernel-depth", flags.limits.kernel_depth);
  auto* a_kprefix = analyze->add_option("--kernel-prefix", flags.limits.kernel_prefix);
  analyze->add_flag("--no-lemmas", no_lemmas);
  analyze->add_flag("--no-language", no_language);
  analyze->add_flag("--no-kernel", no_kernel);
  analyze->add_flag("--no-fk", no_fk);
  analyze->add_flag("--no-timings", no_timings, "omit the timings field");
  auto* a_scenario = analyze->add_option("--scenario", scenario_file, "scenario JSON file");
  auto* a_batch = analyze->add_option("--batch", batch_file, "JSON array of scenarios, run concurrently");
  a_scenario->excludes(a_batch);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (seq->parsed()) {
      const ProblemInstance inst = seq_inst.instance();
      const NormalizedInstance norm = normalize(inst);
      const std::int64_t from = seq_from >= 0 ? seq_from : norm.n_min;
      const std::int64_t to = seq_to >= 0 ? seq_to : from + 15;
      if (to < from) throw ParseError("--to must not be below --from");
      std::vector<std::int64_t> u = u_original(inst, from, seq_diff ? to + 1 : to);
      if (seq_diff) {
        for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] = u[i + 1] - u[i];
        u.pop_back();
      }
      if (seq_json) {
        emit(out, Json(u), true);
      } else {
        out << join(u) << '\n';
      }
    } else if (rk->parsed()) {
      const NormalizedInstance norm = normalize(rk_inst.instance());
      Json list = Json::array();
      for (const RkRecord& rec : classify_range(norm, 1, static_cast<unsigned long>(rk_kmax))) {
        list.push_back(to_json(rec));
      }
      emit(out, list, compact);
    } else if (digits->parsed()) {
      if (digits_base < 2) throw ParseError("base must be at least 2");
      const ExactReal x = parse_exact_real(digits_value);
      const BigInt whole = floor(x);
      if (whole < 0) throw ParseError("digits needs a non-negative value");
      Word frac_digits(digits_base, digit_stream(frac(x), digits_base, digits_count));
      out << to_word(whole, digits_base).to_string() << (digits_base > 10 ? ";" : ".")
          << frac_digits.to_string() << '\n';
    } else if (language->parsed()) {
      const DigitSource src = lang_src.source();
      LanguageWords lw = words(src, lang_src.base(), static_cast<std::size_t>(lang_nmax));
      Json j;
      j["source"] = src.describe();
      j["base"] = lang_src.base();
      Json shown = Json::array();
      for (std::size_t n = 0; n < std::min(lang_show, lw.size()); ++n) {
        shown.push_back({{"n", n}, {"value", lw.values[n].get_str()}, {"word", lw.word(n).to_string()}});
      }
      j["words"] = std::move(shown);
      j["computed"] = lw.size();
      if (lw.size() >= 2) j["length_claim"] = to_json(verify_length_claim(lw));
      if (auto period = certified_period(src, static_cast<std::size_t>(lang_window))) {
        j["u_period"] = {{"start", period->start}, {"period", period->period}};
      } else {
        j["u_period"] = nullptr;
      }
      emit(out, j, compact);
    } else if (decide->parsed()) {
      const RegularityVerdict v =
          decide_regularity(decide_src.source(), decide_src.base(), static_cast<std::size_t>(decide_window));
      emit(out, to_json(v), compact);
    } else if (kernel->parsed()) {
      const NormalizedInstance norm = normalize(kernel_inst.instance());
      if (kernel_nmax < 1) throw ParseError("--nmax must be positive");
      std::vector<std::int64_t> seq_values;
      if (kernel_seq == "chi") {
        // c_k grows like b^k / alpha, so nmax terms need about log_b(nmax) + log_b(b / alpha) levels.
        unsigned long levels = 1;
        while (c_value(norm, levels) <= kernel_nmax) ++levels;
        const JumpData jd = c_seq(norm, levels, 0);
        const auto chi = characteristic_word(jd.c, static_cast<std::size_t>(kernel_nmax) - 1);
        seq_values.assign(chi.begin(), chi.end());
      } else {
        seq_values = jump_word(norm, kernel_nmax - 1);
      }
      unsigned depth = kernel_depth;
      if (depth == 0) {
        BigInt need = BigInt(static_cast<unsigned long>(kernel_prefix)) * norm.base;
        while (depth < 8 && need <= static_cast<unsigned long>(seq_values.size())) {
          ++depth;
          need *= norm.base;
        }
      }
      Json j = to_json(kernel_explore(seq_values, norm.base, depth, kernel_prefix));
      j["sequence"] = kernel_seq;
      emit(out, j, compact);
    } else if (fk->parsed()) {
      const NormalizedInstance norm = normalize(fk_inst.instance());
      const LevelCounts lc = f_counts(norm, fk_kmax);
      const JumpData jd = c_seq(norm, static_cast<unsigned long>(fk_kmax) + 17, 0);
      const std::optional<Alignment> al = align_m0(lc, jd);
      const DSequence ds = d_seq(lc, norm, al);
      Json f = Json::array();
      for (std::int64_t k = lc.k_min; k <= lc.k_max; ++k) f.push_back({{"k", k}, {"f", lc.at(k).get_str()}});
      Json d = Json::array();
      for (std::int64_t k = ds.k_from; k < ds.k_from + static_cast<std::int64_t>(ds.d.size()); ++k) {
        d.push_back({{"k", k}, {"d", ds.at(k).get_str()}});
      }
      Json j;
      j["f"] = std::move(f);
      j["d"] = std::move(d);
      j["m0"] = al ? Json(al->m0) : Json(nullptr);
      if (al) {
        j["aligned_from"] = al->aligned_from;
        j["aligned_to"] = al->aligned_to;
        j["other_offsets"] = al->other_offsets;
      }
      j["enumerated_to"] = lc.enumerated_to;
      j["cross_checked"] = ds.cross_checked;
      j["verdict"] = to_json(decide_d_periodicity(norm, static_cast<std::size_t>(fk_kmax)));
      emit(out, j, compact);
    } else if (dfa->parsed()) {
      const RegularityVerdict v =
          decide_regularity(dfa_src.source(), dfa_src.base(), static_cast<std::size_t>(dfa_window));
      if (!v.dfa) {
        err << "no automaton: the language verdict is " << to_string(v.kind) << '\n';
        return kOk;
      }
      if (dfa_dfao) {
        const Dfao machine = dfao_from_dfa(*v.dfa);
        if (dfa_dot) {
          out << to_dot(machine);
        } else {
          emit(out, to_json(machine.machine()), compact);
        }
      } else if (dfa_dot) {
        out << to_dot(*v.dfa);
      } else {
        emit(out, to_json(*v.dfa), compact);
      }
    } else if (analyze->parsed()) {
      auto apply_flags = [&](Scenario s) {
        if (a_alpha->count()) s.alpha = flags.alpha;
        if (a_beta->count()) s.beta = flags.beta;
        if (a_base->count()) s.base = flags.base;
        if (a_name->count()) s.name = flags.name;
        if (a_kmax->count()) s.limits.kmax = flags.limits.kmax;
        if (a_nmax->count()) s.limits.nmax = flags.limits.nmax;
        if (a_window->count()) s.limits.window = flags.limits.window;
        if (a_kdepth->count()) s.limits.kernel_depth = flags.limits.kernel_depth;
        if (a_kprefix->count()) s.limits.kernel_prefix = flags.limits.kernel_prefix;
        if (no_lemmas) s.checks.lemmas = false;
        if (no_language) s.checks.language = false;
        if (no_kernel) s.checks.kernel = false;
        if (no_fk) s.checks.fk = false;
        if (compact) s.format = "compact";
        return s;
      };
      if (!batch_file.empty()) {
        const Json batch = read_json_file(batch_file);
        if (!batch.is_array()) throw ParseError("batch file must hold a JSON array of scenarios");
        std::vector<Scenario> scenarios;
        for (const Json& item : batch) scenarios.push_back(apply_flags(scenario_from_json(item)));
        for (const Scenario& s : scenarios) validate(s);
        std::vector<std::future<Json>> jobs;
        for (const Scenario& s : scenarios) {
          jobs.push_back(std::async(std::launch::async, [s, no_timings] { return run_analyze(s, !no_timings); }));
        }
        Json reports = Json::array();
        int worst = kOk;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
          try {
            reports.push_back(jobs[i].get());
          } catch (...) {
            std::string message;
            const int code = exit_code_for(std::current_exception(), message);
            worst = std::max(worst, code);
            reports.push_back({{"scenario", to_json(scenarios[i])}, {"error", message}, {"exit_code", code}});
            err << "scenario " << i << ": " << message << '\n';
          }
        }
        emit(out, reports, compact);
        return worst;
      }
      Scenario s = scenario_file.empty() ? Scenario{} : scenario_from_json(read_json_file(scenario_file));
      s = apply_flags(s);
      emit(out, run_analyze(s, !no_timings), compact || s.format == "compact");
    }
  } catch (...) {
    std::string message;
    const int code = exit_code_for(std::current_exception(), message);
    err << "error: " << message << '\n';
    return code;
  }
  return kOk;
}

}  // namespace logfloor::cli
