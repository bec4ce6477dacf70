// Command-line front end: scenarios, JSON reports and subcommand dispatch.
#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "logfloor/automata.hpp"
#include "logfloor/fk.hpp"
#include "logfloor/floorlog.hpp"
#include "logfloor/langreg.hpp"
#include "logfloor/rkseq.hpp"

namespace logfloor::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "logfloor-report/1";

enum ExitCode : int { kOk = 0, kUsage = 1, kInconsistent = 2 };

struct Limits {
  std::int64_t kmax = 200;
  std::int64_t nmax = 100000;
  std::int64_t window = 1000;
  /// 0 picks the deepest level (at most 8) that fits in nmax terms.
  std::int64_t kernel_depth = 0;
  std::int64_t kernel_prefix = 64;
};

struct Checks {
  bool lemmas = true;
  bool language = true;
  bool kernel = true;
  bool fk = true;
};

struct Scenario {
  std::string name;
  std::string alpha = "1";
  std::string beta = "0";
  unsigned base = 2;
  Limits limits;
  Checks checks;
  std::string format = "json";
};

/// Missing keys keep their defaults. Throws ParseError on type errors or
/// unknown keys.
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

/// Throws ParseError unless alpha and beta parse, base >= 2 and every limit
/// is positive (kernel_depth may be 0).
ProblemInstance validate(const Scenario& s);

Json to_json(const NormalizedInstance& norm);
Json to_json(const RkRecord& rec);
Json to_json(const PeriodicityVerdict& verdict);
Json to_json(const Dfa& dfa);
Json to_json(const CertifiedPattern& pattern);
Json to_json(const RegularityVerdict& verdict);
Json to_json(const KernelReport& report);
Json to_json(const LengthClaimReport& report);

/// The full chain normalize -> c, r -> periodicity of r -> language
/// regularity -> kernel evidence -> level counts, with every link recorded.
/// Throws ConsistencyError if the links contradict each other.
Json run_analyze(const Scenario& s, bool with_timings = true);

/// Exit code for an exception escaping a subcommand: kInconsistent for
/// ConsistencyError, kUsage otherwise. Fills message with the diagnostic.
int exit_code_for(const std::exception_ptr& ep, std::string& message);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logfloor::cli
