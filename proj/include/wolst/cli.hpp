#pragma once

// Command-line frontend: verify, scan, bernoulli, binom, report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wolst/checks.hpp"
#include "wolst/scan.hpp"

namespace wolst::cli {

enum class Command { Verify, Scan, Bernoulli, Binom, Report };
enum class Format { Jsonl, Csv, Pretty };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
    Command command = Command::Verify;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> primes; // half-open
    std::optional<std::uint64_t> at;
    std::vector<std::string> check_ids; // resolved; "all" expands to the registry
    Criterion criterion = Criterion::HarmonicR1P3;
    std::optional<std::uint64_t> limit;
    std::string output_path; // empty: standard output
    std::string input_path;  // report
    Format format = Format::Jsonl;
    int parallelism = 1;
    bool timings = false;
    bool resume = false;
    std::string index;     // bernoulli
    std::uint64_t p = 0;   // bernoulli, binom
    int exponent = 1;      // bernoulli precision r, binom k
};

/// Thrown by parse_args for --help; carries the text to print.
struct HelpRequested {
    std::string text;
};

/// "a..b" as a half-open range; UsageError when malformed or a >= b.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text);

/// args excludes the program name. UsageError on invalid input. Default parallelism
/// comes from WOLST_PARALLELISM when set.
RunConfig parse_args(const std::vector<std::string>& args);

/// Exit code 0 when nothing failed, 1 on a failed check or errored record, 3 on IO errors.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One JSONL line, schema fields in fixed order.
std::string to_jsonl(const CheckOutcome& o);
/// Scan records reuse the outcome schema: check "scan_<criterion>", lhs the observed
/// residue, rhs "0", pass meaning flagged.
CheckOutcome as_outcome(const ScanRecord& r);

/// parse_args then execute, mapping usage errors to exit code 2.
int main(int argc, char** argv);

} // namespace wolst::cli
