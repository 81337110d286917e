#include "wolst/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wolst/bernoulli.hpp"
#include "wolst/binomial.hpp"

namespace wolst::cli {

namespace {

using json = nlohmann::ordered_json;

Error usage(const std::string& msg) { return Error(ErrorCode::UsageError, msg); }

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw usage(what + " must be a non-negative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw usage(what + " is out of range: '" + s + "'");
    }
}

std::vector<std::string> resolve_checks(const std::string& list) {
    std::vector<std::string> ids;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        if (item == "all") {
            for (const CongruenceCheck& c : registry())
                ids.push_back(c.id);
            continue;
        }
        try {
            ids.push_back(lookup(item).id);
        } catch (const Error& e) {
            throw usage(e.what());
        }
    }
    if (ids.empty())
        throw usage("--checks names no check");
    return ids;
}

Format parse_format(const std::string& s) {
    if (s == "jsonl")
        return Format::Jsonl;
    if (s == "csv")
        return Format::Csv;
    if (s == "pretty")
        return Format::Pretty;
    throw usage("--format must be jsonl, csv or pretty");
}

int default_parallelism() {
    const char* env = std::getenv("WOLST_PARALLELISM");
    if (env == nullptr || *env == '\0')
        return 1;
    const std::uint64_t v = parse_u64(env, "WOLST_PARALLELISM");
    if (v < 1 || v > 1024)
        throw usage("WOLST_PARALLELISM must be between 1 and 1024");
    return static_cast<int>(v);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

constexpr const char* kCsvHeader = "check,p,modulus_exponent,lhs,rhs,residual_valuation,pass,skipped,reason,elapsed_ns";

std::string to_csv(const CheckOutcome& o) {
    std::ostringstream s;
    s << csv_field(o.check_id) << ',' << o.p << ',' << o.modulus_exponent << ',' << o.lhs << ',' << o.rhs << ','
      << o.residual_valuation << ',' << (o.pass ? "true" : "false") << ',' << (o.skipped ? "true" : "false") << ','
      << csv_field(o.reason.value_or("")) << ',' << o.elapsed_ns;
    return s.str();
}

bool is_failure(const CheckOutcome& o) { return !o.skipped && !o.pass; }

/// Per-check rows of '.', 'X' (fail) and '-' (skipped), one column per prime.
void print_matrix(std::ostream& out, const std::vector<CheckOutcome>& outs) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const CheckOutcome*>> rows;
    std::vector<Prime> primes;
    for (const CheckOutcome& o : outs) {
        if (!rows.count(o.check_id))
            order.push_back(o.check_id);
        rows[o.check_id].push_back(&o);
        if (primes.empty() || primes.back() != o.p)
            primes.push_back(o.p);
    }
    std::size_t width = 5;
    for (const std::string& id : order)
        width = std::max(width, id.size());
    const bool cells = primes.size() <= 60;
    out << "primes: " << primes.size();
    if (!primes.empty())
        out << " (" << primes.front() << " .. " << primes.back() << ")";
    out << "\n";
    out << std::left << std::setw(static_cast<int>(width)) << "check" << "  pass  fail  skip  min_v";
    if (cells)
        out << "  per prime";
    out << "\n";
    std::size_t failed = 0;
    for (const std::string& id : order) {
        std::size_t pass = 0, fail = 0, skip = 0;
        int min_v = -1;
        std::string line;
        for (const CheckOutcome* o : rows[id]) {
            if (o->skipped) {
                ++skip;
                line += '-';
                continue;
            }
            if (o->pass) {
                ++pass;
                line += '.';
            } else {
                ++fail;
                line += 'X';
            }
            min_v = min_v < 0 ? o->residual_valuation : std::min(min_v, o->residual_valuation);
        }
        failed += fail;
        out << std::left << std::setw(static_cast<int>(width)) << id << std::right << std::setw(6) << pass
            << std::setw(6) << fail << std::setw(6) << skip << std::setw(7) << (min_v < 0 ? std::string("-") : std::to_string(min_v));
        if (cells)
            out << "  " << line;
        out << "\n";
    }
    out << (failed == 0 ? "all applicable checks passed" : std::to_string(failed) + " failure(s)") << "\n";
}

/// Writes outcomes in the configured format. Pretty output is buffered until finish().
class Sink {
public:
    Sink(std::ostream& out, Format format, bool suppress_header = false)
        : out_(out), format_(format), suppress_header_(suppress_header) {
        if (format_ == Format::Csv && !suppress_header_)
            out_ << kCsvHeader << "\n";
    }

    void write(const CheckOutcome& o) {
        failed_ = failed_ || is_failure(o);
        switch (format_) {
        case Format::Jsonl: out_ << to_jsonl(o) << "\n"; break;
        case Format::Csv: out_ << to_csv(o) << "\n"; break;
        case Format::Pretty: buffered_.push_back(o); break;
        }
    }
    void flush() { out_.flush(); }
    void finish() {
        if (format_ == Format::Pretty)
            print_matrix(out_, buffered_);
        out_.flush();
    }
    bool failed() const { return failed_; }

private:
    std::ostream& out_;
    Format format_;
    bool suppress_header_ = false;
    bool failed_ = false;
    std::vector<CheckOutcome> buffered_;
};

std::vector<Prime> verify_primes(const RunConfig& cfg) {
    if (cfg.at)
        return {*cfg.at};
    const auto [lo, hi] = *cfg.primes;
    if (hi <= 2)
        return {};
    return sieve_primes(SieveConfig{std::max<std::uint64_t>(lo, 2), hi});
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    Sink sink(out, cfg.format);
    const std::vector<Prime> primes = verify_primes(cfg);
    run_suite(cfg.check_ids, primes, SuiteOptions{cfg.parallelism, cfg.timings},
              [&](const CheckOutcome& o) { sink.write(o); });
    sink.finish();
    return sink.failed() ? kExitFailure : kExitOk;
}

/// Last prime recorded in an existing scan output. A torn final line is cut off.
std::optional<std::uint64_t> resume_point(const std::string& path, Format format) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const std::size_t keep = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
    if (keep != content.size()) {
        std::ofstream trunc(path, std::ios::binary | std::ios::trunc);
        trunc << content.substr(0, keep);
        content.resize(keep);
    }
    std::optional<std::uint64_t> last;
    std::stringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line.rfind("check,", 0) == 0)
            continue;
        if (format == Format::Jsonl) {
            const json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("p"))
                throw Error(ErrorCode::RangeError, "cannot resume from malformed line: " + line);
            last = j["p"].get<std::uint64_t>();
        } else {
            const std::size_t a = line.find(',');
            const std::size_t b = line.find(',', a + 1);
            last = parse_u64(line.substr(a + 1, b - a - 1), "recorded prime");
        }
    }
    return last;
}

int run_scan(const RunConfig& cfg, std::ostream& out) {
    std::uint64_t lo = 7, hi = cfg.limit.value_or(100000);
    if (cfg.primes)
        std::tie(lo, hi) = *cfg.primes;
    bool appending = false;
    if (cfg.resume) {
        if (cfg.format == Format::Pretty)
            throw usage("--resume needs jsonl or csv output");
        if (auto last = resume_point(cfg.output_path, cfg.format))
            lo = std::max(lo, *last + 1);
        std::error_code ec;
        appending = std::filesystem::file_size(cfg.output_path, ec) > 0 && !ec;
    }
    Sink sink(out, cfg.format, appending);
    std::vector<Prime> flagged;
    std::size_t scanned = 0;
    ScanOptions opts;
    opts.parallelism = cfg.parallelism;
    opts.timings = cfg.timings;
    opts.checkpoint = [&](Prime) { sink.flush(); };
    bool errored = false;
    if (hi > lo) {
        wolstenholme_scan(lo, hi, cfg.criterion, opts, [&](const ScanRecord& r) {
            ++scanned;
            if (r.flagged)
                flagged.push_back(r.p);
            errored = errored || (r.reason && !r.skipped);
            if (cfg.format != Format::Pretty)
                sink.write(as_outcome(r));
        });
    }
    if (cfg.format == Format::Pretty) {
        out << "criterion " << criterion_name(cfg.criterion) << " (v_p >= " << criterion_threshold(cfg.criterion)
            << ") over [" << lo << ", " << hi << "): " << scanned << " primes, flagged {";
        for (std::size_t i = 0; i < flagged.size(); ++i)
            out << (i ? ", " : "") << flagged[i];
        out << "}\n";
    }
    out.flush();
    return errored ? kExitFailure : kExitOk;
}

int run_bernoulli(const RunConfig& cfg, std::ostream& out) {
    const mpz_class n(cfg.index);
    const BernoulliResidue b = bernoulli_mod(n, cfg.p, cfg.exponent);
    if (cfg.format == Format::Pretty) {
        out << "B_" << cfg.index << " mod " << cfg.p << "^" << cfg.exponent << " = " << b.value.to_string() << "\n";
    } else if (cfg.format == Format::Csv) {
        out << "index,p,r,value\n" << cfg.index << ',' << cfg.p << ',' << cfg.exponent << ',' << b.value.to_string() << "\n";
    } else {
        json j;
        j["index"] = cfg.index;
        j["p"] = cfg.p;
        j["r"] = cfg.exponent;
        j["value"] = b.value.to_string();
        out << j.dump() << "\n";
    }
    return kExitOk;
}

int run_binom(const RunConfig& cfg, std::ostream& out) {
    const BinomialResidue c = central_binomial_mod(cfg.p, cfg.exponent);
    if (cfg.format == Format::Pretty) {
        out << "C(" << 2 * cfg.p - 1 << ", " << cfg.p - 1 << ") mod " << cfg.p << "^" << cfg.exponent << " = "
            << c.value.to_string() << "\nv_p(C - 1) = " << c.wolstenholme_valuation << " (evaluated mod p^"
            << c.evaluated_exponent << ")\n";
    } else if (cfg.format == Format::Csv) {
        out << "p,k,value,evaluated_exponent,wolstenholme_valuation\n"
            << cfg.p << ',' << cfg.exponent << ',' << c.value.to_string() << ',' << c.evaluated_exponent << ','
            << c.wolstenholme_valuation << "\n";
    } else {
        json j;
        j["p"] = cfg.p;
        j["k"] = cfg.exponent;
        j["value"] = c.value.to_string();
        j["evaluated_exponent"] = c.evaluated_exponent;
        j["wolstenholme_valuation"] = c.wolstenholme_valuation;
        out << j.dump() << "\n";
    }
    return kExitOk;
}

CheckOutcome from_json(const json& j) {
    CheckOutcome o;
    o.check_id = j.at("check").get<std::string>();
    o.p = j.at("p").get<std::uint64_t>();
    o.modulus_exponent = j.at("modulus_exponent").get<int>();
    o.lhs = j.at("lhs").get<std::string>();
    o.rhs = j.at("rhs").get<std::string>();
    o.residual_valuation = j.at("residual_valuation").get<int>();
    o.pass = j.at("pass").get<bool>();
    o.skipped = j.at("skipped").get<bool>();
    if (!j.at("reason").is_null())
        o.reason = j.at("reason").get<std::string>();
    o.elapsed_ns = j.at("elapsed_ns").get<std::uint64_t>();
    return o;
}

int run_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ifstream in(cfg.input_path);
    if (!in) {
        err << "cannot read " << cfg.input_path << "\n";
        return kExitIo;
    }
    std::vector<CheckOutcome> outs;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        try {
            outs.push_back(from_json(json::parse(line)));
        } catch (const json::exception& e) {
            err << cfg.input_path << ":" << number << ": " << e.what() << "\n";
            return kExitIo;
        }
    }
    if (cfg.format == Format::Pretty) {
        print_matrix(out, outs);
    } else {
        // One summary record per check.
        std::vector<std::string> order;
        std::map<std::string, std::array<std::size_t, 3>> counts;
        std::map<std::string, int> min_v;
        for (const CheckOutcome& o : outs) {
            if (!counts.count(o.check_id))
                order.push_back(o.check_id);
            auto& c = counts[o.check_id];
            c[o.skipped ? 2 : (o.pass ? 0 : 1)]++;
            if (!o.skipped)
                min_v[o.check_id] = min_v.count(o.check_id) ? std::min(min_v[o.check_id], o.residual_valuation)
                                                            : o.residual_valuation;
        }
        if (cfg.format == Format::Csv)
            out << "check,passed,failed,skipped,min_residual\n";
        for (const std::string& id : order) {
            const auto& c = counts[id];
            const auto v = min_v.find(id);
            const bool has_v = v != min_v.end();
            if (cfg.format == Format::Csv) {
                out << id << ',' << c[0] << ',' << c[1] << ',' << c[2] << ',' << (has_v ? std::to_string(v->second) : "")
                    << "\n";
            } else {
                json j;
                j["check"] = id;
                j["passed"] = c[0];
                j["failed"] = c[1];
                j["skipped"] = c[2];
                j["min_residual"] = has_v ? json(v->second) : json(nullptr);
                out << j.dump() << "\n";
            }
        }
    }
    const bool failed = std::any_of(outs.begin(), outs.end(), is_failure);
    return failed ? kExitFailure : kExitOk;
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos)
        throw usage("range must look like a..b, got '" + text + "'");
    const std::uint64_t a = parse_u64(text.substr(0, dots), "range start");
    const std::uint64_t b = parse_u64(text.substr(dots + 2), "range end");
    if (a >= b)
        throw usage("range " + text + " is empty or inverted (ranges are half-open)");
    return {a, b};
}

std::string to_jsonl(const CheckOutcome& o) {
    json j;
    j["check"] = o.check_id;
    j["p"] = o.p;
    j["modulus_exponent"] = o.modulus_exponent;
    j["lhs"] = o.lhs;
    j["rhs"] = o.rhs;
    j["residual_valuation"] = o.residual_valuation;
    j["pass"] = o.pass;
    j["skipped"] = o.skipped;
    j["reason"] = o.reason ? json(*o.reason) : json(nullptr);
    j["elapsed_ns"] = o.elapsed_ns;
    return j.dump();
}

CheckOutcome as_outcome(const ScanRecord& r) {
    CheckOutcome o;
    o.check_id = "scan_" + std::string(criterion_name(r.criterion));
    o.p = r.p;
    o.modulus_exponent = criterion_threshold(r.criterion);
    o.lhs = r.value;
    o.rhs = r.value.empty() ? "" : "0";
    o.residual_valuation = r.observed_valuation;
    o.pass = r.flagged;
    o.skipped = r.skipped;
    o.reason = r.reason;
    o.elapsed_ns = r.elapsed_ns;
    return o;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Congruences modulo prime powers and Wolstenholme primes", "wolst"};
    app.require_subcommand(1);

    std::string format = "jsonl", output, checks = "all", primes, criterion = "r1p3", index, input;
    std::optional<std::uint64_t> at, limit;
    std::optional<int> parallelism;
    bool timings = false, resume = false;
    std::uint64_t prime = 0;
    int exponent = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "jsonl, csv or pretty")->check(CLI::IsMember({"jsonl", "csv", "pretty"}));
        sub->add_option("-o,--output", output, "write records here instead of standard output");
    };
    auto workers = [&](CLI::App* sub) {
        sub->add_option("-j,--parallelism", parallelism, "worker threads (default: WOLST_PARALLELISM or 1)");
        sub->add_flag("--timings", timings, "record elapsed_ns (output is no longer reproducible)");
    };

    CLI::App* verify = app.add_subcommand("verify", "evaluate congruence checks over primes");
    verify->add_option("--checks", checks, "comma-separated check ids, or all");
    verify->add_option("--primes", primes, "half-open range a..b; composites are dropped");
    verify->add_option("--at", at, "a single number; a composite yields NotPrime records");
    common(verify);
    workers(verify);

    CLI::App* scan = app.add_subcommand("scan", "search a range for Wolstenholme primes");
    scan->add_option("--limit", limit, "scan primes 7 <= p < limit (default 100000)");
    scan->add_option("--primes", primes, "half-open range a..b instead of --limit");
    scan->add_option("--criterion", criterion, "b4, r1p3, bp3 or cor1p7");
    scan->add_flag("--resume", resume, "continue after the last prime already in --output");
    common(scan);
    workers(scan);

    CLI::App* bern = app.add_subcommand("bernoulli", "B_n modulo p^r");
    bern->add_option("-n,--index", index, "index n")->required();
    bern->add_option("-p,--prime", prime, "prime p >= 5")->required();
    bern->add_option("-r,--precision", exponent, "exponent r")->required();
    common(bern);

    CLI::App* binom = app.add_subcommand("binom", "C(2p-1, p-1) modulo p^k");
    binom->add_option("-p,--prime", prime, "prime p >= 5")->required();
    binom->add_option("-k,--exponent", exponent, "exponent k <= 9")->required();
    common(binom);

    CLI::App* report = app.add_subcommand("report", "summarise a JSONL record file");
    report->add_option("-i,--input", input, "JSONL file written by verify or scan")->required();
    report->add_option("--format", format, "pretty, csv or jsonl")->check(CLI::IsMember({"jsonl", "csv", "pretty"}));
    report->add_option("-o,--output", output, "write the summary here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw HelpRequested{target->help()};
    } catch (const CLI::ParseError& e) {
        throw usage(e.what());
    }

    RunConfig cfg;
    cfg.output_path = output;
    cfg.timings = timings;
    cfg.parallelism = parallelism ? *parallelism : default_parallelism();
    if (cfg.parallelism < 1)
        throw usage("--parallelism must be at least 1");

    if (verify->parsed()) {
        cfg.command = Command::Verify;
        cfg.format = parse_format(format);
        cfg.check_ids = resolve_checks(checks);
        if (!primes.empty() && at)
            throw usage("give either --primes or --at");
        if (!primes.empty())
            cfg.primes = parse_range(primes);
        else if (at)
            cfg.at = *at;
        else
            throw usage("verify needs --primes a..b or --at p");
    } else if (scan->parsed()) {
        cfg.command = Command::Scan;
        cfg.format = parse_format(format);
        try {
            cfg.criterion = parse_criterion(criterion);
        } catch (const Error& e) {
            throw usage(e.what());
        }
        if (!primes.empty() && limit)
            throw usage("give either --primes or --limit");
        if (!primes.empty())
            cfg.primes = parse_range(primes);
        cfg.limit = limit;
        if (limit && *limit > kSieveLimit)
            throw usage("--limit is bounded by 10^8");
        if (cfg.primes && cfg.primes->second > kSieveLimit)
            throw usage("ranges are bounded by 10^8");
        cfg.resume = resume;
        if (resume && output.empty())
            throw usage("--resume needs --output");
    } else if (bern->parsed()) {
        cfg.command = Command::Bernoulli;
        cfg.format = parse_format(format);
        parse_u64(index, "--index");
        cfg.index = index;
        cfg.p = prime;
        cfg.exponent = exponent;
    } else if (binom->parsed()) {
        cfg.command = Command::Binom;
        cfg.format = parse_format(format);
        cfg.p = prime;
        cfg.exponent = exponent;
    } else {
        cfg.command = Command::Report;
        cfg.format = report->count("--format") ? parse_format(format) : Format::Pretty;
        cfg.input_path = input;
    }
    return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* dest = &out;
    if (!cfg.output_path.empty()) {
        const bool append = cfg.command == Command::Scan && cfg.resume;
        if (append) {
            // resume_point may truncate a torn line, so it runs before the stream opens.
            try {
                (void)resume_point(cfg.output_path, cfg.format);
            } catch (const Error& e) {
                err << e.what() << "\n";
                return kExitIo;
            }
        }
        file.open(cfg.output_path, append ? std::ios::app : std::ios::trunc);
        if (!file) {
            err << "cannot write " << cfg.output_path << "\n";
            return kExitIo;
        }
        dest = &file;
    }
    int code = kExitOk;
    try {
        switch (cfg.command) {
        case Command::Verify: code = run_verify(cfg, *dest); break;
        case Command::Scan: code = run_scan(cfg, *dest); break;
        case Command::Bernoulli: code = run_bernoulli(cfg, *dest); break;
        case Command::Binom: code = run_binom(cfg, *dest); break;
        case Command::Report: code = run_report(cfg, *dest, err); break;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::UsageError ? kExitUsage : kExitFailure;
    }
    if (file.is_open()) {
        file.flush();
        if (!file) {
            err << "write to " << cfg.output_path << " failed\n";
            return kExitIo;
        }
    }
    return code;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return execute(cfg, std::cout, std::cerr);
}

} // namespace wolst::cli
