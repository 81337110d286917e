#pragma once

// Prime generation and Wolstenholme-prime range scans.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wolst/modring.hpp"

namespace wolst {

inline constexpr std::uint64_t kSieveLimit = 100'000'000;
inline constexpr std::uint64_t kExperimentLimit = 1'000'000;

struct SieveConfig {
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    std::uint64_t segment_size = 1 << 16;
};

/// Primes in [lo, hi), ascending, one segment at a time. RangeTooLarge above 10^8.
void sieve_primes(const SieveConfig& cfg, const std::function<void(Prime)>& emit);
std::vector<Prime> sieve_primes(const SieveConfig& cfg);

enum class Criterion {
    BinomialP4,   // v_p(C(2p-1,p-1) - 1) >= 4
    HarmonicR1P3, // v_p(R_1) >= 3
    BernoulliBp3, // v_p(B_{p-3}) >= 1
    Cor1SecondP7, // C = 1 + 2p R_1 + (2/3) p^3 R_3 (mod p^7)
};

/// Short names used on the command line: b4, r1p3, bp3, cor1p7.
std::string_view criterion_name(Criterion c);
/// Accepts the short names and the enum spellings; UsageError otherwise.
Criterion parse_criterion(std::string_view name);
int criterion_threshold(Criterion c);
/// Exponent the criterion evaluates at: threshold + 2.
int criterion_exponent(Criterion c);

struct ScanRecord {
    Prime p = 0;
    Criterion criterion = Criterion::HarmonicR1P3;
    int observed_valuation = 0; // capped at criterion_exponent
    bool flagged = false;
    bool skipped = false;
    std::optional<std::string> reason;
    std::string value; // the residue whose valuation is observed, decimal
    std::uint64_t elapsed_ns = 0;
};

/// One prime under one criterion. Primes below 7 come back skipped.
ScanRecord evaluate_criterion(Prime p, Criterion c);

struct ScanOptions {
    int parallelism = 1;
    bool timings = false;
    std::size_t checkpoint_every = 1000;
    /// Called after every checkpoint_every records with the last emitted prime.
    std::function<void(Prime)> checkpoint;
};

/// One record per prime in [lo, hi), ascending regardless of parallelism.
void wolstenholme_scan(std::uint64_t lo, std::uint64_t hi, Criterion c, const ScanOptions& opts,
                       const std::function<void(const ScanRecord&)>& emit);
std::vector<ScanRecord> wolstenholme_scan(std::uint64_t lo, std::uint64_t hi, Criterion c,
                                          const ScanOptions& opts = {});

/// Primes 11 <= p < limit satisfying C = 1 + 2p R_1 + (2/3) p^3 R_3 (mod p^7). limit <= 10^6.
std::vector<Prime> remark1_experiment(std::uint64_t limit, int parallelism = 1);

} // namespace wolst
