#include "wolst/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "wolst/bernoulli.hpp"
#include "wolst/binomial.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/parallel.hpp"

namespace wolst {

void sieve_primes(const SieveConfig& cfg, const std::function<void(Prime)>& emit) {
    if (cfg.lo < 2 || cfg.hi <= cfg.lo)
        throw Error(ErrorCode::RangeError, "sieve range must satisfy 2 <= lo < hi");
    if (cfg.hi > kSieveLimit)
        throw Error(ErrorCode::RangeTooLarge, "sieve stops at 10^8");
    if (cfg.segment_size == 0)
        throw Error(ErrorCode::RangeError, "segment size must be positive");

    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cfg.hi)));
    while (root * root < cfg.hi)
        ++root;
    std::vector<char> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i])
            continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i)
            small[j] = 0;
    }

    std::vector<char> seg;
    for (std::uint64_t start = cfg.lo; start < cfg.hi; start += cfg.segment_size) {
        const std::uint64_t end = std::min(cfg.hi, start + cfg.segment_size);
        seg.assign(end - start, 1);
        for (std::uint64_t q : base) {
            if (q * q >= end)
                break;
            std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
            for (std::uint64_t j = first; j < end; j += q)
                seg[j - start] = 0;
        }
        for (std::uint64_t n = start; n < end; ++n) {
            if (seg[n - start])
                emit(n);
        }
    }
}

std::vector<Prime> sieve_primes(const SieveConfig& cfg) {
    std::vector<Prime> out;
    sieve_primes(cfg, [&](Prime p) { out.push_back(p); });
    return out;
}

std::string_view criterion_name(Criterion c) {
    switch (c) {
    case Criterion::BinomialP4: return "b4";
    case Criterion::HarmonicR1P3: return "r1p3";
    case Criterion::BernoulliBp3: return "bp3";
    case Criterion::Cor1SecondP7: return "cor1p7";
    }
    return "unknown";
}

Criterion parse_criterion(std::string_view name) {
    static const std::pair<std::string_view, Criterion> names[] = {
        {"b4", Criterion::BinomialP4},        {"BinomialP4", Criterion::BinomialP4},
        {"r1p3", Criterion::HarmonicR1P3},    {"HarmonicR1P3", Criterion::HarmonicR1P3},
        {"bp3", Criterion::BernoulliBp3},     {"BernoulliBp3", Criterion::BernoulliBp3},
        {"cor1p7", Criterion::Cor1SecondP7},  {"Cor1SecondP7", Criterion::Cor1SecondP7},
    };
    for (const auto& [n, c] : names) {
        if (n == name)
            return c;
    }
    throw Error(ErrorCode::UsageError, "unknown criterion '" + std::string(name) + "' (b4, r1p3, bp3, cor1p7)");
}

int criterion_threshold(Criterion c) {
    switch (c) {
    case Criterion::BinomialP4: return 4;
    case Criterion::HarmonicR1P3: return 3;
    case Criterion::BernoulliBp3: return 1;
    case Criterion::Cor1SecondP7: return 7;
    }
    return 0;
}

int criterion_exponent(Criterion c) { return criterion_threshold(c) + 2; }

namespace {

Residue criterion_value(Prime p, Criterion c, int E) {
    switch (c) {
    case Criterion::BinomialP4: {
        const InverseSums s = inverse_sums(p, E, 0, true);
        return *s.central_binomial - Residue::one(s.modulus);
    }
    case Criterion::HarmonicR1P3:
        return inverse_sums(p, E, 1, false).R[0];
    case Criterion::BernoulliBp3: {
        BernoulliEngine engine(p);
        return engine.bernoulli(mpz_class(static_cast<unsigned long>(p - 3)), E);
    }
    case Criterion::Cor1SecondP7: {
        const InverseSums s = inverse_sums(p, E, 3, true);
        const PrimePowerModulus& mod = s.modulus;
        const Residue P(mod, p);
        const Residue rhs = Residue::one(mod) + P * s.R[0] * 2 +
                            embed_rational(ExactRational(2, 3), mod) * P * P * P * s.R[2];
        return *s.central_binomial - rhs;
    }
    }
    throw Error(ErrorCode::PreconditionFailed, "unknown criterion");
}

} // namespace

ScanRecord evaluate_criterion(Prime p, Criterion c) {
    const auto start = std::chrono::steady_clock::now();
    ScanRecord rec;
    rec.p = p;
    rec.criterion = c;
    if (p < 7) {
        rec.skipped = true;
        rec.reason = "BelowMinPrime";
        return rec;
    }
    try {
        if (!is_prime(p))
            throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        const int E = std::min(criterion_exponent(c), max_exponent(p));
        if (E < criterion_threshold(c))
            throw Error(ErrorCode::WidthExceeded, "p^" + std::to_string(criterion_threshold(c)) + " exceeds the width");
        const Residue v = criterion_value(p, c, E);
        rec.value = v.to_string();
        rec.observed_valuation = valuation(v);
        rec.flagged = rec.observed_valuation >= criterion_threshold(c);
    } catch (const Error& e) {
        rec.reason = std::string("error: ") + e.what();
    }
    rec.elapsed_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    return rec;
}

void wolstenholme_scan(std::uint64_t lo, std::uint64_t hi, Criterion c, const ScanOptions& opts,
                       const std::function<void(const ScanRecord&)>& emit) {
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi <= lo)
        return;
    const std::vector<Prime> primes = sieve_primes(SieveConfig{lo, hi});
    std::size_t done = 0;
    ordered_parallel_map(
        primes, opts.parallelism,
        [&](Prime p) {
            ScanRecord rec = evaluate_criterion(p, c);
            if (!opts.timings)
                rec.elapsed_ns = 0;
            return rec;
        },
        [&](ScanRecord&& rec) {
            emit(rec);
            ++done;
            if (opts.checkpoint && opts.checkpoint_every != 0 && done % opts.checkpoint_every == 0)
                opts.checkpoint(rec.p);
        });
    if (opts.checkpoint && done != 0 && (opts.checkpoint_every == 0 || done % opts.checkpoint_every != 0))
        opts.checkpoint(primes.back());
}

std::vector<ScanRecord> wolstenholme_scan(std::uint64_t lo, std::uint64_t hi, Criterion c, const ScanOptions& opts) {
    std::vector<ScanRecord> out;
    wolstenholme_scan(lo, hi, c, opts, [&](const ScanRecord& r) { out.push_back(r); });
    return out;
}

std::vector<Prime> remark1_experiment(std::uint64_t limit, int parallelism) {
    if (limit > kExperimentLimit)
        throw Error(ErrorCode::RangeTooLarge, "the experiment is bounded by 10^6");
    std::vector<Prime> flagged;
    ScanOptions opts;
    opts.parallelism = parallelism;
    wolstenholme_scan(11, limit, Criterion::Cor1SecondP7, opts, [&](const ScanRecord& r) {
        if (r.flagged)
            flagged.push_back(r.p);
    });
    return flagged;
}

} // namespace wolst
