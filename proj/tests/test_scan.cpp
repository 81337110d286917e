#include "doctest.h"
#include "oracles.hpp"
#include "wolst/scan.hpp"

using namespace wolst;

TEST_CASE("sieve examples") {
    CHECK(sieve_primes(SieveConfig{2, 20}) == std::vector<Prime>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(sieve_primes(SieveConfig{16840, 16850}) == std::vector<Prime>{16843});
    CHECK(sieve_primes(SieveConfig{2, 100000}).size() == 9592);
    CHECK(sieve_primes(SieveConfig{24, 29}).empty());
}

TEST_CASE("sieve agrees with trial division across segment boundaries") {
    for (std::uint64_t seg : {7ULL, 64ULL, 1000ULL, 1ULL << 16}) {
        const auto got = sieve_primes(SieveConfig{2, 30000, seg});
        std::vector<Prime> want;
        for (Prime n = 2; n < 30000; ++n) {
            if (oracle::trial_prime(n))
                want.push_back(n);
        }
        REQUIRE(got == want);
    }
    std::size_t count = 0;
    for (Prime n = 2; n < 100000; ++n)
        count += oracle::trial_prime(n) ? 1 : 0;
    CHECK(count == 9592);
    const auto window = sieve_primes(SieveConfig{99990000, 100000000, 4096});
    for (Prime p : window)
        REQUIRE(oracle::trial_prime(p));
    CHECK(window.back() == 99999989);
}

TEST_CASE("sieve rejects bad ranges") {
    auto code = [](SieveConfig cfg) {
        try {
            sieve_primes(cfg);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::PreconditionFailed;
    };
    CHECK(code(SieveConfig{2, 100000001}) == ErrorCode::RangeTooLarge);
    CHECK(code(SieveConfig{10, 10}) == ErrorCode::RangeError);
    CHECK(code(SieveConfig{1, 10}) == ErrorCode::RangeError);
}

TEST_CASE("criterion names") {
    for (Criterion c : {Criterion::BinomialP4, Criterion::HarmonicR1P3, Criterion::BernoulliBp3, Criterion::Cor1SecondP7})
        CHECK(parse_criterion(criterion_name(c)) == c);
    CHECK(parse_criterion("HarmonicR1P3") == Criterion::HarmonicR1P3);
    CHECK(criterion_threshold(Criterion::Cor1SecondP7) == 7);
    try {
        parse_criterion("r2");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UsageError);
    }
}

TEST_CASE("evaluate_criterion examples") {
    ScanRecord w = evaluate_criterion(16843, Criterion::BinomialP4);
    CHECK(w.flagged);
    CHECK(w.observed_valuation == 4);
    ScanRecord r = evaluate_criterion(16843, Criterion::HarmonicR1P3);
    CHECK(r.flagged);
    CHECK(r.observed_valuation == 3);
    CHECK(evaluate_criterion(16843, Criterion::BernoulliBp3).flagged);
    CHECK(evaluate_criterion(16843, Criterion::Cor1SecondP7).flagged);

    ScanRecord o = evaluate_criterion(10007, Criterion::BinomialP4);
    CHECK_FALSE(o.flagged);
    CHECK(o.observed_valuation == 3);
    CHECK(evaluate_criterion(10007, Criterion::HarmonicR1P3).observed_valuation == 2);
    CHECK(evaluate_criterion(10007, Criterion::BernoulliBp3).observed_valuation == 0);

    ScanRecord small = evaluate_criterion(5, Criterion::BinomialP4);
    CHECK(small.skipped);
    ScanRecord comp = evaluate_criterion(91, Criterion::BinomialP4);
    CHECK_FALSE(comp.flagged);
    CHECK(comp.reason.has_value());
}

TEST_CASE("observed valuations match exact rationals on small primes") {
    for (Prime p : {7, 11, 13, 17, 19, 23, 29, 31}) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * p - 1, p - 1);
        CHECK(evaluate_criterion(p, Criterion::BinomialP4).observed_valuation ==
              std::min(oracle::val(mpq_class(c - 1), p), 6));
        CHECK(evaluate_criterion(p, Criterion::HarmonicR1P3).observed_valuation ==
              std::min(oracle::val(oracle::exact_R(p, 1), p), 5));
        const auto B = oracle::bernoulli_table(static_cast<int>(p));
        CHECK(evaluate_criterion(p, Criterion::BernoulliBp3).observed_valuation ==
              std::min(oracle::val(B[p - 3], p), 3));
    }
}

TEST_CASE("property: the three Wolstenholme criteria agree prime by prime") {
    const auto b4 = wolstenholme_scan(11, 2001, Criterion::BinomialP4);
    const auto r1 = wolstenholme_scan(11, 2001, Criterion::HarmonicR1P3);
    const auto bp = wolstenholme_scan(11, 2001, Criterion::BernoulliBp3);
    REQUIRE(b4.size() == r1.size());
    REQUIRE(b4.size() == bp.size());
    for (std::size_t i = 0; i < b4.size(); ++i) {
        REQUIRE(b4[i].p == r1[i].p);
        REQUIRE(b4[i].flagged == r1[i].flagged);
        REQUIRE(b4[i].flagged == bp[i].flagged);
        REQUIRE_FALSE(b4[i].reason.has_value());
    }
}

TEST_CASE("scan below 2*10^4 finds 16843") {
    auto flagged = [](Criterion c, std::uint64_t hi) {
        std::vector<Prime> out;
        for (const ScanRecord& r : wolstenholme_scan(7, hi, c, ScanOptions{2}))
            if (r.flagged)
                out.push_back(r.p);
        return out;
    };
    CHECK(flagged(Criterion::HarmonicR1P3, 10001).empty());
    CHECK(flagged(Criterion::BinomialP4, 20000) == std::vector<Prime>{16843});
}

TEST_CASE("property: scans restart cleanly at any split point") {
    const auto whole = wolstenholme_scan(7, 3000, Criterion::HarmonicR1P3);
    for (std::uint64_t mid : {7ULL, 8ULL, 1000ULL, 1009ULL, 2999ULL, 3000ULL}) {
        auto left = wolstenholme_scan(7, mid, Criterion::HarmonicR1P3);
        const auto right = wolstenholme_scan(mid, 3000, Criterion::HarmonicR1P3);
        left.insert(left.end(), right.begin(), right.end());
        REQUIRE(left.size() == whole.size());
        for (std::size_t i = 0; i < whole.size(); ++i) {
            REQUIRE(left[i].p == whole[i].p);
            REQUIRE(left[i].observed_valuation == whole[i].observed_valuation);
            REQUIRE(left[i].value == whole[i].value);
        }
    }
}

TEST_CASE("checkpoints fire every n records and at the end") {
    std::vector<Prime> marks;
    ScanOptions opts;
    opts.checkpoint_every = 100;
    opts.checkpoint = [&](Prime p) { marks.push_back(p); };
    const auto recs = wolstenholme_scan(7, 2000, Criterion::HarmonicR1P3, opts);
    REQUIRE(recs.size() == 300); // pi(2000) - 3
    CHECK(marks == std::vector<Prime>{recs[99].p, recs[199].p, recs[299].p});
    marks.clear();
    wolstenholme_scan(7, 2010, Criterion::HarmonicR1P3, opts);
    CHECK(marks.back() == 2003);
}

TEST_CASE("parallel scans emit the same records") {
    const auto serial = wolstenholme_scan(7, 4000, Criterion::Cor1SecondP7, ScanOptions{1});
    const auto parallel = wolstenholme_scan(7, 4000, Criterion::Cor1SecondP7, ScanOptions{3});
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].p == parallel[i].p);
        REQUIRE(serial[i].value == parallel[i].value);
    }
}

TEST_CASE("remark1_experiment") {
    CHECK(remark1_experiment(10000).empty());
    CHECK(remark1_experiment(16844) == std::vector<Prime>{16843});
    CHECK(remark1_experiment(16843).empty());
    try {
        remark1_experiment(1000001);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeTooLarge);
    }
}

TEST_CASE("flagged under the mod p^7 congruence implies flagged under C = 1 mod p^4") {
    const auto cor = wolstenholme_scan(11, 20000, Criterion::Cor1SecondP7, ScanOptions{2});
    for (const ScanRecord& r : cor) {
        if (r.flagged)
            REQUIRE(evaluate_criterion(r.p, Criterion::BinomialP4).flagged);
    }
}
