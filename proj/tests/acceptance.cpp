// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wolst/bernoulli.hpp"
#include "wolst/binomial.hpp"
#include "wolst/checks.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/scan.hpp"

using namespace wolst;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(const char* label, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = Verdict{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.ok)
        ++failures;
    std::printf("%s %s: %s (%.1f s)\n", v.ok ? "PASS" : "FAIL", label, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::vector<Prime> primes(std::uint64_t lo, std::uint64_t hi_inclusive) {
    return sieve_primes(SieveConfig{lo, hi_inclusive + 1});
}

/// Runs ids over primes; every record must pass, and a skip counts as a failure.
Verdict all_pass(const std::vector<std::string>& ids, const std::vector<Prime>& ps) {
    std::size_t passed = 0;
    std::string first_bad;
    run_suite(ids, ps, SuiteOptions{}, [&](const CheckOutcome& o) {
        if (o.pass && !o.skipped) {
            ++passed;
        } else if (first_bad.empty()) {
            first_bad = o.check_id + " at p = " + std::to_string(o.p) + " (residual " +
                        std::to_string(o.residual_valuation) + (o.reason ? ", " + *o.reason : "") + ")";
        }
    });
    Verdict v;
    v.ok = first_bad.empty() && passed > 0;
    v.detail = std::to_string(passed) + " records passed";
    if (!first_bad.empty())
        v.detail += "; first failure " + first_bad;
    return v;
}

Verdict conj(std::vector<Verdict> parts) {
    Verdict v;
    for (const Verdict& p : parts) {
        v.ok = v.ok && p.ok;
        v.detail += (v.detail.empty() ? "" : "; ") + p.detail;
    }
    return v;
}

const std::vector<std::string> kWolstenholmeSuite = {
    "prop1_p8",     "prop2_p8",     "cor1_first_p7", "cor1_second_p7", "cor2_p7",      "cor3_p7",
    "remark2_p8",   "lemma7_r2_p6", "lemma7_r3_p5",  "lemma7_r4_p4",   "lemma7_r5_p4", "lemma7_r6_p3"};

Verdict wolstenholme_suite(Prime p, double budget_s) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = all_pass(kWolstenholmeSuite, {p});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
        v.ok = false;
        v.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
    }
    return v;
}

Verdict oracle_equivalences() {
    std::size_t cases = 0;
    // Central binomial vs exact binomial, p <= 200, k <= 8.
    for (Prime p : primes(5, 200)) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * p - 1, p - 1);
        for (int k = 1; k <= 8; ++k) {
            const BinomialResidue b = central_binomial_mod(p, k);
            if (to_mpz(b.value.value()) != oracle::mod_z(c, oracle::pow_z(p, static_cast<unsigned long>(k))))
                return {false, "central binomial differs at p = " + std::to_string(p) + ", k = " + std::to_string(k)};
            ++cases;
        }
    }
    // Newton recurrence vs subset enumeration, p <= 13, n <= 6.
    for (Prime p : {5, 7, 11, 13}) {
        const int n_max = static_cast<int>(std::min<Prime>(6, p - 2));
        const SumProfile prof = elementary_symmetric(p, n_max, 6);
        const mpz_class m = oracle::pow_z(p, 6);
        for (int n = 1; n <= n_max; ++n) {
            if (to_mpz(prof.h(n).value()) != oracle::embed(oracle::subset_H(p, static_cast<unsigned long>(n)), m))
                return {false, "H_n differs at p = " + std::to_string(p) + ", n = " + std::to_string(n)};
            ++cases;
        }
    }
    // bernoulli_mod vs exact rationals, even n <= 60, p in [11, 97], r <= 3.
    const auto B = oracle::bernoulli_table(60);
    for (Prime p : primes(11, 97)) {
        for (int n = 2; n <= 60; n += 2) {
            if (n % static_cast<int>(p - 1) == 0)
                continue;
            for (int r = 1; r <= 3; ++r) {
                const mpz_class m = oracle::pow_z(p, static_cast<unsigned long>(r));
                if (to_mpz(bernoulli_mod(n, p, r).value.value()) != oracle::embed(B[static_cast<std::size_t>(n)], m))
                    return {false, "B_" + std::to_string(n) + " differs mod " + std::to_string(p) + "^" + std::to_string(r)};
                ++cases;
            }
        }
    }
    Verdict v{true, std::to_string(cases) + " oracle comparisons agree"};
    // Kummer congruences and the high-index expansion as registry suites.
    Verdict kummer = all_pass({"kummer_eq10", "kummer_eq11", "eq26_n2_s2", "eq26_n2_s4", "eq26_n3_s2", "eq26_n3_s4",
                               "eq26_n4_s2"},
                              primes(11, 500));
    kummer.detail = "Kummer and high-index suites: " + kummer.detail;
    return conj({v, kummer});
}

Verdict criteria_agree() {
    const auto b4 = wolstenholme_scan(11, 2001, Criterion::BinomialP4);
    const auto r1 = wolstenholme_scan(11, 2001, Criterion::HarmonicR1P3);
    const auto bp = wolstenholme_scan(11, 2001, Criterion::BernoulliBp3);
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < b4.size(); ++i) {
        if (b4[i].reason || r1[i].reason || bp[i].reason)
            return {false, "error record at p = " + std::to_string(b4[i].p)};
        if (b4[i].flagged != r1[i].flagged || b4[i].flagged != bp[i].flagged)
            return {false, "criteria disagree at p = " + std::to_string(b4[i].p)};
        flagged += b4[i].flagged ? 1 : 0;
    }
    const bool at_16843 = evaluate_criterion(16843, Criterion::BinomialP4).flagged &&
                          evaluate_criterion(16843, Criterion::HarmonicR1P3).flagged &&
                          evaluate_criterion(16843, Criterion::BernoulliBp3).flagged;
    return {at_16843 && flagged == 0, std::to_string(b4.size()) + " primes in [11, 2000], " + std::to_string(flagged) +
                                          " flagged by all three; all three flag 16843: " + (at_16843 ? "yes" : "no")};
}

Verdict remark1(std::uint64_t limit, double budget_s) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Prime> got = remark1_experiment(limit);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string list;
    for (Prime p : got)
        list += (list.empty() ? "" : ", ") + std::to_string(p);
    Verdict v{got == std::vector<Prime>{16843}, "flagged {" + list + "}"};
    if (secs > budget_s) {
        v.ok = false;
        v.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
    }
    return v;
}

} // namespace

int main() {
    report("1 Wolstenholme's theorem for 5 <= p <= 10^4",
           [] { return all_pass({"wolstenholme_thm"}, primes(5, 10000)); });

    report("2 v_5(C(9,4) - 1) = 3 and v_7(C(13,6) - 1) = 3 exactly", [] {
        const CheckOutcome a = run_check("wolstenholme_thm", 5);
        const CheckOutcome b = run_check("wolstenholme_thm", 7);
        const int ea = oracle::val(mpq_class(oracle::pascal(9, 4) - 1), 5);
        const int eb = oracle::val(mpq_class(oracle::pascal(13, 6) - 1), 7);
        return Verdict{a.residual_valuation == 3 && b.residual_valuation == 3 && ea == 3 && eb == 3,
                       "residuals " + std::to_string(a.residual_valuation) + " and " +
                           std::to_string(b.residual_valuation) + ", exact oracle " + std::to_string(ea) + " and " +
                           std::to_string(eb)};
    });

    report("3 R_n/H_n identities for 11 <= p <= 2000 (H_n valuations for n <= p-3), R_n in Bernoulli terms "
           "and the order-8 pairing identity for 11 <= p <= 500",
           [] {
               return conj({all_pass({"lemma1_p4", "lemma2a_p5", "lemma2b_p5", "lemma4_valuations", "lemma6_valuations",
                                      "lemma13_r1", "lemma13_r2", "lemma13_r3", "lemma13_r4", "lemma13_r5"},
                                     primes(11, 2000)),
                            all_pass({"lemma12_i_p6", "lemma12_ii_p4", "lemma12_iii_p3", "lemma12_iv_p4", "eq19_p8"},
                                     primes(11, 500))});
           });

    report("4 Glaisher mod p^4 and Lehmer mod p^3 for 11 <= p <= 2000",
           [] { return all_pass({"glaisher_p4", "lehmer_p3"}, primes(11, 2000)); });

    report("5 Helou-Terjanian mod p^6, Granville mod p^5, Sun-Wan mod p^5 for 11 <= p <= 400",
           [] { return all_pass({"helou_terjanian_p6", "granville_p5", "sun_wan_p5"}, primes(11, 400)); });

    report("6 Wolstenholme-prime suite at p = 16843", [] { return wolstenholme_suite(16843, 5.0); });

    report("6 (stretch) Wolstenholme-prime suite at p = 2124679", [] { return wolstenholme_suite(2124679, 600.0); });

    report("7 scan for C = 1 + 2p R_1 + (2/3) p^3 R_3 mod p^7 below 2*10^4 flags exactly {16843}", [] { return remark1(20000, 120.0); });

    report("7 scan for C = 1 + 2p R_1 + (2/3) p^3 R_3 mod p^7 below 10^5 flags exactly {16843}", [] { return remark1(100000, 3600.0); });

    report("8 oracle equivalences", [] { return oracle_equivalences(); });

    report("9 the three Wolstenholme criteria agree", [] { return criteria_agree(); });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : (std::to_string(failures) + " criteria failed").c_str());
    return failures == 0 ? 0 : 1;
}
