#include <functional>
#include <optional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wolst/bernoulli.hpp"

using namespace wolst;

namespace {

const std::vector<mpq_class>& table() {
    static const std::vector<mpq_class> t = oracle::bernoulli_table(200);
    return t;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::PreconditionFailed;
}

mpz_class z(const Residue& r) { return to_mpz(r.value()); }

std::vector<Prime> primes_between(Prime lo, Prime hi) {
    std::vector<Prime> out;
    for (Prime p = lo; p <= hi; ++p) {
        if (oracle::trial_prime(p))
            out.push_back(p);
    }
    return out;
}

} // namespace

TEST_CASE("bernoulli_exact examples") {
    CHECK(bernoulli_exact(2).value == ExactRational(1, 6));
    CHECK(bernoulli_exact(4).value == ExactRational(-1, 30));
    CHECK(bernoulli_exact(3).value.is_zero());
    CHECK(bernoulli_exact(1).value == ExactRational(-1, 2));
    CHECK(bernoulli_exact(0).value == ExactRational(1));
    CHECK(code_of([] { bernoulli_exact(401); }) == ErrorCode::IndexTooLarge);
}

TEST_CASE("bernoulli_exact agrees with an independent algorithm") {
    for (int m = 0; m <= 200; ++m)
        REQUIRE(bernoulli_exact(m).value.get() == table()[static_cast<std::size_t>(m)]);
}

TEST_CASE("sign alternation of B_2n") {
    for (int n = 1; n <= 50; ++n) {
        const int s = bernoulli_exact(2 * n).value.sign();
        REQUIRE(s == (n % 2 == 1 ? 1 : -1));
    }
}

TEST_CASE("von Staudt-Clausen denominators") {
    CHECK(vsc_denominator(12) == 2730);
    CHECK(vsc_denominator(2) == 6);
    CHECK(code_of([] { vsc_denominator(7); }) == ErrorCode::OddIndex);
    for (std::uint64_t m = 2; m <= 100; m += 2)
        REQUIRE(vsc_denominator(m) == bernoulli_exact(static_cast<int>(m)).value.den());
}

TEST_CASE("bernoulli_mod examples") {
    CHECK(bernoulli_mod(4, 7, 1).value.value() == U256(3));
    CHECK(z(bernoulli_mod(10, 7, 1).value) == oracle::embed(mpq_class(5, 66), 7));
    CHECK(bernoulli_mod(16843 - 3, 16843, 1).value.is_zero());
    CHECK(bernoulli_mod(3, 11, 2).value.is_zero());
    CHECK(code_of([] { bernoulli_mod(6, 7, 1); }) == ErrorCode::IrregularPosition);
    CHECK(code_of([] { bernoulli_mod(4, 3, 1); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("property: bernoulli_mod equals the exact value reduced") {
    for (Prime p : primes_between(5, 97)) {
        BernoulliEngine engine(p);
        for (int n = 0; n <= 60; n += 2) {
            if (n > 0 && n % static_cast<int>(p - 1) == 0)
                continue;
            for (int r = 1; r <= 3; ++r) {
                const mpz_class m = oracle::pow_z(p, static_cast<unsigned long>(r));
                const mpz_class want = oracle::embed(table()[static_cast<std::size_t>(n)], m);
                REQUIRE(z(engine.bernoulli(n, r)) == want);
                REQUIRE(z(bernoulli_mod(n, p, r).value) == want);
            }
        }
    }
}

TEST_CASE("high precision Bernoulli residues") {
    // Larger indices and precisions still match the exact numbers.
    for (Prime p : {11, 13, 37}) {
        BernoulliEngine engine(p);
        for (int n = 2; n <= 200; n += 2) {
            if (n % static_cast<int>(p - 1) == 0)
                continue;
            const mpz_class m = oracle::pow_z(p, 6);
            REQUIRE(z(engine.bernoulli(n, 6)) == oracle::embed(table()[static_cast<std::size_t>(n)], m));
        }
    }
}

TEST_CASE("kummer_reduce examples") {
    KummerReduction red = kummer_reduce(10, 7, 1);
    CHECK(red.target == 4);
    const mpz_class seven = 7;
    CHECK(oracle::embed(mpq_class(table()[10] / 10), seven) == 6);
    CHECK(oracle::embed(mpq_class(table()[4] / 4), seven) == 6);
    BernoulliEngine e7(7);
    CHECK(apply_kummer(red, e7) == e7.bernoulli(10, 1));

    KummerReduction same = kummer_reduce(4, 7, 1);
    CHECK(same.target == 4);
    CHECK(same.transfer.value() == U256(1));

    const mpz_class m = oracle::pow_z(11, 4) - oracle::pow_z(11, 3) - 2;
    // m = phi(11^4) - 2 is already the least representative above 4.
    KummerReduction big = kummer_reduce(m, 11, 4);
    CHECK(big.target == m);
    CHECK(big.transfer.value() == U256(1));
    KummerReduction big2 = kummer_reduce(mpz_class(m + 3 * 10 * 1331), 11, 4);
    CHECK(big2.target == m);
    CHECK(oracle::mod_z(mpz_class(m + 3 * 10 * 1331 - big2.target), mpz_class(10 * 1331)) == 0);
    BernoulliEngine e11(11);
    CHECK(apply_kummer(big, e11) == e11.bernoulli(m, 4));
    CHECK(apply_kummer(big2, e11) == e11.bernoulli(mpz_class(m + 3 * 10 * 1331), 4));

    CHECK(code_of([] { kummer_reduce(12, 7, 1); }) == ErrorCode::IrregularPosition);
    CHECK(code_of([] { kummer_reduce(2, 7, 2); }) == ErrorCode::NoValidTarget);
}

TEST_CASE("property: Kummer transfer reproduces the direct residue") {
    std::mt19937_64 rng(2024);
    const auto primes = primes_between(11, 97);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> prec(1, 3);
    std::uniform_int_distribution<long> idx(2, 500000);
    int done = 0;
    while (done < 100) {
        const Prime p = primes[pick(rng)];
        const int r = prec(rng);
        const long m = idx(rng) * 2;
        if (m % static_cast<long>(p - 1) == 0)
            continue;
        std::optional<KummerReduction> red;
        try {
            red = kummer_reduce(m, p, r);
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NoValidTarget);
            continue;
        }
        BernoulliEngine engine(p);
        REQUIRE(apply_kummer(*red, engine) == engine.bernoulli(m, r));
        ++done;
    }
}

TEST_CASE("kummer_alternating_check") {
    CHECK(kummer_alternating_check(4, 11, 1) >= 1);
    CHECK(kummer_alternating_check(4, 7, 2) >= 2);
    CHECK(code_of([] { kummer_alternating_check(4, 7, 0); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("property: alternating Kummer sums against exact rationals") {
    for (Prime p : {5, 7, 11, 13}) {
        for (int m = 2; m <= 40; m += 2) {
            if (m % static_cast<int>(p - 1) == 0)
                continue;
            for (int r = 1; r < m && m + r * static_cast<int>(p - 1) <= 200; ++r) {
                mpq_class s = 0;
                for (int k = 0; k <= r; ++k) {
                    const int i = m + k * static_cast<int>(p - 1);
                    s += (k % 2 == 0 ? 1 : -1) * mpq_class(oracle::pascal(static_cast<unsigned>(r), static_cast<unsigned>(k))) *
                         table()[static_cast<std::size_t>(i)] / i;
                }
                s.canonicalize();
                const int exact = sgn(s) == 0 ? r + 2 : std::min(oracle::val(s, p), r + 2);
                int got = 0;
                try {
                    got = kummer_alternating_check(m, p, r);
                } catch (const Error& e) {
                    // p-scaled indices can push the working precision past p^10.
                    REQUIRE(e.code() == ErrorCode::ExponentOutOfRange);
                    continue;
                }
                REQUIRE(got == exact);
                REQUIRE(got >= r);
            }
        }
    }
}

TEST_CASE("reduce_high_index shapes") {
    auto two = reduce_high_index(2, 4, 11);
    REQUIRE(two.size() == 2);
    CHECK(two[0].coefficient == 2);
    CHECK(two[0].index == 11 - 5);
    CHECK(two[1].coefficient == -1);
    CHECK(two[1].index == 2 * 11 - 6);

    auto four = reduce_high_index(4, 2, 13);
    REQUIRE(four.size() == 4);
    CHECK(four[0].coefficient == 4);
    CHECK(four[1].coefficient == -6);
    CHECK(four[2].coefficient == 4);
    CHECK(four[3].coefficient == -1);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(four[k].index == static_cast<long>(k + 1) * 12 - 2);

    auto one = reduce_high_index(1, 2, 17);
    REQUIRE(one.size() == 1);
    CHECK(one[0].coefficient == 1);
    CHECK(one[0].index == 14);

    CHECK(code_of([] { reduce_high_index(2, 10, 11); }) == ErrorCode::IrregularPosition);
    CHECK(code_of([] { reduce_high_index(4, 2, 7); }) == ErrorCode::NoValidTarget);
    CHECK(code_of([] { reduce_high_index(2, 3, 11); }) == ErrorCode::OddIndex);
}

TEST_CASE("property: high-index expansion matches the Kummer route") {
    for (Prime p : primes_between(11, 97)) {
        BernoulliEngine engine(p);
        for (int n : {2, 3, 4}) {
            for (long s : {2L, 4L}) {
                const mpz_class M = high_index(n, s, p);
                const Residue direct = apply_kummer(kummer_reduce(M, p, n), engine);
                REQUIRE(high_index_bernoulli(n, s, engine) == direct);
            }
        }
    }
}
