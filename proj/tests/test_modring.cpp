#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wolst/modring.hpp"

using namespace wolst;

TEST_CASE("make_modulus") {
    CHECK(make_modulus(5, 3).value() == U256(125));
    CHECK(to_mpz(make_modulus(16843, 8).value()) == oracle::pow_z(16843, 8));
    CHECK(to_mpz(make_modulus(2124679, 10).value()) == oracle::pow_z(2124679, 10));

    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::PreconditionFailed;
    };
    CHECK(code_of([] { make_modulus(6, 2); }) == ErrorCode::NotPrime);
    CHECK(code_of([] { make_modulus(1, 2); }) == ErrorCode::NotPrime);
    CHECK(code_of([] { make_modulus(7, 0); }) == ErrorCode::ExponentOutOfRange);
    CHECK(code_of([] { make_modulus(7, 11); }) == ErrorCode::ExponentOutOfRange);
    // 2^64 - 59 is prime; its 4th power needs 256 bits.
    CHECK(code_of([] { make_modulus(18446744073709551557ULL, 4); }) == ErrorCode::WidthExceeded);
    CHECK(max_exponent(18446744073709551557ULL) == 3);
    CHECK(max_exponent(7) == 10);
}

TEST_CASE("is_prime agrees with trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n)
        REQUIRE(is_prime(n) == oracle::trial_prime(n));
    CHECK(is_prime(2124679));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("inverse examples") {
    auto m49 = make_modulus(7, 2);
    CHECK(inverse(Residue(m49, u64{2})).value() == U256(25));
    CHECK(oracle::brute_inverse(2, 49) == 25);
    auto m343 = make_modulus(7, 3);
    CHECK(inverse(Residue(m343, u64{20})).value() == U256(223));
    CHECK_THROWS_AS(inverse(Residue(m49, u64{7})), Error);
}

TEST_CASE("inverse agrees with brute force on small moduli") {
    for (Prime p : {3, 5, 7, 11}) {
        for (int k = 1; k <= 3; ++k) {
            auto mod = make_modulus(p, k);
            const long long m = static_cast<long long>(mod.value().limb[0]);
            for (long long a = 1; a < m; ++a) {
                if (a % static_cast<long long>(p) == 0)
                    continue;
                REQUIRE(inverse(Residue(mod, static_cast<u64>(a))).value() ==
                        U256(static_cast<u64>(oracle::brute_inverse(a, m))));
            }
        }
    }
}

TEST_CASE("embed_rational") {
    CHECK(embed_rational(ExactRational(2, 3), make_modulus(5, 2)).value() == U256(9));
    CHECK(embed_rational(ExactRational(25, 12), make_modulus(5, 2)).is_zero());
    CHECK(embed_rational(ExactRational(-1, 2), make_modulus(7, 1)).value() == U256(3));
    try {
        embed_rational(ExactRational(1, 5), make_modulus(5, 3));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DenominatorNotCoprime);
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(ExactRational(343, 180), 7) == 3);
    CHECK(valuation(ExactRational(25, 12), 5) == 2);
    CHECK(valuation(ExactRational(4, 9), 3) == -2);
    CHECK(valuation(ExactRational(0), 3) == kInfiniteValuation);
    auto mod = make_modulus(5, 4);
    CHECK(valuation(Residue(mod, u64{250})) == 3);
    CHECK(valuation(Residue::zero(mod)) == 4);
}

TEST_CASE("batch_inverses") {
    auto m25 = make_modulus(5, 2);
    std::vector<Residue> xs;
    for (u64 v : {1, 2, 3, 4})
        xs.emplace_back(m25, v);
    auto inv = batch_inverses(xs);
    std::vector<u64> want{1, 13, 17, 19};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(inv[i].value() == U256(want[i]));

    auto m49 = make_modulus(7, 2);
    CHECK(batch_inverses(std::vector<Residue>{Residue(m49, u64{1})})[0].value() == U256(1));
    try {
        batch_inverses(std::vector<Residue>{Residue(m49, u64{2}), Residue(m49, u64{7})});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
        REQUIRE(e.index().has_value());
        CHECK(*e.index() == 1);
    }
}

TEST_CASE("mixing moduli is rejected") {
    Residue a(make_modulus(5, 2), u64{3});
    Residue b(make_modulus(5, 3), u64{3});
    try {
        a += b;
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ModulusMismatch);
    }
}

TEST_CASE("property: a * inverse(a) = 1 on random residues") {
    std::mt19937_64 rng(12345);
    for (auto [p, k] : std::vector<std::pair<Prime, int>>{{7, 3}, {16843, 8}, {2124679, 10}, {1000003, 5}, {2, 9}}) {
        auto mod = make_modulus(p, k);
        const mpz_class m = to_mpz(mod.value());
        gmp_randclass gen(gmp_randinit_default);
        gen.seed(static_cast<unsigned long>(rng()));
        for (int i = 0; i < 10000; ++i) {
            mpz_class a = gen.get_z_range(m);
            if (mpz_divisible_ui_p(a.get_mpz_t(), p))
                continue;
            Residue r(mod, a);
            REQUIRE((r * inverse(r)).value() == U256(1));
        }
    }
}

TEST_CASE("property: multiplication matches big-integer arithmetic") {
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(7);
    for (auto [p, k] : std::vector<std::pair<Prime, int>>{{3, 1}, {13, 4}, {16843, 4}, {16843, 9}, {2124679, 10}}) {
        auto mod = make_modulus(p, k);
        const mpz_class m = to_mpz(mod.value());
        for (int i = 0; i < 2000; ++i) {
            mpz_class a = gen.get_z_range(m), b = gen.get_z_range(m);
            Residue ra(mod, a), rb(mod, b);
            REQUIRE(to_mpz((ra * rb).value()) == oracle::mod_z(mpz_class(a * b), m));
            REQUIRE(to_mpz((ra + rb).value()) == oracle::mod_z(mpz_class(a + b), m));
            REQUIRE(to_mpz((ra - rb).value()) == oracle::mod_z(mpz_class(a - b), m));
            mpz_class e = gen.get_z_bits(80);
            mpz_class want;
            mpz_powm(want.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
            REQUIRE(to_mpz(ra.pow(e).value()) == want);
        }
    }
}

TEST_CASE("property: embed_rational is a ring homomorphism") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (auto [p, k] : std::vector<std::pair<Prime, int>>{{7, 5}, {11, 3}, {16843, 6}}) {
        auto mod = make_modulus(p, k);
        int done = 0;
        while (done < 500) {
            long d1 = den(rng), d2 = den(rng);
            if (d1 % static_cast<long>(p) == 0 || d2 % static_cast<long>(p) == 0)
                continue;
            ExactRational q1(num(rng), d1), q2(num(rng), d2);
            REQUIRE(embed_rational(q1 + q2, mod) == embed_rational(q1, mod) + embed_rational(q2, mod));
            REQUIRE(embed_rational(q1 * q2, mod) == embed_rational(q1, mod) * embed_rational(q2, mod));
            ++done;
        }
    }
}

TEST_CASE("property: reduction commutes with embedding") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        long d = den(rng);
        if (d % 13 == 0)
            continue;
        ExactRational q(num(rng), d);
        auto hi = embed_rational(q, make_modulus(13, 7));
        for (int j = 1; j < 7; ++j)
            REQUIRE(hi.reduce(j) == embed_rational(q, make_modulus(13, j)));
    }
}

TEST_CASE("property: batch_inverses matches elementwise inverse") {
    auto mod = make_modulus(101, 6);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(11);
    std::vector<Residue> xs;
    while (xs.size() < 300) {
        mpz_class a = gen.get_z_range(to_mpz(mod.value()));
        if (!mpz_divisible_ui_p(a.get_mpz_t(), 101))
            xs.emplace_back(mod, a);
    }
    auto inv = batch_inverses(xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        REQUIRE(inv[i] == inverse(xs[i]));
}

TEST_CASE("ExactRational stays in lowest terms") {
    ExactRational q(6, -4);
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(q.to_string() == "-3/2");
    CHECK((q + ExactRational(3, 2)).is_zero());
}
