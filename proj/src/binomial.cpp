#include "wolst/binomial.hpp"

#include <algorithm>

#include "wolst/harmonic.hpp"

namespace wolst {

namespace {

int ring_cap(Prime p, int wanted) { return std::min(wanted, max_exponent(p)); }

} // namespace

Comparison compare(const Residue& lhs, const Residue& rhs) {
    return Comparison{lhs, rhs, valuation(lhs - rhs)};
}

BinomialResidue central_binomial_mod(Prime p, int k) {
    if (p < 5 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "central binomial needs a prime p >= 5");
    if (k < 1 || k > 9)
        throw Error(ErrorCode::ExponentOutOfRange, "k must lie in 1..9");
    const int e = ring_cap(p, k + 2);
    if (e < k)
        throw Error(ErrorCode::WidthExceeded, std::to_string(p) + "^" + std::to_string(k) + " exceeds the width");
    const Residue c = *inverse_sums(p, e, 0, true).central_binomial;
    BinomialResidue out{p, k, c.reduce(k), e, 0};
    out.wolstenholme_valuation = valuation(c - Residue::one(c.modulus()));
    return out;
}

mpz_class exact_binomial(unsigned long n, unsigned long r) {
    if (n > kExactBinomialCap || r > n)
        throw Error(ErrorCode::RangeError,
                    "exact binomial needs 0 <= r <= n <= " + std::to_string(kExactBinomialCap));
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, r);
    return out;
}

Residue binomial_mod(const mpz_class& n, u64 r, const PrimePowerModulus& mod) {
    if (sgn(n) < 0 || n < r)
        throw Error(ErrorCode::PreconditionFailed, "binomial needs 0 <= r <= n");
    const Prime p = mod.prime();
    Residue num = Residue::one(mod);
    Residue den = Residue::one(mod);
    long v = 0;
    const mpz_class base = n - r;
    for (u64 i = 1; i <= r; ++i) {
        mpz_class a = base + i;
        while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
            a /= static_cast<unsigned long>(p);
            ++v;
        }
        u64 b = i;
        while (b % p == 0) {
            b /= p;
            --v;
        }
        num *= Residue(mod, a);
        den *= Residue(mod, b);
    }
    if (v >= mod.exponent())
        return Residue::zero(mod);
    return num * inverse(den) * Residue(mod, pow_mpz(p, static_cast<int>(v)));
}

Comparison zhao_quotient_check(int n, int r, Prime p) {
    if (p < 7 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "the quotient congruence needs a prime p >= 7");
    if (r < 1 || r > n || n > 6)
        throw Error(ErrorCode::PreconditionFailed, "need 1 <= r <= n <= 6");
    const int e = ring_cap(p, 7);
    const PrimePowerModulus mod = make_modulus(p, e);
    const mpz_class pz = static_cast<unsigned long>(p);
    const Residue lhs = binomial_mod(mpz_class(pz * n), static_cast<u64>(r) * p, mod) *
                        inverse(Residue(mod, exact_binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(r))));
    // w_p p^3 = p R_1 up to p^{e}, since R_1 = w_p p^2 (mod p^4) lifts to R_1 itself.
    const Residue r1 = power_sum_inverses(p, 1, e);
    const Residue rhs = Residue::one(mod) + r1 * static_cast<long long>(p) * static_cast<long long>(n * r * (n - r));
    return compare(lhs, rhs);
}

Comparison granville_check(Prime p) {
    if (p < 5 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "the Granville congruence needs a prime p >= 5");
    const PrimePowerModulus mod = make_modulus(p, ring_cap(p, 7));
    const mpz_class pz = static_cast<unsigned long>(p);
    const Residue c32 = binomial_mod(mpz_class(3 * pz), 2 * p, mod);
    const Residue c21 = binomial_mod(mpz_class(2 * pz), p, mod);
    const Residue lhs = c32 * inverse(c21 * c21 * c21);
    const Residue rhs = embed_rational(ExactRational(3, 8), mod);
    return compare(lhs, rhs);
}

Comparison sun_wan_check(Prime p) {
    if (p < 7 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "the Sun-Wan congruence needs a prime p >= 7");
    if (p > 400)
        throw Error(ErrorCode::RangeError, "the exact oracle covers p <= 400 only");
    const PrimePowerModulus mod = make_modulus(p, 7);
    const Residue lhs(mod, exact_binomial(4 * p - 1, 2 * p - 1));
    const Residue rhs(mod, mpz_class(exact_binomial(4 * p, p) - 1));
    return compare(lhs, rhs);
}

} // namespace wolst
