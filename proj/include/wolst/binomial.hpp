#pragma once

// Binomial coefficients modulo prime powers: the central coefficient
// C(2p-1, p-1), an exact oracle, and the binomial congruences of Zhao,
// Granville and Sun-Wan.

#include "wolst/modring.hpp"

namespace wolst {

inline constexpr unsigned long kExactBinomialCap = 5000;

/// Two sides of a congruence evaluated in one ring, and v_p(lhs - rhs) capped at the ring exponent.
struct Comparison {
    Residue lhs;
    Residue rhs;
    int valuation = 0;
};

Comparison compare(const Residue& lhs, const Residue& rhs);

struct BinomialResidue {
    Prime p = 0;
    int k = 0;
    Residue value;                  // C(2p-1, p-1) mod p^k
    int evaluated_exponent = 0;     // min(k + 2, width cap)
    int wolstenholme_valuation = 0; // v_p(C - 1), capped at evaluated_exponent
};

/// prod_{i<p} (1 + p/i) mod p^k. p >= 5, k <= 9.
BinomialResidue central_binomial_mod(Prime p, int k);

/// Exact C(n, r) for 0 <= r <= n <= 5000, otherwise RangeError.
mpz_class exact_binomial(unsigned long n, unsigned long r);

/// C(n, r) mod p^K for any n, r with r <= n, stripping factors of p from each term. O(r).
Residue binomial_mod(const mpz_class& n, u64 r, const PrimePowerModulus& mod);

/// C(np, rp)/C(n, r) against 1 + w_p n r (n-r) p^3, with w_p p^2 taken as R_1(p) so the
/// comparison runs mod p^7. p >= 7, 1 <= r <= n <= 6.
Comparison zhao_quotient_check(int n, int r, Prime p);

/// C(3p, 2p)/C(2p, p)^3 against C(3,2)/C(2,1)^3 = 3/8, compared mod p^7 (capped by width).
Comparison granville_check(Prime p);

/// C(4p-1, 2p-1) against C(4p, p) - 1, exact for p in [7, 400]; RangeError above.
Comparison sun_wan_check(Prime p);

} // namespace wolst
