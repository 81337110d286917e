#pragma once

// Power sums of inverses R_n(p) = sum_{k<p} k^{-n}, elementary symmetric sums
// H_n(p) of {1, 1/2, ..., 1/(p-1)}, ordinary power sums P_n(p), and the
// Wolstenholme quotient.

#include <optional>
#include <span>
#include <vector>

#include "wolst/modring.hpp"

namespace wolst {

/// R_1..R_{n_max} and H_1..H_{n_max} of one prime, all modulo p^modulus_exponent.
struct SumProfile {
    Prime p = 0;
    int modulus_exponent = 0;
    int n_max = 0;
    std::vector<Residue> R; // R[n-1] = R_n
    std::vector<Residue> H; // H[n-1] = H_n

    const Residue& r(int n) const { return R.at(static_cast<std::size_t>(n - 1)); }
    const Residue& h(int n) const { return H.at(static_cast<std::size_t>(n - 1)); }
};

struct WolstenholmeQuotient {
    Prime p = 0;
    U256 w; // unique integer in [0, p^2) with w = R_1(p)/p^2 (mod p^2)
};

/// Result of one pass over the inverses of 1..p-1 modulo p^K.
struct InverseSums {
    PrimePowerModulus modulus;
    std::vector<Residue> R;                  // R[n-1] = R_n, n = 1..n_max
    std::optional<Residue> central_binomial; // prod (1 + p/i) = C(2p-1, p-1)
};

/// One batch inversion of {1..p-1} mod p^K, then running powers (and optionally
/// the product prod(1 + p/i)). p odd, n_max >= 0.
InverseSums inverse_sums(Prime p, int K, int n_max, bool with_product);

/// R_n(p) mod p^K.
Residue power_sum_inverses(Prime p, int n, int K);

/// R_1..R_{n_max} mod p^K in one pass.
std::vector<Residue> power_sums_of_inverses(Prime p, int n_max, int K);

/// Newton's recurrence: H_n = ((-1)^{n-1}/n) (R_n + sum_{i<n} (-1)^i H_i R_{n-i}).
/// Needs 1..R.size() invertible modulo p.
std::vector<Residue> newton_elementary(std::span<const Residue> R);

/// Throws NMaxTooLarge when n_max > p - 2.
SumProfile elementary_symmetric(Prime p, int n_max, int K);

/// P_n(p) = sum_{k<p} k^n mod p^K.
Residue power_sum(Prime p, const mpz_class& n, int K);

/// w_p from R_1(p) mod p^4; DivisionNotExact if p^2 does not divide it (p < 5).
WolstenholmeQuotient wolstenholme_quotient(Prime p);

} // namespace wolst
