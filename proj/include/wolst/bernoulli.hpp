#pragma once

// Bernoulli numbers: exact rationals for small indices, residues modulo p^r
// for arbitrary regular indices, Kummer index reduction, and the expansion of
// B_{p^n - p^{n-1} - s} through indices below n*p.

#include <map>
#include <mutex>
#include <vector>

#include "wolst/modring.hpp"

namespace wolst {

inline constexpr int kExactBernoulliCap = 400;

struct BernoulliExact {
    int index = 0;
    ExactRational value;
};

/// B_m from sum_{j<=m} C(m+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2). IndexTooLarge above 400.
/// Results are memoised; concurrent callers are serialised on the table.
BernoulliExact bernoulli_exact(int m);

/// Product of the primes q with (q - 1) | m. OddIndex for odd m.
mpz_class vsc_denominator(std::uint64_t m);

struct BernoulliResidue {
    mpz_class index;
    Prime p = 0;
    int r = 0;
    Residue value;
    bool regular = true; // index not divisible by p - 1
};

/// Bernoulli residues for one prime p >= 5.
///
/// Works with T_m = p * B_m, which is p-integral for every m (von Staudt-Clausen).
/// Faulhaber's formula for P_n(p) = sum_{k<p} k^n reads
///
///     P_n(p) = sum_{s=1}^{n+1} (1/s) C(n, s-1) p^{s-1} T_{n+1-s},
///
/// so T_n mod p^j follows from P_n(p) mod p^j and T_{n+1-s} mod p^{j-(s-1-v_p(s))}.
/// Odd indices >= 3 vanish, leaving one even neighbour per level. Irregular lower
/// indices need no special casing. Values are memoised per index at the highest
/// precision computed so far. Not thread-safe; use one engine per thread.
class BernoulliEngine {
public:
    explicit BernoulliEngine(Prime p);

    Prime prime() const { return p_; }

    /// B_n mod p^r. IrregularPosition when (p-1) | n for even n >= 2.
    Residue bernoulli(const mpz_class& n, int r);

    /// B_n / n mod p^r for regular n prime to p.
    Residue bernoulli_over_index(const mpz_class& n, int r);

    /// p * B_n mod p^j, any n >= 0.
    Residue scaled(const mpz_class& n, int j);

private:
    Prime p_;
    std::map<mpz_class, Residue> memo_;
};

/// B_n mod p^r, r >= 1 with p^{r+1} inside the width contract.
BernoulliResidue bernoulli_mod(const mpz_class& n, Prime p, int r);

struct KummerReduction {
    mpz_class source;
    mpz_class target;
    Prime p = 0;
    int r = 0;
    Residue transfer; // source * target^{-1} mod p^r, so B_source = transfer * B_target
};

/// Least n > r with n = m (mod phi(p^r)); B_m/m = B_n/n (mod p^r).
/// IrregularPosition when (p-1) | m; NoValidTarget when n > m or p | n.
KummerReduction kummer_reduce(const mpz_class& m, Prime p, int r);

/// B_source mod p^r through the reduced index.
Residue apply_kummer(const KummerReduction& red, BernoulliEngine& engine);

struct AlternatingSum {
    Residue value; // p^scale * sum, modulo p^(precision + scale)
    int scale = 0; // max v_p(m + k(p-1)) over the terms
};

/// sum_{k=0}^{r} (-1)^k C(r, k) B_{m+k(p-1)} / (m + k(p-1)), scaled to stay p-integral.
AlternatingSum kummer_alternating_sum(const mpz_class& m, int r, int precision, BernoulliEngine& engine);

/// v_p of the alternating sum above, capped at r + 2. At least r whenever the Kummer congruence holds.
int kummer_alternating_check(const mpz_class& m, Prime p, int r);

struct HighIndexTerm {
    long coefficient = 0; // (-1)^{k+1} C(n, k)
    mpz_class index;      // k(p-1) - s
};

/// p^n - p^{n-1} - s.
mpz_class high_index(int n, long s, Prime p);

/// Terms of B_M/M = sum_k (-1)^{k+1} C(n,k) B_{k(p-1)-s}/(k(p-1)-s) (mod p^n), M = high_index(n, s, p).
/// Rejects (NoValidTarget) any index that is below n+1 or divisible by p; IrregularPosition
/// when (p-1) | s; OddIndex for odd s.
std::vector<HighIndexTerm> reduce_high_index(int n, long s, Prime p);

/// B_M / M mod p^n evaluated from the low-index expansion.
Residue high_index_quotient(int n, long s, BernoulliEngine& engine);

/// B_M mod p^n evaluated from the low-index expansion.
Residue high_index_bernoulli(int n, long s, BernoulliEngine& engine);

} // namespace wolst
