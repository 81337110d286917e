#pragma once

// Exact arithmetic in Z/p^k Z, rationals with p-free denominators, and
// p-adic valuations.

#include <climits>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wolst/error.hpp"
#include "wolst/wide.hpp"

namespace wolst {

using Prime = std::uint64_t;

inline constexpr int kMaxExponent = 10;
/// Moduli must satisfy p^k < 2^kWidthBits (sums of two residues never carry out of 256 bits).
inline constexpr int kWidthBits = 255;
/// Valuation of zero.
inline constexpr int kInfiniteValuation = INT_MAX;

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

namespace detail {

struct ModulusData {
    Prime p = 0;
    int k = 0;
    U256 m;
    int limbs = 0;      // 64-bit words spanned by m
    bool odd = false;   // Montgomery fields below are valid only when odd
    u64 minv = 0;       // -m^{-1} mod 2^64
    U256 r_mod;         // 2^(64*limbs) mod m
    U256 r2_mod;        // 2^(128*limbs) mod m
};

} // namespace detail

/// The modulus p^k. Cheap to copy; the data is shared and immutable.
class PrimePowerModulus {
public:
    Prime prime() const { return d_->p; }
    int exponent() const { return d_->k; }
    const U256& value() const { return d_->m; }
    std::string to_string() const { return to_decimal(d_->m); }

    const detail::ModulusData& data() const { return *d_; }

    friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
        return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->k == b.d_->k);
    }

private:
    explicit PrimePowerModulus(std::shared_ptr<const detail::ModulusData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::ModulusData> d_;

    friend PrimePowerModulus make_modulus(Prime p, int k);
};

/// Throws NotPrime, ExponentOutOfRange (k outside 1..10) or WidthExceeded.
PrimePowerModulus make_modulus(Prime p, int k);

/// Largest k in 1..10 with p^k inside the width contract (0 if even p^1 is not).
int max_exponent(Prime p);

/// Arbitrary-precision fraction in lowest terms with positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long n) : q_(n) {} // NOLINT(google-explicit-constructor)
    ExactRational(const mpz_class& n) : q_(n) {} // NOLINT(google-explicit-constructor)
    ExactRational(const mpz_class& num, const mpz_class& den);
    explicit ExactRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    const mpq_class& get() const { return q_; }
    std::string to_string() const;

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ + b.q_)); }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ - b.q_)); }
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ * b.q_)); }
    friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
    ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }
    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }

private:
    mpq_class q_{0};
};

/// Element of Z/p^k Z held in canonical form 0 <= value < p^k.
class Residue {
public:
    Residue(const PrimePowerModulus& mod, u64 v);
    Residue(const PrimePowerModulus& mod, const U256& v);
    Residue(const PrimePowerModulus& mod, const mpz_class& v);
    static Residue zero(const PrimePowerModulus& mod) { return Residue(mod, u64{0}); }
    static Residue one(const PrimePowerModulus& mod) { return Residue(mod, u64{1}); }
    static Residue from_int(const PrimePowerModulus& mod, long long v);

    const U256& value() const { return value_; }
    const PrimePowerModulus& modulus() const { return mod_; }
    bool is_zero() const { return value_.is_zero(); }
    std::string to_string() const { return to_decimal(value_); }

    /// Image under Z/p^k -> Z/p^j, j <= k.
    Residue reduce(int j) const;
    Residue pow(const mpz_class& e) const;

    Residue& operator+=(const Residue& o);
    Residue& operator-=(const Residue& o);
    Residue& operator*=(const Residue& o);
    friend Residue operator+(Residue a, const Residue& b) { return a += b; }
    friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
    friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
    friend Residue operator*(Residue a, long long s) { return a *= from_int(a.mod_, s); }
    friend Residue operator*(long long s, Residue a) { return a *= from_int(a.mod_, s); }
    Residue operator-() const;

    friend bool operator==(const Residue& a, const Residue& b) { return a.mod_ == b.mod_ && a.value_ == b.value_; }

private:
    PrimePowerModulus mod_;
    U256 value_;
    void check_same(const Residue& o) const;
};

/// Throws NotInvertible when p divides a. Extended Euclid.
Residue inverse(const Residue& a);

/// One inversion plus prefix products. NotInvertible carries the first offending index.
std::vector<Residue> batch_inverses(std::span<const Residue> values);

/// q.num * q.den^{-1} mod p^k; DenominatorNotCoprime when p | q.den.
Residue embed_rational(const ExactRational& q, const PrimePowerModulus& mod);

/// v_p(num) - v_p(den); kInfiniteValuation for zero.
int valuation(const ExactRational& q, Prime p);
int valuation(const mpz_class& z, Prime p);
/// v_p of the canonical representative, capped at the modulus exponent (zero -> k).
int valuation(const Residue& r);

/// Extended Euclid over arbitrary precision; throws NotInvertible unless gcd(a, m) = 1.
mpz_class inverse_mod(const mpz_class& a, const mpz_class& m);

mpz_class pow_mpz(Prime p, int k);

} // namespace wolst
