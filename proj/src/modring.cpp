#include "wolst/modring.hpp"

#include <array>

#include "montgomery.hpp"

namespace wolst {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1)
            r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

detail::ModulusData build_modulus(Prime p, int k, const mpz_class& m) {
    detail::ModulusData d;
    d.p = p;
    d.k = k;
    d.m = from_mpz(m);
    d.limbs = (d.m.bit_length() + 63) / 64;
    d.odd = (d.m.limb[0] & 1) != 0;
    if (d.odd) {
        // Newton iteration for m^{-1} mod 2^64.
        u64 inv = d.m.limb[0];
        for (int i = 0; i < 6; ++i)
            inv *= 2 - d.m.limb[0] * inv;
        d.minv = ~inv + 1;
        mpz_class r = mpz_class(1) << (64 * d.limbs);
        d.r_mod = from_mpz(mpz_class(r % m));
        d.r2_mod = from_mpz(mpz_class((r * r) % m));
    }
    return d;
}

mpz_class reduce_mpz(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    static constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : bases) {
        if (n % q == 0)
            return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : bases) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

mpz_class pow_mpz(Prime p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

PrimePowerModulus make_modulus(Prime p, int k) {
    // Recently built moduli; per-prime work asks for the same few p^k repeatedly.
    struct Slot {
        Prime p = 0;
        int k = 0;
        std::shared_ptr<const detail::ModulusData> data;
    };
    thread_local std::array<Slot, 16> cache{};
    thread_local std::size_t next_slot = 0;
    for (const Slot& s : cache) {
        if (s.data && s.p == p && s.k == k)
            return PrimePowerModulus(s.data);
    }
    if (p < 2 || !is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1 || k > kMaxExponent)
        throw Error(ErrorCode::ExponentOutOfRange, "exponent " + std::to_string(k) + " outside 1..10");
    mpz_class m = pow_mpz(p, k);
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > static_cast<std::size_t>(kWidthBits))
        throw Error(ErrorCode::WidthExceeded, std::to_string(p) + "^" + std::to_string(k) + " needs more than 255 bits");
    auto data = std::make_shared<const detail::ModulusData>(build_modulus(p, k, m));
    cache[next_slot] = Slot{p, k, data};
    next_slot = (next_slot + 1) % cache.size();
    return PrimePowerModulus(std::move(data));
}

int max_exponent(Prime p) {
    int k = 0;
    mpz_class m = 1;
    while (k < kMaxExponent) {
        m *= static_cast<unsigned long>(p);
        if (mpz_sizeinbase(m.get_mpz_t(), 2) > static_cast<std::size_t>(kWidthBits))
            break;
        ++k;
    }
    return k;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r0 = m, r1 = reduce_mpz(a, m);
    mpz_class s0 = 0, s1 = 1;
    while (sgn(r1) != 0) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        mpz_class s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw Error(ErrorCode::NotInvertible, "no inverse of " + a.get_str() + " modulo " + m.get_str());
    return reduce_mpz(s0, m);
}

// ExactRational

ExactRational::ExactRational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0)
        throw Error(ErrorCode::PreconditionFailed, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.is_zero())
        throw Error(ErrorCode::PreconditionFailed, "division by zero");
    return ExactRational(mpq_class(a.q_ / b.q_));
}

std::string ExactRational::to_string() const {
    if (den() == 1)
        return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

// Residue

Residue::Residue(const PrimePowerModulus& mod, u64 v) : mod_(mod), value_(v) {
    if (value_ >= mod_.value())
        value_ = from_mpz(reduce_mpz(mpz_class(static_cast<unsigned long>(v)), to_mpz(mod_.value())));
}

Residue::Residue(const PrimePowerModulus& mod, const U256& v) : mod_(mod), value_(v) {
    if (value_ >= mod_.value())
        value_ = from_mpz(reduce_mpz(to_mpz(v), to_mpz(mod_.value())));
}

Residue::Residue(const PrimePowerModulus& mod, const mpz_class& v)
    : mod_(mod), value_(from_mpz(reduce_mpz(v, to_mpz(mod.value())))) {}

Residue Residue::from_int(const PrimePowerModulus& mod, long long v) {
    if (v >= 0)
        return Residue(mod, static_cast<u64>(v));
    return Residue(mod, mpz_class(static_cast<long>(v)));
}

void Residue::check_same(const Residue& o) const {
    if (!(mod_ == o.mod_))
        throw Error(ErrorCode::ModulusMismatch,
                    "residues modulo " + mod_.to_string() + " and " + o.mod_.to_string());
}

Residue Residue::reduce(int j) const {
    if (j == mod_.exponent())
        return *this;
    if (j < 1 || j > mod_.exponent())
        throw Error(ErrorCode::ExponentOutOfRange, "cannot reduce to exponent " + std::to_string(j));
    return Residue(make_modulus(mod_.prime(), j), value_);
}

Residue& Residue::operator+=(const Residue& o) {
    check_same(o);
    value_ = add(value_, o.value_);
    if (value_ >= mod_.value())
        value_ = sub(value_, mod_.value());
    return *this;
}

Residue& Residue::operator-=(const Residue& o) {
    check_same(o);
    if (value_ >= o.value_)
        value_ = sub(value_, o.value_);
    else
        value_ = sub(add(value_, mod_.value()), o.value_);
    return *this;
}

Residue& Residue::operator*=(const Residue& o) {
    check_same(o);
    const auto& d = mod_.data();
    if (!d.odd) {
        value_ = from_mpz(reduce_mpz(to_mpz(value_) * to_mpz(o.value_), to_mpz(d.m)));
        return *this;
    }
    value_ = detail::with_mont(d, [&](const auto& mt) {
        using M = std::decay_t<decltype(mt)>;
        auto a = M::narrow(value_);
        auto b = M::narrow(o.value_);
        return M::widen(mt.mul(mt.mul(a, b), mt.r2));
    });
    return *this;
}

Residue Residue::operator-() const {
    if (value_.is_zero())
        return *this;
    return Residue(mod_, sub(mod_.value(), value_));
}

Residue Residue::pow(const mpz_class& e) const {
    if (sgn(e) < 0)
        return inverse(*this).pow(mpz_class(-e));
    const auto& d = mod_.data();
    if (!d.odd) {
        mpz_class r;
        mpz_class base = to_mpz(value_);
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), to_mpz(d.m).get_mpz_t());
        return Residue(mod_, r);
    }
    U256 v = detail::with_mont(d, [&](const auto& mt) {
        using M = std::decay_t<decltype(mt)>;
        return M::widen(mt.from_mont(mt.pow(mt.to_mont(M::narrow(value_)), e)));
    });
    return Residue(mod_, v);
}

Residue inverse(const Residue& a) {
    if (mod_small(a.value(), a.modulus().prime()) == 0)
        throw Error(ErrorCode::NotInvertible, a.to_string() + " shares the factor " +
                                                  std::to_string(a.modulus().prime()) + " with the modulus");
    return Residue(a.modulus(), inverse_mod(to_mpz(a.value()), to_mpz(a.modulus().value())));
}

std::vector<Residue> batch_inverses(std::span<const Residue> values) {
    std::vector<Residue> out;
    if (values.empty())
        return out;
    const PrimePowerModulus& mod = values.front().modulus();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i].modulus() == mod))
            throw Error(ErrorCode::ModulusMismatch, "batch mixes moduli", i);
        if (mod_small(values[i].value(), mod.prime()) == 0)
            throw Error(ErrorCode::NotInvertible, values[i].to_string() + " is divisible by p", i);
    }
    // prefix[i] = v_0 * ... * v_i
    std::vector<Residue> prefix;
    prefix.reserve(values.size());
    prefix.push_back(values.front());
    for (std::size_t i = 1; i < values.size(); ++i)
        prefix.push_back(prefix.back() * values[i]);
    Residue running = inverse(prefix.back());
    out.assign(values.size(), Residue::zero(mod));
    for (std::size_t i = values.size(); i-- > 1;) {
        out[i] = running * prefix[i - 1];
        running *= values[i];
    }
    out[0] = running;
    return out;
}

Residue embed_rational(const ExactRational& q, const PrimePowerModulus& mod) {
    mpz_class den = q.den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), mod.prime()))
        throw Error(ErrorCode::DenominatorNotCoprime,
                    q.to_string() + " has a denominator divisible by " + std::to_string(mod.prime()));
    mpz_class m = to_mpz(mod.value());
    mpz_class v = reduce_mpz(mpz_class(q.num() * inverse_mod(den, m)), m);
    return Residue(mod, v);
}

int valuation(const mpz_class& z, Prime p) {
    if (sgn(z) == 0)
        return kInfiniteValuation;
    mpz_class t = z;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

int valuation(const ExactRational& q, Prime p) {
    if (q.is_zero())
        return kInfiniteValuation;
    return valuation(q.num(), p) - valuation(q.den(), p);
}

int valuation(const Residue& r) {
    const int k = r.modulus().exponent();
    if (r.is_zero())
        return k;
    U256 t = r.value();
    int v = 0;
    while (v < k && divmod_small(t, r.modulus().prime()) == 0)
        ++v;
    return v;
}

} // namespace wolst
