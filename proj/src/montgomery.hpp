#pragma once

// Montgomery multiplication over N 64-bit limbs (CIOS). Internal to the
// library; public code sees canonical Residue values only.

#include <array>
#include <cstddef>
#include <utility>

#include <gmpxx.h>

#include "wolst/modring.hpp"

namespace wolst::detail {

template <int N>
struct Mont {
    using Elem = std::array<u64, N>;

    Elem m{};
    u64 minv = 0;
    Elem r2{};
    Elem one{}; // R mod m, i.e. 1 in Montgomery form

    explicit Mont(const ModulusData& d) : minv(d.minv) {
        for (int i = 0; i < N; ++i) {
            m[i] = d.m.limb[i];
            r2[i] = d.r2_mod.limb[i];
            one[i] = d.r_mod.limb[i];
        }
    }

    static Elem narrow(const U256& a) {
        Elem e{};
        for (int i = 0; i < N; ++i)
            e[i] = a.limb[i];
        return e;
    }
    static U256 widen(const Elem& e) {
        U256 a;
        for (int i = 0; i < N; ++i)
            a.limb[i] = e[i];
        return a;
    }

    bool geq_m(const Elem& t) const {
        for (int i = N - 1; i >= 0; --i) {
            if (t[i] != m[i])
                return t[i] > m[i];
        }
        return true;
    }

    void sub_m(Elem& t) const {
        u64 borrow = 0;
        for (int i = 0; i < N; ++i) {
            u128 d = static_cast<u128>(t[i]) - m[i] - borrow;
            t[i] = static_cast<u64>(d);
            borrow = static_cast<u64>(d >> 127);
        }
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::array<u64, N + 2> t{};
        for (int i = 0; i < N; ++i) {
            u64 c = 0;
            for (int j = 0; j < N; ++j) {
                u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + c;
                t[j] = static_cast<u64>(s);
                c = static_cast<u64>(s >> 64);
            }
            u128 s = static_cast<u128>(t[N]) + c;
            t[N] = static_cast<u64>(s);
            t[N + 1] = static_cast<u64>(s >> 64);

            u64 q = t[0] * minv;
            s = static_cast<u128>(q) * m[0] + t[0];
            c = static_cast<u64>(s >> 64);
            for (int j = 1; j < N; ++j) {
                s = static_cast<u128>(q) * m[j] + t[j] + c;
                t[j - 1] = static_cast<u64>(s);
                c = static_cast<u64>(s >> 64);
            }
            s = static_cast<u128>(t[N]) + c;
            t[N - 1] = static_cast<u64>(s);
            t[N] = t[N + 1] + static_cast<u64>(s >> 64);
        }
        Elem r;
        for (int i = 0; i < N; ++i)
            r[i] = t[i];
        if (t[N] != 0 || geq_m(r))
            sub_m(r);
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r;
        u64 carry = 0;
        for (int i = 0; i < N; ++i) {
            u128 s = static_cast<u128>(a[i]) + b[i] + carry;
            r[i] = static_cast<u64>(s);
            carry = static_cast<u64>(s >> 64);
        }
        if (carry != 0 || geq_m(r))
            sub_m(r);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem r;
        u64 borrow = 0;
        for (int i = 0; i < N; ++i) {
            u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
            r[i] = static_cast<u64>(d);
            borrow = static_cast<u64>(d >> 127);
        }
        if (borrow != 0) {
            u64 carry = 0;
            for (int i = 0; i < N; ++i) {
                u128 s = static_cast<u128>(r[i]) + m[i] + carry;
                r[i] = static_cast<u64>(s);
                carry = static_cast<u64>(s >> 64);
            }
        }
        return r;
    }

    Elem to_mont(const Elem& a) const { return mul(a, r2); }
    Elem to_mont(u64 v) const {
        Elem a{};
        a[0] = v;
        if (N == 1 && v >= m[0])
            a[0] = v % m[0];
        return mul(a, r2);
    }
    Elem from_mont(const Elem& a) const {
        Elem unit{};
        unit[0] = 1;
        return mul(a, unit);
    }

    Elem pow(Elem base, const mpz_class& e) const {
        Elem acc = one;
        const std::size_t bits = sgn(e) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(e.get_mpz_t(), i))
                acc = mul(acc, base);
        }
        return acc;
    }
    Elem pow(Elem base, u64 e) const {
        Elem acc = one;
        while (e != 0) {
            if (e & 1)
                acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// Inverse of a Montgomery-form element (a R -> a^{-1} R).
    Elem inverse(const Elem& a) const {
        mpz_class plain = to_mpz(widen(from_mont(a)));
        mpz_class inv = inverse_mod(plain, to_mpz(widen(m)));
        return to_mont(narrow(from_mpz(inv)));
    }
};

/// Calls f(Mont<N>) with N matching the modulus width. Modulus must be odd.
template <class F>
decltype(auto) with_mont(const ModulusData& d, F&& f) {
    switch (d.limbs) {
    case 1: return std::forward<F>(f)(Mont<1>(d));
    case 2: return std::forward<F>(f)(Mont<2>(d));
    case 3: return std::forward<F>(f)(Mont<3>(d));
    default: return std::forward<F>(f)(Mont<4>(d));
    }
}

} // namespace wolst::detail
