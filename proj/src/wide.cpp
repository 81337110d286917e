#include "wolst/wide.hpp"

#include <algorithm>
#include <bit>

#include "wolst/error.hpp"

namespace wolst {

int U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limb[i] != 0)
            return 64 * i + 64 - std::countl_zero(limb[i]);
    }
    return 0;
}

U256 add(const U256& a, const U256& b) {
    U256 r;
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = static_cast<u128>(a.limb[i]) + b.limb[i] + carry;
        r.limb[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    return r;
}

U256 sub(const U256& a, const U256& b) {
    U256 r;
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = static_cast<u128>(a.limb[i]) - b.limb[i] - borrow;
        r.limb[i] = static_cast<u64>(d);
        borrow = static_cast<u64>(d >> 127);
    }
    return r;
}

u64 divmod_small(U256& a, u64 d) {
    u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = (rem << 64) | a.limb[i];
        a.limb[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    return static_cast<u64>(rem);
}

u64 mod_small(const U256& a, u64 d) {
    U256 t = a;
    return divmod_small(t, d);
}

std::string to_decimal(const U256& a) {
    if (a.is_zero())
        return "0";
    std::string out;
    U256 t = a;
    constexpr u64 chunk = 10'000'000'000'000'000'000ULL; // 10^19
    while (!t.is_zero()) {
        u64 r = divmod_small(t, chunk);
        for (int i = 0; i < 19; ++i) {
            out.push_back(static_cast<char>('0' + r % 10));
            r /= 10;
            if (t.is_zero() && r == 0)
                break;
        }
    }
    while (out.size() > 1 && out.back() == '0')
        out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
}

mpz_class to_mpz(const U256& a) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 4, -1, sizeof(u64), 0, 0, a.limb.data());
    return z;
}

U256 from_mpz(const mpz_class& z) {
    if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 256)
        throw Error(ErrorCode::WidthExceeded, "integer does not fit in 256 bits");
    U256 r;
    std::size_t count = 0;
    mpz_export(r.limb.data(), &count, -1, sizeof(u64), 0, 0, z.get_mpz_t());
    return r;
}

} // namespace wolst
