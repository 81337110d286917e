#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace wolst {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Fixed 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
    std::array<u64, 4> limb{};

    constexpr U256() = default;
    constexpr explicit U256(u64 v) : limb{v, 0, 0, 0} {}

    constexpr bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
    constexpr bool fits_u64() const { return (limb[1] | limb[2] | limb[3]) == 0; }

    int bit_length() const;

    friend constexpr bool operator==(const U256&, const U256&) = default;
    friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) {
        for (int i = 3; i >= 0; --i) {
            if (a.limb[i] != b.limb[i])
                return a.limb[i] < b.limb[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
};

// Wrapping arithmetic; callers keep operands below 2^255 so sums never carry out.
U256 add(const U256& a, const U256& b);
U256 sub(const U256& a, const U256& b);

/// Divides in place by a single word, returning the remainder.
u64 divmod_small(U256& a, u64 d);
u64 mod_small(const U256& a, u64 d);

std::string to_decimal(const U256& a);

mpz_class to_mpz(const U256& a);
/// Throws Error(WidthExceeded) when z is negative or needs more than 256 bits.
U256 from_mpz(const mpz_class& z);

} // namespace wolst
