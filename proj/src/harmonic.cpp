#include "wolst/harmonic.hpp"

#include "montgomery.hpp"

namespace wolst {

namespace {

void require_odd_prime(Prime p) {
    if (p < 3 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "expected an odd prime, got " + std::to_string(p));
}

// Visits (k, k^{-1}) for k = p-1 down to 1, Montgomery form, one inversion in total.
template <int N, class Visit>
void for_each_inverse(const detail::Mont<N>& mt, u64 count, Visit&& visit) {
    using Elem = typename detail::Mont<N>::Elem;
    // prefix[i] = (i+1)!; k is stepped by adding R mod m.
    std::vector<Elem> prefix(count);
    Elem km = mt.one;
    Elem acc = mt.one;
    for (u64 k = 1; k <= count; ++k) {
        if (k > 1)
            km = mt.add(km, mt.one);
        acc = mt.mul(acc, km);
        prefix[k - 1] = acc;
    }
    Elem inv = mt.inverse(acc);
    for (u64 k = count; k >= 1; --k) {
        const Elem ik = k > 1 ? mt.mul(inv, prefix[k - 2]) : inv;
        inv = mt.mul(inv, km);
        km = mt.sub(km, mt.one);
        visit(k, ik);
    }
}

template <int N>
InverseSums run_kernel(const detail::Mont<N>& mt, const PrimePowerModulus& mod, int n_max, bool with_product) {
    using M = detail::Mont<N>;
    using Elem = typename M::Elem;

    std::vector<Elem> sums(static_cast<std::size_t>(n_max), Elem{});
    const Elem pm = mt.to_mont(mod.prime());
    Elem product = mt.one;
    for_each_inverse(mt, mod.prime() - 1, [&](u64, const Elem& ik) {
        if (n_max > 0) {
            Elem pw = ik;
            sums[0] = mt.add(sums[0], pw);
            for (int n = 1; n < n_max; ++n) {
                pw = mt.mul(pw, ik);
                sums[static_cast<std::size_t>(n)] = mt.add(sums[static_cast<std::size_t>(n)], pw);
            }
        }
        if (with_product)
            product = mt.mul(product, mt.add(mt.one, mt.mul(pm, ik)));
    });

    InverseSums out{mod, {}, std::nullopt};
    out.R.reserve(sums.size());
    for (const Elem& s : sums)
        out.R.emplace_back(mod, M::widen(mt.from_mont(s)));
    if (with_product)
        out.central_binomial = Residue(mod, M::widen(mt.from_mont(product)));
    return out;
}

} // namespace

InverseSums inverse_sums(Prime p, int K, int n_max, bool with_product) {
    require_odd_prime(p);
    if (n_max < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative n_max");
    const PrimePowerModulus mod = make_modulus(p, K);
    return detail::with_mont(mod.data(), [&](const auto& mt) { return run_kernel(mt, mod, n_max, with_product); });
}

std::vector<Residue> power_sums_of_inverses(Prime p, int n_max, int K) {
    return inverse_sums(p, K, n_max, false).R;
}

Residue power_sum_inverses(Prime p, int n, int K) {
    if (n < 1)
        throw Error(ErrorCode::PreconditionFailed, "n must be positive");
    if (n <= 8)
        return power_sums_of_inverses(p, n, K).back();
    // Exponentiate each inverse instead of stepping through n running powers.
    require_odd_prime(p);
    const PrimePowerModulus mod = make_modulus(p, K);
    U256 total = detail::with_mont(mod.data(), [&](const auto& mt) {
        using M = std::decay_t<decltype(mt)>;
        typename M::Elem sum{};
        for_each_inverse(mt, p - 1, [&](u64, const typename M::Elem& ik) {
            sum = mt.add(sum, mt.pow(ik, static_cast<u64>(n)));
        });
        return M::widen(mt.from_mont(sum));
    });
    return Residue(mod, total);
}

std::vector<Residue> newton_elementary(std::span<const Residue> R) {
    std::vector<Residue> H;
    if (R.empty())
        return H;
    const PrimePowerModulus& mod = R.front().modulus();
    H.reserve(R.size());
    for (std::size_t n = 1; n <= R.size(); ++n) {
        Residue acc = R[n - 1];
        for (std::size_t i = 1; i < n; ++i) {
            Residue term = H[i - 1] * R[n - i - 1];
            if (i % 2 == 1)
                acc -= term;
            else
                acc += term;
        }
        Residue inv_n = inverse(Residue(mod, static_cast<u64>(n)));
        acc *= inv_n;
        H.push_back(n % 2 == 1 ? acc : -acc);
    }
    return H;
}

SumProfile elementary_symmetric(Prime p, int n_max, int K) {
    require_odd_prime(p);
    if (n_max < 1)
        throw Error(ErrorCode::PreconditionFailed, "n_max must be positive");
    if (static_cast<u64>(n_max) > p - 2)
        throw Error(ErrorCode::NMaxTooLarge,
                    "n_max " + std::to_string(n_max) + " exceeds p - 2 = " + std::to_string(p - 2));
    SumProfile prof;
    prof.p = p;
    prof.modulus_exponent = K;
    prof.n_max = n_max;
    prof.R = power_sums_of_inverses(p, n_max, K);
    const PrimePowerModulus& mod = prof.R.front().modulus();
    if (!mod.data().odd) {
        prof.H = newton_elementary(prof.R);
        return prof;
    }
    // Same recurrence as newton_elementary, kept in Montgomery form; n_max reaches p - 2 here.
    detail::with_mont(mod.data(), [&](const auto& mt) {
        using M = std::decay_t<decltype(mt)>;
        using Elem = typename M::Elem;
        const auto n = static_cast<std::size_t>(n_max);
        std::vector<Elem> R(n), H(n), inv(n);
        for (std::size_t i = 0; i < n; ++i)
            R[i] = mt.to_mont(M::narrow(prof.R[i].value()));
        // 1/1..1/n_max by prefix products.
        Elem acc = mt.one, km = mt.one;
        std::vector<Elem> prefix(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0)
                km = mt.add(km, mt.one);
            acc = mt.mul(acc, km);
            prefix[i] = acc;
        }
        Elem run = mt.inverse(acc);
        for (std::size_t i = n; i-- > 0;) {
            inv[i] = i > 0 ? mt.mul(run, prefix[i - 1]) : run;
            run = mt.mul(run, km);
            km = mt.sub(km, mt.one);
        }
        for (std::size_t k = 1; k <= n; ++k) {
            Elem s = R[k - 1];
            for (std::size_t i = 1; i < k; ++i) {
                const Elem t = mt.mul(H[i - 1], R[k - i - 1]);
                s = i % 2 == 1 ? mt.sub(s, t) : mt.add(s, t);
            }
            s = mt.mul(s, inv[k - 1]);
            H[k - 1] = k % 2 == 1 ? s : mt.sub(Elem{}, s);
        }
        prof.H.reserve(n);
        for (const Elem& h : H)
            prof.H.emplace_back(mod, M::widen(mt.from_mont(h)));
    });
    return prof;
}

Residue power_sum(Prime p, const mpz_class& n, int K) {
    require_odd_prime(p);
    if (sgn(n) < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative exponent");
    const PrimePowerModulus mod = make_modulus(p, K);
    // Every k < p is a unit, so the exponent only matters modulo phi(p^K).
    const mpz_class phi = pow_mpz(p, K - 1) * static_cast<unsigned long>(p - 1);
    const mpz_class e = n >= phi ? mpz_class(n % phi) : n;
    U256 total = detail::with_mont(mod.data(), [&](const auto& mt) {
        using M = std::decay_t<decltype(mt)>;
        typename M::Elem sum{};
        typename M::Elem km = mt.one;
        for (u64 k = 1; k < p; ++k) {
            if (k > 1)
                km = mt.add(km, mt.one);
            sum = mt.add(sum, mt.pow(km, e));
        }
        return M::widen(mt.from_mont(sum));
    });
    return Residue(mod, total);
}

WolstenholmeQuotient wolstenholme_quotient(Prime p) {
    const Residue r1 = power_sum_inverses(p, 1, 4);
    U256 v = r1.value();
    if (divmod_small(v, p) != 0 || divmod_small(v, p) != 0)
        throw Error(ErrorCode::DivisionNotExact,
                    "R_1(" + std::to_string(p) + ") is not divisible by p^2");
    return WolstenholmeQuotient{p, v};
}

} // namespace wolst
