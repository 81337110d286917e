#include "wolst/checks.hpp"

#include <algorithm>
#include <chrono>

#include "wolst/binomial.hpp"
#include "wolst/parallel.hpp"

namespace wolst {

// PrimeContext

PrimeContext::PrimeContext(Prime p) : p_(p), top_(std::min(kMaxExponent, max_exponent(p))) {
    if (!is_prime(p))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

void PrimeContext::ensure_sums() {
    if (!sums_)
        sums_ = inverse_sums(p_, top_, 8, true);
}

Residue PrimeContext::R(int n, int K) {
    if (n < 1 || n > 8)
        throw Error(ErrorCode::NMaxTooLarge, "cached power sums stop at R_8");
    ensure_sums();
    return sums_->R[static_cast<std::size_t>(n - 1)].reduce(K);
}

Residue PrimeContext::C(int K) {
    ensure_sums();
    return sums_->central_binomial->reduce(K);
}

bool PrimeContext::is_wolstenholme() { return C(4) == Residue::one(make_modulus(p_, 4)); }

BernoulliEngine& PrimeContext::engine() {
    if (!engine_)
        engine_ = std::make_unique<BernoulliEngine>(p_);
    return *engine_;
}

Residue PrimeContext::B(const mpz_class& n, int r) { return engine().bernoulli(n, r); }

Residue PrimeContext::high_bernoulli(int n, long s) {
    const auto key = std::make_pair(n, s);
    if (auto it = high_.find(key); it != high_.end())
        return it->second;
    Residue v = high_index_bernoulli(n, s, engine());
    high_.insert_or_assign(key, v);
    return v;
}

const SumProfile& PrimeContext::profile(int n_max, int K) {
    const auto key = std::make_pair(n_max, K);
    auto it = profiles_.find(key);
    if (it == profiles_.end())
        it = profiles_.emplace(key, elementary_symmetric(p_, n_max, K)).first;
    return it->second;
}

namespace {

/// Ring helpers for one evaluation at p^E.
struct Ring {
    PrimeContext& c;
    PrimePowerModulus mod;

    Ring(PrimeContext& ctx, int E) : c(ctx), mod(make_modulus(ctx.prime(), E)) {}

    int E() const { return mod.exponent(); }
    Prime p() const { return c.prime(); }
    Residue one() const { return Residue::one(mod); }
    Residue zero() const { return Residue::zero(mod); }
    Residue num(long long v) const { return Residue::from_int(mod, v); }
    Residue frac(long a, long b) const { return embed_rational(ExactRational(a, b), mod); }
    Residue pw(int i) const { return i >= E() ? zero() : Residue(mod, pow_mpz(p(), i)); }

    Residue R(int n) const { return c.R(n, E()); }
    Residue C() const { return c.C(E()); }

    /// p^shift * x where x is known mod p^(E - shift) or better.
    Residue shifted(const Residue& x, int shift) const {
        if (shift >= E())
            return zero();
        return Residue(mod, x.value()) * pw(shift);
    }
    /// p^shift * B_n, with B_n computed to the precision that matters.
    Residue pB(const mpz_class& n, int shift) const {
        if (shift >= E())
            return zero();
        return shifted(c.B(n, E() - shift), shift);
    }
};

mpz_class idx(Prime p, long a, long b) { return mpz_class(static_cast<unsigned long>(p)) * a + b; }

Evaluation from(const Comparison& cmp) { return Evaluation{cmp.lhs, cmp.rhs, kMaxExponent}; }

/// Worst member of a family of values that should all vanish.
struct Worst {
    std::optional<Residue> value;
    int v = kInfiniteValuation;
    void offer(const Residue& x) {
        const int vx = valuation(x);
        if (!value || vx < v) {
            value = x;
            v = vx;
        }
    }
};

using Eval = std::function<Evaluation(PrimeContext&, int)>;

CongruenceCheck make(std::string id, std::string description, std::string source, Prime min_prime, Scope scope,
                     int exponent, Eval eval, std::optional<Prime> max_prime = std::nullopt) {
    return CongruenceCheck{std::move(id), std::move(description), std::move(source), min_prime, max_prime,
                           scope,         exponent,               std::move(eval)};
}

std::vector<CongruenceCheck> build_registry() {
    using S = Scope;
    std::vector<CongruenceCheck> out;

    out.push_back(make("wolstenholme_thm", "C(2p-1,p-1) = 1 (mod p^3)", "Wolstenholme", 5, S::AllPrimes, 3,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one()};
                       }));

    out.push_back(make("glaisher_p4", "C(2p-1,p-1) = 1 - (2/3) p^3 B_{p-3} (mod p^4)", "Glaisher", 7, S::AllPrimes, 4,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one() - k.frac(2, 3) * k.pB(idx(k.p(), 1, -3), 3)};
                       }));

    out.push_back(make("lehmer_p3", "R_1 = -(p^2/3) B_{p-3} (mod p^3)", "E. Lehmer", 7, S::AllPrimes, 3,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.R(1), -(k.frac(1, 3) * k.pB(idx(k.p(), 1, -3), 2))};
                       }));

    out.push_back(make("helou_terjanian_p6",
                       "C(2p-1,p-1) = 1 - p^3 B_{p^3-p^2-2} + (p^5/3) B_{p-3} - (6p^5/5) B_{p-5} (mod p^6)",
                       "Helou-Terjanian", 11, S::AllPrimes, 6, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Residue rhs = k.one() - k.shifted(c.high_bernoulli(3, 2), 3) +
                                               k.frac(1, 3) * k.pB(idx(k.p(), 1, -3), 5) -
                                               k.frac(6, 5) * k.pB(idx(k.p(), 1, -5), 5);
                           return Evaluation{k.C(), rhs, 6};
                       }));

    out.push_back(make("granville_p5", "C(3p,2p)/C(2p,p)^3 = C(3,2)/C(2,1)^3 (mod p^5)", "Granville", 7,
                       S::AllPrimes, 5, [](PrimeContext& c, int) { return from(granville_check(c.prime())); }));

    out.push_back(make("sun_wan_p5", "C(4p-1,2p-1) = C(4p,p) - 1 (mod p^5)", "Sun-Wan", 7, S::AllPrimes, 5,
                       [](PrimeContext& c, int) { return from(sun_wan_check(c.prime())); }, Prime{400}));

    out.push_back(make("zhao_eq4", "C(np,rp)/C(n,r) = 1 + w_p n r (n-r) p^3 (mod p^5), all 1 <= r <= n <= 6",
                       "Zhao", 7, S::AllPrimes, 5, [](PrimeContext& c, int) {
                           std::optional<Comparison> worst;
                           for (int n = 1; n <= 6; ++n) {
                               for (int r = 1; r <= n; ++r) {
                                   Comparison cmp = zhao_quotient_check(n, r, c.prime());
                                   if (!worst || cmp.valuation < worst->valuation)
                                       worst = cmp;
                               }
                           }
                           return from(*worst);
                       }));

    out.push_back(make("lemma1_p4", "2 R_1 = -p R_2 (mod p^4)", "Zhao", 7, S::AllPrimes, 4, [](PrimeContext& c, int E) {
        Ring k(c, E);
        return Evaluation{k.R(1) * 2, -(k.pw(1) * k.R(2))};
    }));

    out.push_back(make("lemma2a_p5", "C(2p-1,p-1) = 1 + 2p R_1 (mod p^5)", "Zhao", 7, S::AllPrimes, 5,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one() + k.num(2) * k.pw(1) * k.R(1)};
                       }));

    out.push_back(make("lemma2b_p5", "C(2p-1,p-1) = 1 - p^2 R_2 (mod p^5)", "Zhao", 7, S::AllPrimes, 5,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one() - k.pw(2) * k.R(2)};
                       }));

    out.push_back(make("lemma3_equiv",
                       "C = 1 (mod p^4), R_1 = 0 (mod p^3), R_2 = 0 (mod p^2) and p | B_{p-3} hold together or fail "
                       "together; lhs is 1 when they agree",
                       "Glaisher, Zhao", 7, S::AllPrimes, 1, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const bool i = c.is_wolstenholme();
                           const bool ii = c.R(1, 3).is_zero();
                           const bool iii = c.R(2, 2).is_zero();
                           const bool iv = c.B(idx(k.p(), 1, -3), 1).is_zero();
                           const bool agree = i == ii && ii == iii && iii == iv;
                           return Evaluation{k.num(agree ? 1 : 0), k.one()};
                       }));

    out.push_back(make("lemma4_valuations",
                       "p^2 | R_n for odd n and p | R_n for even n, n <= p-3; lhs is the worst of R_n (odd) and "
                       "p R_n (even)",
                       "Bayat", 7, S::AllPrimes, 2,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const int top = static_cast<int>(k.p() - 3);
                           auto R = power_sums_of_inverses(k.p(), top, E);
                           Worst w;
                           for (int n = 1; n <= top; ++n) {
                               const Residue& x = R[static_cast<std::size_t>(n - 1)];
                               w.offer(n % 2 == 1 ? x : x * k.pw(1));
                           }
                           return Evaluation{*w.value, k.zero()};
                       },
                       Prime{20000}));

    out.push_back(make("lemma6_valuations",
                       "p^2 | H_n for odd n and p | H_n for even n, n <= p-3; lhs is the worst of H_n (odd) and "
                       "p H_n (even)",
                       "Newton's identities", 7, S::AllPrimes, 2,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const int top = static_cast<int>(k.p() - 3);
                           const SumProfile& prof = c.profile(top, E);
                           Worst w;
                           for (int n = 1; n <= top; ++n)
                               w.offer(n % 2 == 1 ? prof.h(n) : prof.h(n) * k.pw(1));
                           return Evaluation{*w.value, k.zero()};
                       },
                       Prime{20000}));

    for (int r = 1; r <= 5; ++r) {
        out.push_back(make("lemma13_r" + std::to_string(r),
                           "2 R_1 = -sum_{i=1}^{" + std::to_string(r) + "} p^i R_{i+1} (mod p^" + std::to_string(r + 1) +
                               ")",
                           "pairing k with p-k", 5, S::AllPrimes, r + 1, [r](PrimeContext& c, int E) {
                               Ring k(c, E);
                               Residue rhs = k.zero();
                               for (int i = 1; i <= r; ++i)
                                   rhs -= k.pw(i) * k.R(i + 1);
                               return Evaluation{k.R(1) * 2, rhs};
                           }));
    }

    out.push_back(make("lemma12_i_p6",
                       "R_1 = -(p^2/2) B_{p^4-p^3-2} - (p^4/4) B_{p^2-p-4} + (p^5/6) B_{p-3} + (p^5/20) B_{p-5} "
                       "(mod p^6)",
                       "Kummer, Faulhaber", 11, S::AllPrimes, 6, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Residue rhs = -(k.frac(1, 2) * k.shifted(c.high_bernoulli(4, 2), 2)) -
                                               k.frac(1, 4) * k.shifted(c.high_bernoulli(2, 4), 4) +
                                               k.frac(1, 6) * k.pB(idx(k.p(), 1, -3), 5) +
                                               k.frac(1, 20) * k.pB(idx(k.p(), 1, -5), 5);
                           return Evaluation{k.R(1), rhs, 6};
                       }));

    auto b_p4_minus_4 = [](PrimeContext& c) {
        const Prime p = c.prime();
        const mpz_class m = pow_mpz(p, 4) - pow_mpz(p, 3) - 4;
        return apply_kummer(kummer_reduce(m, p, 2), c.engine());
    };

    out.push_back(make("lemma12_ii_p4", "R_3 = -(3/2) p^2 B_{p^4-p^3-4} (mod p^4)", "Kummer, Faulhaber", 11,
                       S::AllPrimes, 4, [b_p4_minus_4](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.R(3), -(k.frac(3, 2) * k.shifted(b_p4_minus_4(c), 2)), 4};
                       }));

    out.push_back(make("lemma12_iii_p3", "R_4 = p B_{p^4-p^3-4} (mod p^3)", "Kummer, Faulhaber", 11, S::AllPrimes, 3,
                       [b_p4_minus_4](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.R(4), k.shifted(b_p4_minus_4(c), 1), 3};
                       }));

    out.push_back(make("lemma12_iv_p4", "p R_6 = -(2/5) R_5 (mod p^4)", "Faulhaber", 11, S::AllPrimes, 4,
                       [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.pw(1) * k.R(6), -(k.frac(2, 5) * k.R(5))};
                       }));

    out.push_back(make("eq19_p8", "2 R_1 = -p R_2 - p^2 R_3 - p^3 R_4 - p^4 R_5 - p^5 R_6 (mod p^8)",
                       "pairing k with p-k", 11, S::AllPrimes, 8, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           Residue rhs = k.zero();
                           for (int i = 1; i <= 5; ++i)
                               rhs -= k.pw(i) * k.R(i + 1);
                           return Evaluation{k.R(1) * 2, rhs};
                       }));

    out.push_back(make("prop1_p8", "C(2p-1,p-1) = 1 + sum_{i=1}^{6} (-1)^(i-1) (p^i/i) R_i (mod p^8)",
                       "Wolstenholme primes", 11, S::WolstenholmeOnly, 8, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           Residue rhs = k.one();
                           for (int i = 1; i <= 6; ++i) {
                               const Residue t = k.frac(1, i) * k.pw(i) * k.R(i);
                               rhs = i % 2 == 1 ? rhs + t : rhs - t;
                           }
                           return Evaluation{k.C(), rhs};
                       }));

    out.push_back(make("prop2_p8",
                       "C(2p-1,p-1) = 1 + (3p/2) R_1 - (p^2/4) R_2 + (7p^3/12) R_3 + (5p^5/12) R_5 (mod p^8)",
                       "Wolstenholme primes", 11, S::WolstenholmeOnly, 8, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Residue rhs = k.one() + k.frac(3, 2) * k.pw(1) * k.R(1) -
                                               k.frac(1, 4) * k.pw(2) * k.R(2) + k.frac(7, 12) * k.pw(3) * k.R(3) +
                                               k.frac(5, 12) * k.pw(5) * k.R(5);
                           return Evaluation{k.C(), rhs};
                       }));

    out.push_back(make("cor1_first_p7", "C(2p-1,p-1) = 1 - 2p R_1 - 2p^2 R_2 (mod p^7)", "Wolstenholme primes", 11,
                       S::WolstenholmeOnly, 7, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one() - k.num(2) * k.pw(1) * k.R(1) - k.num(2) * k.pw(2) * k.R(2)};
                       }));

    out.push_back(make("cor1_second_p7", "C(2p-1,p-1) = 1 + 2p R_1 + (2p^3/3) R_3 (mod p^7)", "Wolstenholme primes",
                       11, S::WolstenholmeOnly, 7, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           return Evaluation{k.C(), k.one() + k.num(2) * k.pw(1) * k.R(1) + k.frac(2, 3) * k.pw(3) * k.R(3)};
                       }));

    out.push_back(make("cor2_p7",
                       "C(2p-1,p-1) = 1 - p^3 B_{p^4-p^3-2} - (3/2) p^5 B_{p^2-p-4} + (3/10) p^6 B_{p-5} (mod p^7)",
                       "Wolstenholme primes", 11, S::WolstenholmeOnly, 7, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Residue rhs = k.one() - k.shifted(c.high_bernoulli(4, 2), 3) -
                                               k.frac(3, 2) * k.shifted(c.high_bernoulli(2, 4), 5) +
                                               k.frac(3, 10) * k.pB(idx(k.p(), 1, -5), 6);
                           return Evaluation{k.C(), rhs, 7};
                       }));

    out.push_back(make("cor3_p7",
                       "C(2p-1,p-1) in terms of B_{p-3}, B_{2p-4}, B_{3p-5}, B_{4p-6}, B_{p-5}, B_{2p-6} (mod p^7)",
                       "Wolstenholme primes", 11, S::WolstenholmeOnly, 7, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Prime p = k.p();
                           const mpz_class b3 = idx(p, 1, -3), b24 = idx(p, 2, -4), b35 = idx(p, 3, -5),
                                           b46 = idx(p, 4, -6), b5 = idx(p, 1, -5), b26 = idx(p, 2, -6);
                           Residue rhs = k.one();
                           rhs -= k.frac(8, 3) * k.pB(b3, 3) - k.num(3) * k.pB(b24, 3) + k.frac(8, 5) * k.pB(b35, 3) -
                                  k.frac(1, 3) * k.pB(b46, 3);
                           rhs -= k.frac(8, 9) * k.pB(b3, 4) - k.frac(3, 2) * k.pB(b24, 4) +
                                  k.frac(24, 25) * k.pB(b35, 4) - k.frac(2, 9) * k.pB(b46, 4);
                           rhs -= k.frac(8, 27) * k.pB(b3, 5) - k.frac(3, 4) * k.pB(b24, 5) +
                                  k.frac(72, 125) * k.pB(b35, 5) - k.frac(4, 27) * k.pB(b46, 5) +
                                  k.frac(12, 5) * k.pB(b5, 5) - k.pB(b26, 5);
                           rhs -= k.frac(2, 25) * k.pB(b5, 6);
                           return Evaluation{k.C(), rhs};
                       }));

    out.push_back(make("remark2_p8",
                       "C(2p-1,p-1) = 1 + 2p R_1 + (5p^3/6) R_3 + (p^4/4) R_4 + (17p^5/30) R_5 (mod p^8)",
                       "Wolstenholme primes", 11, S::WolstenholmeOnly, 8, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const Residue rhs = k.one() + k.num(2) * k.pw(1) * k.R(1) + k.frac(5, 6) * k.pw(3) * k.R(3) +
                                               k.frac(1, 4) * k.pw(4) * k.R(4) + k.frac(17, 30) * k.pw(5) * k.R(5);
                           return Evaluation{k.C(), rhs};
                       }));

    const int lemma7_exponent[] = {0, 0, 6, 5, 4, 4, 3};
    for (int n = 2; n <= 6; ++n) {
        const int e = lemma7_exponent[n];
        const std::string sign = n % 2 == 1 ? "" : "-";
        out.push_back(make("lemma7_r" + std::to_string(n) + "_p" + std::to_string(e),
                           "R_" + std::to_string(n) + " = " + sign + std::to_string(n) + " H_" + std::to_string(n) +
                               " (mod p^" + std::to_string(e) + ")",
                           "Wolstenholme primes", 11, S::WolstenholmeOnly, e, [n](PrimeContext& c, int E) {
                               Ring k(c, E);
                               const SumProfile& prof = c.profile(6, E);
                               const Residue rhs = prof.h(n) * static_cast<long long>(n % 2 == 1 ? n : -n);
                               return Evaluation{prof.r(n), rhs};
                           }));
    }

    out.push_back(make("cor4_iff",
                       "p is a Wolstenholme prime iff C(2p-1,p-1) = 1 - 2p R_1 - 2p^2 R_2 (mod p^7); lhs and rhs "
                       "are the two truth values",
                       "Wolstenholme primes", 11, S::AllPrimes, 1, [](PrimeContext& c, int E) {
                           Ring k(c, E);
                           const bool wolst = c.is_wolstenholme();
                           Ring seven(c, 7);
                           const bool holds = seven.C() == seven.one() - seven.num(2) * seven.pw(1) * seven.R(1) -
                                                               seven.num(2) * seven.pw(2) * seven.R(2);
                           return Evaluation{k.num(wolst ? 1 : 0), k.num(holds ? 1 : 0)};
                       }));

    out.push_back(make("kummer_eq10", "B_{p^2-3}/(p^2-3) = B_{p-3}/(p-3) (mod p^2)", "Kummer", 7, S::AllPrimes, 2,
                       [](PrimeContext& c, int E) {
                           const Prime p = c.prime();
                           const mpz_class m = pow_mpz(p, 2) - 3;
                           return Evaluation{c.engine().bernoulli_over_index(m, E),
                                             c.engine().bernoulli_over_index(idx(p, 1, -3), E)};
                       }));

    out.push_back(make("kummer_eq11",
                       "sum_{k=0}^{3} (-1)^k C(3,k) B_{p-3+k(p-1)}/(p-3+k(p-1)) = 0 (mod p^3)", "Kummer", 7,
                       S::AllPrimes, 3, [](PrimeContext& c, int E) {
                           const AlternatingSum s = kummer_alternating_sum(idx(c.prime(), 1, -3), 3, E, c.engine());
                           // No index p-3+k(p-1), k <= 3, is divisible by p once p >= 7.
                           return Evaluation{s.value, Residue::zero(s.value.modulus())};
                       }));

    const std::pair<int, long> eq26_cases[] = {{2, 2}, {2, 4}, {3, 2}, {3, 4}, {4, 2}};
    for (auto [n, s] : eq26_cases) {
        const std::string N = std::to_string(n), Sx = std::to_string(s);
        out.push_back(make("eq26_n" + N + "_s" + Sx,
                           "B_M with M = p^" + N + " - p^" + std::to_string(n - 1) + " - " + Sx +
                               ": Kummer route vs the alternating low-index expansion (mod p^" + N + ")",
                           "Kummer", 11, S::AllPrimes, n, [n, s](PrimeContext& c, int) {
                               const Prime p = c.prime();
                               const Residue lhs =
                                   apply_kummer(kummer_reduce(high_index(n, s, p), p, n), c.engine());
                               return Evaluation{lhs, c.high_bernoulli(n, s), n};
                           }));
    }
    return out;
}

CheckOutcome skipped(const CongruenceCheck& check, std::uint64_t p, std::string reason) {
    CheckOutcome o;
    o.check_id = check.id;
    o.p = p;
    o.modulus_exponent = check.modulus_exponent;
    o.skipped = true;
    o.reason = std::move(reason);
    return o;
}

} // namespace

const std::vector<CongruenceCheck>& registry() {
    static const std::vector<CongruenceCheck> reg = build_registry();
    return reg;
}

const CongruenceCheck& lookup(std::string_view id) {
    for (const CongruenceCheck& c : registry()) {
        if (c.id == id)
            return c;
    }
    throw Error(ErrorCode::UnknownCheck, "no check named '" + std::string(id) + "'");
}

int evaluation_exponent(const CongruenceCheck& check, Prime p) {
    return std::min({check.modulus_exponent + 2, kMaxExponent, max_exponent(p)});
}

CheckOutcome evaluate(const CongruenceCheck& check, PrimeContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome o;
    o.check_id = check.id;
    o.p = ctx.prime();
    o.modulus_exponent = check.modulus_exponent;
    try {
        const int E = evaluation_exponent(check, ctx.prime());
        if (E < check.modulus_exponent)
            throw Error(ErrorCode::WidthExceeded, "p^" + std::to_string(check.modulus_exponent) + " exceeds the width");
        const Evaluation ev = check.evaluator(ctx, E);
        o.lhs = ev.lhs.to_string();
        o.rhs = ev.rhs.to_string();
        o.residual_valuation = std::min(valuation(ev.lhs - ev.rhs), ev.exact_to);
        o.pass = o.residual_valuation >= check.modulus_exponent;
    } catch (const Error& e) {
        o.pass = false;
        o.reason = std::string("error: ") + e.what();
    }
    o.elapsed_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    return o;
}

CheckOutcome not_prime_outcome(const CongruenceCheck& check, std::uint64_t n) { return skipped(check, n, "NotPrime"); }

CheckOutcome run_check(const CongruenceCheck& check, PrimeContext& ctx) {
    const Prime p = ctx.prime();
    if (p < check.min_prime)
        return skipped(check, p, "BelowMinPrime");
    if (check.max_prime && p > *check.max_prime)
        return skipped(check, p, "AboveMaxPrime");
    if (check.scope == Scope::WolstenholmeOnly) {
        bool wolst = false;
        try {
            wolst = ctx.is_wolstenholme();
        } catch (const Error& e) {
            CheckOutcome o = skipped(check, p, std::string("error: ") + e.what());
            o.skipped = false;
            return o;
        }
        if (!wolst)
            return skipped(check, p, "NotWolstenholme");
    }
    return evaluate(check, ctx);
}

CheckOutcome run_check(std::string_view id, Prime p) {
    const CongruenceCheck& check = lookup(id);
    if (!is_prime(p))
        return not_prime_outcome(check, p);
    PrimeContext ctx(p);
    return run_check(check, ctx);
}

void run_suite(std::span<const std::string> ids, std::span<const Prime> primes, const SuiteOptions& opts,
               const std::function<void(const CheckOutcome&)>& emit) {
    std::vector<const CongruenceCheck*> checks;
    checks.reserve(ids.size());
    for (const std::string& id : ids)
        checks.push_back(&lookup(id));
    const std::vector<Prime> items(primes.begin(), primes.end());
    ordered_parallel_map(
        items, opts.parallelism,
        [&](Prime p) {
            std::vector<CheckOutcome> outs;
            outs.reserve(checks.size());
            if (!is_prime(p)) {
                for (const CongruenceCheck* c : checks)
                    outs.push_back(not_prime_outcome(*c, p));
                return outs;
            }
            PrimeContext ctx(p);
            for (const CongruenceCheck* c : checks) {
                outs.push_back(run_check(*c, ctx));
                if (!opts.timings)
                    outs.back().elapsed_ns = 0;
            }
            return outs;
        },
        [&](std::vector<CheckOutcome>&& outs) {
            for (const CheckOutcome& o : outs)
                emit(o);
        });
}

std::vector<CheckOutcome> run_suite(std::span<const std::string> ids, std::span<const Prime> primes,
                                    const SuiteOptions& opts) {
    std::vector<CheckOutcome> out;
    run_suite(ids, primes, opts, [&](const CheckOutcome& o) { out.push_back(o); });
    return out;
}

bool cor4_equivalence(Prime p) {
    if (p < 11 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "the equivalence is stated for primes p >= 11");
    PrimeContext ctx(p);
    const Ring seven(ctx, 7);
    const bool holds =
        seven.C() == seven.one() - seven.num(2) * seven.pw(1) * seven.R(1) - seven.num(2) * seven.pw(2) * seven.R(2);
    return ctx.is_wolstenholme() == holds;
}

} // namespace wolst
