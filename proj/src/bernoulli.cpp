#include "wolst/bernoulli.hpp"

#include "wolst/harmonic.hpp"

namespace wolst {

namespace {

void require_engine_prime(Prime p) {
    if (p < 5 || !is_prime(p))
        throw Error(ErrorCode::PreconditionFailed, "Bernoulli residues need a prime p >= 5, got " + std::to_string(p));
}

bool is_odd(const mpz_class& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

bool divisible(const mpz_class& n, u64 d) { return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0; }

// floor(log_p(x)) for x >= 1.
int floor_log(const mpz_class& x, Prime p) {
    int e = 0;
    mpz_class t = p;
    while (t <= x) {
        t *= static_cast<unsigned long>(p);
        ++e;
    }
    return e;
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

void require_even_regular(const mpz_class& m, Prime p) {
    if (sgn(m) <= 0)
        throw Error(ErrorCode::PreconditionFailed, "index must be positive");
    if (is_odd(m))
        throw Error(ErrorCode::OddIndex, "index " + m.get_str() + " is odd");
    if (divisible(m, p - 1))
        throw Error(ErrorCode::IrregularPosition,
                    "index " + m.get_str() + " is divisible by p - 1 = " + std::to_string(p - 1));
}

} // namespace

BernoulliExact bernoulli_exact(int m) {
    if (m < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative Bernoulli index");
    if (m > kExactBernoulliCap)
        throw Error(ErrorCode::IndexTooLarge,
                    "exact Bernoulli numbers stop at index " + std::to_string(kExactBernoulliCap));
    static std::mutex lock;
    static std::vector<mpq_class> table{mpq_class(1), mpq_class(-1, 2)};
    std::lock_guard<std::mutex> guard(lock);
    for (int n = static_cast<int>(table.size()); n <= m; ++n) {
        if (n % 2 == 1) {
            table.emplace_back(0);
            continue;
        }
        mpq_class acc = 0;
        mpz_class c;
        for (int j = 0; j < n; ++j) {
            if (j >= 3 && j % 2 == 1)
                continue;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(j));
            acc += mpq_class(c) * table[static_cast<std::size_t>(j)];
        }
        mpq_class b = -acc / (n + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return BernoulliExact{m, ExactRational(table[static_cast<std::size_t>(m)])};
}

mpz_class vsc_denominator(std::uint64_t m) {
    if (m == 0)
        return 1;
    if (m % 2 == 1)
        throw Error(ErrorCode::OddIndex, "index " + std::to_string(m) + " is odd");
    mpz_class d = 1;
    auto take = [&](u64 divisor) {
        if (is_prime(divisor + 1))
            d *= static_cast<unsigned long>(divisor + 1);
    };
    for (u64 a = 1; a <= m / a; ++a) {
        if (m % a != 0)
            continue;
        take(a);
        if (a != m / a)
            take(m / a);
    }
    return d;
}

BernoulliEngine::BernoulliEngine(Prime p) : p_(p) { require_engine_prime(p); }

Residue BernoulliEngine::scaled(const mpz_class& n, int j) {
    const PrimePowerModulus mod = make_modulus(p_, j);
    if (sgn(n) < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative Bernoulli index");
    if (n == 0)
        return Residue(mod, p_);
    if (n == 1)
        return -(Residue(mod, p_) * inverse(Residue(mod, u64{2})));
    if (is_odd(n))
        return Residue::zero(mod);
    if (auto it = memo_.find(n); it != memo_.end() && it->second.modulus().exponent() >= j)
        return it->second.reduce(j);

    const mpz_class m = to_mpz(mod.value());
    Residue t = power_sum(p_, n, j);
    const int top_log = floor_log(mpz_class(n + 1), p_);
    const mpz_class s_cap = mpz_class(n + 1) < j + top_log + 1 ? mpz_class(n + 1) : mpz_class(j + top_log + 1);
    const unsigned long s_max = s_cap.get_ui();
    for (unsigned long s = 2; s <= s_max; ++s) {
        unsigned long unit = s;
        int e = 0;
        while (unit % p_ == 0) {
            unit /= p_;
            ++e;
        }
        const int w = static_cast<int>(s) - 1 - e;
        if (w >= j)
            continue;
        const mpz_class idx = n + 1 - s;
        if (idx >= 3 && is_odd(idx))
            continue;
        const Residue lower = scaled(idx, j - w);
        mpz_class coef = binomial(n, s - 1) % m;
        coef = coef * inverse_mod(mpz_class(unit), m) * pow_mpz(p_, w) % m;
        t -= Residue(mod, coef) * Residue(mod, lower.value());
    }
    memo_.insert_or_assign(n, t);
    return t;
}

Residue BernoulliEngine::bernoulli(const mpz_class& n, int r) {
    if (r < 1)
        throw Error(ErrorCode::ExponentOutOfRange, "precision must be at least 1");
    const PrimePowerModulus mod = make_modulus(p_, r);
    if (sgn(n) < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative Bernoulli index");
    if (n == 0)
        return Residue::one(mod);
    if (n == 1)
        return -inverse(Residue(mod, u64{2}));
    if (is_odd(n))
        return Residue::zero(mod);
    if (divisible(n, p_ - 1))
        throw Error(ErrorCode::IrregularPosition,
                    "B_" + n.get_str() + " has p = " + std::to_string(p_) + " in its denominator");
    U256 v = scaled(n, r + 1).value();
    if (divmod_small(v, p_) != 0)
        throw Error(ErrorCode::DivisionNotExact, "p * B_" + n.get_str() + " is not divisible by p");
    return Residue(mod, v);
}

Residue BernoulliEngine::bernoulli_over_index(const mpz_class& n, int r) {
    if (sgn(n) <= 0 || divisible(n, p_))
        throw Error(ErrorCode::DenominatorNotCoprime, "index " + n.get_str() + " is not prime to p");
    const Residue b = bernoulli(n, r);
    return b * inverse(Residue(b.modulus(), n));
}

BernoulliResidue bernoulli_mod(const mpz_class& n, Prime p, int r) {
    BernoulliEngine engine(p);
    BernoulliResidue out{n, p, r, engine.bernoulli(n, r), true};
    out.regular = !divisible(n, p - 1);
    return out;
}

KummerReduction kummer_reduce(const mpz_class& m, Prime p, int r) {
    require_engine_prime(p);
    if (r < 1)
        throw Error(ErrorCode::ExponentOutOfRange, "precision must be at least 1");
    require_even_regular(m, p);
    const PrimePowerModulus mod = make_modulus(p, r);
    const mpz_class phi = pow_mpz(p, r - 1) * static_cast<unsigned long>(p - 1);
    mpz_class n = m % phi;
    while (n <= r)
        n += phi;
    if (n > m)
        throw Error(ErrorCode::NoValidTarget, "no index below " + m.get_str() + " exceeds the precision");
    if (divisible(n, p))
        throw Error(ErrorCode::NoValidTarget, "reduced index " + n.get_str() + " is divisible by p");
    Residue transfer = Residue(mod, m) * inverse(Residue(mod, n));
    return KummerReduction{m, n, p, r, transfer};
}

Residue apply_kummer(const KummerReduction& red, BernoulliEngine& engine) {
    if (engine.prime() != red.p)
        throw Error(ErrorCode::ModulusMismatch, "engine prime differs from the reduction prime");
    return red.transfer * engine.bernoulli(red.target, red.r);
}

AlternatingSum kummer_alternating_sum(const mpz_class& m, int r, int precision, BernoulliEngine& engine) {
    const Prime p = engine.prime();
    if (r < 1)
        throw Error(ErrorCode::PreconditionFailed, "order must be at least 1");
    require_even_regular(m, p);
    if (m <= r)
        throw Error(ErrorCode::PreconditionFailed, "index must exceed the order");
    std::vector<mpz_class> idx;
    int top = 0;
    for (int k = 0; k <= r; ++k) {
        idx.push_back(m + mpz_class(static_cast<unsigned long>(k)) * static_cast<unsigned long>(p - 1));
        top = std::max(top, valuation(idx.back(), p));
    }
    // Each term is scaled by p^top so indices divisible by p stay integral.
    const int prec = precision + top;
    const PrimePowerModulus mod = make_modulus(p, prec);
    Residue sum = Residue::zero(mod);
    for (int k = 0; k <= r; ++k) {
        const mpz_class& i = idx[static_cast<std::size_t>(k)];
        const int v = valuation(i, p);
        mpz_class unit = i;
        for (int t = 0; t < v; ++t)
            unit /= static_cast<unsigned long>(p);
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(k));
        if (k % 2 == 1)
            c = -c;
        Residue term = engine.bernoulli(i, prec);
        term *= Residue(mod, mpz_class(c * pow_mpz(p, top - v)));
        term *= inverse(Residue(mod, unit));
        sum += term;
    }
    return AlternatingSum{sum, top};
}

int kummer_alternating_check(const mpz_class& m, Prime p, int r) {
    BernoulliEngine engine(p);
    const AlternatingSum s = kummer_alternating_sum(m, r, r + 2, engine);
    return std::min(valuation(s.value) - s.scale, r + 2);
}

mpz_class high_index(int n, long s, Prime p) {
    if (n < 1)
        throw Error(ErrorCode::PreconditionFailed, "n must be positive");
    return pow_mpz(p, n) - pow_mpz(p, n - 1) - s;
}

std::vector<HighIndexTerm> reduce_high_index(int n, long s, Prime p) {
    require_engine_prime(p);
    if (n < 1 || s < 1)
        throw Error(ErrorCode::PreconditionFailed, "n and s must be positive");
    if (s % 2 == 1)
        throw Error(ErrorCode::OddIndex, "s = " + std::to_string(s) + " is odd");
    if (static_cast<u64>(s) % (p - 1) == 0)
        throw Error(ErrorCode::IrregularPosition, "s is divisible by p - 1");
    std::vector<HighIndexTerm> terms;
    for (int k = 1; k <= n; ++k) {
        mpz_class idx = mpz_class(static_cast<unsigned long>(k)) * static_cast<unsigned long>(p - 1) - s;
        if (idx < n + 1 || divisible(idx, p))
            throw Error(ErrorCode::NoValidTarget,
                        "index " + idx.get_str() + " must exceed " + std::to_string(n) + " and be prime to p");
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        terms.push_back(HighIndexTerm{k % 2 == 1 ? c.get_si() : -c.get_si(), idx});
    }
    return terms;
}

Residue high_index_quotient(int n, long s, BernoulliEngine& engine) {
    const Prime p = engine.prime();
    const auto terms = reduce_high_index(n, s, p);
    const PrimePowerModulus mod = make_modulus(p, n);
    Residue sum = Residue::zero(mod);
    for (const HighIndexTerm& t : terms)
        sum += engine.bernoulli_over_index(t.index, n) * static_cast<long long>(t.coefficient);
    return sum;
}

Residue high_index_bernoulli(int n, long s, BernoulliEngine& engine) {
    const Residue q = high_index_quotient(n, s, engine);
    return q * Residue(q.modulus(), high_index(n, s, engine.prime()));
}

} // namespace wolst
