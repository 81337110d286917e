#pragma once

// Registry of named congruences, each an executable predicate over a prime.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wolst/bernoulli.hpp"
#include "wolst/harmonic.hpp"

namespace wolst {

enum class Scope { AllPrimes, WolstenholmeOnly };

/// Per-prime cache shared by the checks evaluated at that prime. Not thread-safe.
class PrimeContext {
public:
    explicit PrimeContext(Prime p);

    Prime prime() const { return p_; }
    /// Largest exponent any check may ask for: min(10, width cap).
    int top_exponent() const { return top_; }

    /// R_n(p) mod p^K for 1 <= n <= 8.
    Residue R(int n, int K);
    /// C(2p-1, p-1) mod p^K.
    Residue C(int K);
    /// C = 1 (mod p^4).
    bool is_wolstenholme();

    BernoulliEngine& engine();
    /// B_n mod p^r.
    Residue B(const mpz_class& n, int r);
    /// B_{p^n - p^(n-1) - s} mod p^n from the low-index expansion, cached.
    Residue high_bernoulli(int n, long s);

    /// R_1..R_n_max and H_1..H_n_max mod p^K, cached per (n_max, K).
    const SumProfile& profile(int n_max, int K);

private:
    Prime p_;
    int top_;
    std::optional<InverseSums> sums_; // R_1..R_8 and C at p^top_
    std::unique_ptr<BernoulliEngine> engine_;
    std::map<std::pair<int, long>, Residue> high_;
    std::map<std::pair<int, int>, SumProfile> profiles_;

    void ensure_sums();
};

/// lhs and rhs in one ring. The residual is reported up to exact_to at most:
/// right-hand sides built from Kummer-reduced Bernoulli numbers are only defined that far.
struct Evaluation {
    Residue lhs;
    Residue rhs;
    int exact_to = kMaxExponent;
};

struct CongruenceCheck {
    std::string id;
    std::string description;
    std::string source; // attribution of the statement
    Prime min_prime = 5;
    std::optional<Prime> max_prime;
    Scope scope = Scope::AllPrimes;
    int modulus_exponent = 1;
    /// Evaluates at exponent E (the stated exponent plus a margin of 2, width permitting).
    std::function<Evaluation(PrimeContext&, int E)> evaluator;
};

struct CheckOutcome {
    std::string check_id;
    Prime p = 0;
    int modulus_exponent = 0;
    std::string lhs; // decimal; empty when skipped
    std::string rhs;
    int residual_valuation = 0;
    bool pass = false;
    bool skipped = false;
    std::optional<std::string> reason;
    std::uint64_t elapsed_ns = 0;
};

const std::vector<CongruenceCheck>& registry();

/// UnknownCheck when absent.
const CongruenceCheck& lookup(std::string_view id);

/// min(stated + 2, top exponent of p).
int evaluation_exponent(const CongruenceCheck& check, Prime p);

/// Applies the gates (prime, min/max prime, Wolstenholme scope), then evaluates.
CheckOutcome run_check(const CongruenceCheck& check, PrimeContext& ctx);
CheckOutcome run_check(std::string_view id, Prime p);

/// Evaluates without the applicability gates.
CheckOutcome evaluate(const CongruenceCheck& check, PrimeContext& ctx);

/// Outcome for a non-prime input: skipped with reason NotPrime.
CheckOutcome not_prime_outcome(const CongruenceCheck& check, std::uint64_t n);

struct SuiteOptions {
    int parallelism = 1;
    bool timings = false; // elapsed_ns stays 0 otherwise, keeping output reproducible
};

/// Every (prime, id) pair, emitted in ascending prime then registry order. Failures are data.
void run_suite(std::span<const std::string> ids, std::span<const Prime> primes, const SuiteOptions& opts,
               const std::function<void(const CheckOutcome&)>& emit);
std::vector<CheckOutcome> run_suite(std::span<const std::string> ids, std::span<const Prime> primes,
                                    const SuiteOptions& opts = {});

/// (p is Wolstenholme) == (C = 1 - 2p R_1 - 2p^2 R_2 mod p^7). p >= 11.
bool cor4_equivalence(Prime p);

} // namespace wolst
