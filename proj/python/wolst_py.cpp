#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wolst/bernoulli.hpp"
#include "wolst/binomial.hpp"
#include "wolst/checks.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/scan.hpp"

namespace py = pybind11;
using namespace wolst;

namespace {

py::int_ big(const std::string& decimal) {
    if (decimal.empty())
        return py::int_(0);
    return py::reinterpret_steal<py::int_>(PyLong_FromString(decimal.c_str(), nullptr, 10));
}

py::int_ big(const Residue& r) { return big(r.to_string()); }
py::int_ big(const mpz_class& z) { return big(z.get_str()); }

mpz_class from_int(const py::int_& v) { return mpz_class(std::string(py::str(v))); }

py::dict outcome_dict(const CheckOutcome& o) {
    py::dict d;
    d["check"] = o.check_id;
    d["p"] = o.p;
    d["modulus_exponent"] = o.modulus_exponent;
    d["lhs"] = big(o.lhs);
    d["rhs"] = big(o.rhs);
    d["residual_valuation"] = o.residual_valuation;
    d["pass"] = o.pass;
    d["skipped"] = o.skipped;
    d["reason"] = o.reason ? py::object(py::str(*o.reason)) : py::object(py::none());
    d["elapsed_ns"] = o.elapsed_ns;
    return d;
}

py::dict record_dict(const ScanRecord& r) {
    py::dict d;
    d["p"] = r.p;
    d["criterion"] = std::string(criterion_name(r.criterion));
    d["observed_valuation"] = r.observed_valuation;
    d["flagged"] = r.flagged;
    d["skipped"] = r.skipped;
    d["reason"] = r.reason ? py::object(py::str(*r.reason)) : py::object(py::none());
    d["value"] = big(r.value);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Congruences modulo prime powers and Wolstenholme primes";

    py::register_exception<Error>(m, "WolstError", PyExc_ValueError);

    m.def("is_prime", [](std::uint64_t n) { return is_prime(n); });

    m.def(
        "central_binomial",
        [](Prime p, int k) {
            const BinomialResidue b = central_binomial_mod(p, k);
            return py::make_tuple(big(b.value), b.wolstenholme_valuation);
        },
        py::arg("p"), py::arg("k"), "C(2p-1, p-1) mod p^k and v_p(C - 1), capped at min(k + 2, width).");

    m.def(
        "power_sum_inverses", [](Prime p, int n, int K) { return big(power_sum_inverses(p, n, K)); }, py::arg("p"),
        py::arg("n"), py::arg("K"), "R_n(p) mod p^K.");

    m.def(
        "elementary_symmetric",
        [](Prime p, int n_max, int K) {
            const SumProfile prof = elementary_symmetric(p, n_max, K);
            py::list R, H;
            for (int n = 1; n <= n_max; ++n) {
                R.append(big(prof.r(n)));
                H.append(big(prof.h(n)));
            }
            return py::make_tuple(R, H);
        },
        py::arg("p"), py::arg("n_max"), py::arg("K"), "([R_1..R_n_max], [H_1..H_n_max]) mod p^K.");

    m.def(
        "wolstenholme_quotient", [](Prime p) { return big(wolst::to_mpz(wolstenholme_quotient(p).w)); }, py::arg("p"));

    m.def(
        "bernoulli_exact",
        [](int n) {
            const mpq_class q = bernoulli_exact(n).value.get();
            return py::make_tuple(big(mpz_class(q.get_num())), big(mpz_class(q.get_den())));
        },
        py::arg("n"), "B_n as (numerator, denominator).");

    m.def(
        "bernoulli_mod", [](const py::int_& n, Prime p, int r) { return big(bernoulli_mod(from_int(n), p, r).value); },
        py::arg("n"), py::arg("p"), py::arg("r"), "B_n mod p^r; n may exceed 64 bits.");

    m.def(
        "kummer_reduce",
        [](const py::int_& mm, Prime p, int r) {
            const KummerReduction red = kummer_reduce(from_int(mm), p, r);
            return py::make_tuple(big(red.target), big(red.transfer));
        },
        py::arg("m"), py::arg("p"), py::arg("r"), "(n, m/n mod p^r) with B_m = (m/n) B_n mod p^r.");

    m.def("check_ids", [] {
        std::vector<std::string> ids;
        for (const CongruenceCheck& c : registry())
            ids.push_back(c.id);
        return ids;
    });

    m.def(
        "describe",
        [](const std::string& id) {
            const CongruenceCheck& c = lookup(id);
            py::dict d;
            d["id"] = c.id;
            d["description"] = c.description;
            d["source"] = c.source;
            d["min_prime"] = c.min_prime;
            d["max_prime"] = c.max_prime ? py::object(py::int_(*c.max_prime)) : py::object(py::none());
            d["wolstenholme_only"] = c.scope == Scope::WolstenholmeOnly;
            d["modulus_exponent"] = c.modulus_exponent;
            return d;
        },
        py::arg("id"));

    m.def(
        "run_check",
        [](const std::string& id, Prime p) {
            CheckOutcome o;
            {
                py::gil_scoped_release release;
                o = run_check(id, p);
            }
            return outcome_dict(o);
        },
        py::arg("id"), py::arg("p"));

    m.def(
        "run_suite",
        [](const std::vector<std::string>& ids, const std::vector<Prime>& primes, int parallelism) {
            std::vector<CheckOutcome> outs;
            {
                py::gil_scoped_release release;
                outs = run_suite(ids, primes, SuiteOptions{parallelism, false});
            }
            py::list l;
            for (const CheckOutcome& o : outs)
                l.append(outcome_dict(o));
            return l;
        },
        py::arg("ids"), py::arg("primes"), py::arg("parallelism") = 1);

    m.def(
        "sieve_primes", [](std::uint64_t lo, std::uint64_t hi) { return sieve_primes(SieveConfig{lo, hi}); },
        py::arg("lo"), py::arg("hi"), "Primes in [lo, hi).");

    m.def(
        "scan",
        [](std::uint64_t lo, std::uint64_t hi, const std::string& criterion, int parallelism) {
            const Criterion c = parse_criterion(criterion);
            std::vector<ScanRecord> recs;
            {
                py::gil_scoped_release release;
                ScanOptions opts;
                opts.parallelism = parallelism;
                recs = wolstenholme_scan(lo, hi, c, opts);
            }
            py::list l;
            for (const ScanRecord& r : recs)
                l.append(record_dict(r));
            return l;
        },
        py::arg("lo"), py::arg("hi"), py::arg("criterion") = "r1p3", py::arg("parallelism") = 1,
        "One record per prime in [lo, hi) under criterion b4, r1p3, bp3 or cor1p7.");

    m.def(
        "remark1_experiment",
        [](std::uint64_t limit, int parallelism) {
            py::gil_scoped_release release;
            return remark1_experiment(limit, parallelism);
        },
        py::arg("limit"), py::arg("parallelism") = 1,
        "Primes 11 <= p < limit with C = 1 + 2p R_1 + (2/3) p^3 R_3 (mod p^7).");
}
