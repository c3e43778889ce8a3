#ifndef SCF_REDUCTION_HPP
#define SCF_REDUCTION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scf/bounds.hpp"
#include "scf/embeddings.hpp"
#include "scf/parallel.hpp"

namespace scf {

// Per-parameter record of the continued-fraction reduction step. All
// real fields are decimal strings rounded in the conserving direction
// (c_lo and lower down, new_upper up), so the record itself carries
// valid bounds; verify_certificate replays it from scratch.
struct ReductionCertificate {
    mpz_class a;
    mpfr_prec_t precision = 0;
    mpz_class p, q;      // the selected convergent of log delta / log eps
    mpz_class q_min;     // ceil(2 * upper_X(a)), the denominator threshold
    std::string c_lo;        // certified lower bound of |p - q * ratio|
    std::string new_upper;   // reduced exponent bound
    std::string lower;       // elementary lower bound for X
    bool contradiction = false;
};

// First convergent p/q of the enclosed ratio with q >= q_min. A partial
// quotient is accepted only when both interval endpoints share a floor,
// so the output is the true expansion of every point in the interval;
// intervals around rationals stall at the final quotient and report
// PrecisionExhausted instead of guessing.
inline std::pair<mpz_class, mpz_class> convergents_until(
    const Interval& ratio, const mpz_class& q_min) {
    if (!ratio.is_positive())
        throw std::invalid_argument("ratio must be positive");
    if (q_min < 1) throw std::invalid_argument("q_min must be >= 1");
    const mpfr_prec_t prec = ratio.prec();
    mpz_class h1 = 1, h2 = 0;  // numerators  h_{-1}, h_{-2}
    mpz_class k1 = 0, k2 = 1;  // denominators k_{-1}, k_{-2}
    Interval r = ratio;
    for (long j = 0; j < 100000; ++j) {
        auto [fl, fh] = r.floor_pair();
        if (fl != fh)
            throw PrecisionExhausted("partial quotient undetermined");
        mpz_class h = fl * h1 + h2;
        mpz_class k = fl * k1 + k2;
        if (k >= q_min) return {h, k};
        Interval frac = r - Interval::from_mpz(fl, prec);
        if (!frac.is_positive())
            throw PrecisionExhausted("fractional part not separated from zero");
        r = frac.recip();
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
    }
    throw PrecisionExhausted("continued fraction did not reach q_min");
}

namespace detail {

struct ReductionNumbers {
    Interval c;          // |p - q * ratio|
    Interval new_upper;  // (2/log a) log(2 a^(1/3) / (c_lo log a))
    Interval lower;      // lower_bound_X
};

// The reduced bound evaluated from a certified lower endpoint of c.
// Smaller c weakens (enlarges) the bound, so using c_lo is the
// conservative direction; the upper endpoint of the result is reported.
inline Interval reduced_upper_bound(const CubicParams& params,
                                    const Interval& c_lo_point,
                                    mpfr_prec_t prec) {
    Interval log_a = Interval::from_mpz(params.a, prec).log();
    Interval arg = Interval::from_mpz(params.a, prec).cbrt().mul_2si(1) /
                   (c_lo_point * log_a);
    return arg.log().mul_2si(1) / log_a;
}

}  // namespace detail

inline ReductionCertificate reduce_parameter(const CubicParams& params,
                                             mpfr_prec_t cap = kPrecisionCap) {
    if (!(params.a > 100))
        throw std::invalid_argument("reduction requires a > 100");

    // precision heuristic: quotients up to q_min are typically decided
    // within ~2 log2(q_min) bits; the +96 absorbs almost every retry
    mpz_class q_est = (Interval::from_long(2, 192) * upper_bound_X(params, 192)).ceil_hi();
    mpfr_prec_t start = static_cast<mpfr_prec_t>(
        2 * mpz_sizeinbase(q_est.get_mpz_t(), 2) + 96);

    return with_precision_ladder(
        [&](mpfr_prec_t prec) {
            EmbeddingContext ctx = build_context(params, prec);
            Interval uX = upper_bound_X(params, prec);
            mpz_class q_min = (Interval::from_long(2, prec) * uX).ceil_hi();
            auto [p, q] = convergents_until(ctx.log_ratio, q_min);

            Interval c = (Interval::from_mpz(p, prec) -
                          Interval::from_mpz(q, prec) * ctx.log_ratio)
                             .abs();
            if (!c.is_positive())
                throw PrecisionExhausted("linear form not separated from zero");

            // the reduced bound is derived from the printed (rounded-down)
            // value of c, so the record is self-contained: the replay
            // checker recomputes the identical number from the c_lo field
            std::string c_lo_str = c.lo_string();
            Interval c_printed = Interval::from_decimal(c_lo_str, prec + 64);
            if (!c_printed.is_positive())
                throw PrecisionExhausted("printed c_lo collapsed to zero");
            Interval new_upper = detail::reduced_upper_bound(
                params, Interval::point(c_printed.lo(), prec), prec);
            Interval lower = lower_bound_X(params, prec);

            ReductionCertificate cert;
            cert.a = params.a;
            cert.precision = prec;
            cert.p = p;
            cert.q = q;
            cert.q_min = q_min;
            cert.c_lo = c_lo_str;
            cert.new_upper = new_upper.hi_string();
            cert.lower = lower.lo_string();
            if (mpfr_less_p(new_upper.hi(), lower.lo())) {
                cert.contradiction = true;
            } else if (certainly_less(lower, new_upper)) {
                cert.contradiction = false;  // genuinely not contradictory
            } else {
                throw PrecisionExhausted("bound comparison undecided");
            }
            return cert;
        },
        start, cap);
}

// Replays a certificate from scratch: rebuilds the enclosures at the
// recorded precision, re-derives the convergent with its own recurrence,
// and re-checks every recorded bound in the sound direction. Returns an
// empty list when the certificate verifies.
inline std::vector<std::string> verify_certificate(
    const ReductionCertificate& cert) {
    std::vector<std::string> errors;
    auto fail = [&](const std::string& m) { errors.push_back(m); };
    if (!(cert.a > 100)) {
        fail("parameter out of range");
        return errors;
    }
    CubicParams params{cert.a};
    EmbeddingContext ctx;
    try {
        ctx = build_context(params, cert.precision);
    } catch (const std::exception& e) {
        fail(std::string("context rebuild failed: ") + e.what());
        return errors;
    }

    // threshold chain: q >= q_min = ceil(2 upper_X) (> 2X for solutions)
    Interval uX = upper_bound_X(params, cert.precision);
    mpz_class q_min =
        (Interval::from_long(2, cert.precision) * uX).ceil_hi();
    if (q_min != cert.q_min) fail("q_min mismatch");
    if (cert.q < cert.q_min) fail("q below threshold");
    if (gcd(cert.p, cert.q) != 1) fail("p/q not in lowest terms");

    // independent Euclidean walk: p/q must be the first convergent with
    // denominator >= q_min
    {
        Interval r = ctx.log_ratio;
        mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
        bool found = false;
        for (long j = 0; j < 100000 && !found; ++j) {
            auto [fl, fh] = r.floor_pair();
            if (fl != fh) {
                fail("quotient undetermined during replay");
                break;
            }
            mpz_class h = fl * h1 + h2, k = fl * k1 + k2;
            if (k >= cert.q_min) {
                if (h != cert.p || k != cert.q)
                    fail("p/q is not the first admissible convergent");
                found = true;
                break;
            }
            Interval frac = r - Interval::from_mpz(fl, cert.precision);
            if (!frac.is_positive()) {
                fail("fractional part collapsed during replay");
                break;
            }
            r = frac.recip();
            h2 = h1; h1 = h;
            k2 = k1; k1 = k;
        }
        if (!found && errors.empty()) fail("convergent walk did not terminate");
    }

    Interval c = (Interval::from_mpz(cert.p, cert.precision) -
                  Interval::from_mpz(cert.q, cert.precision) * ctx.log_ratio)
                     .abs();
    Interval c_rec = Interval::from_decimal(cert.c_lo, cert.precision + 64);
    if (!c_rec.is_positive()) fail("recorded c_lo not positive");
    if (mpfr_less_p(c.lo(), c_rec.lo())) fail("recorded c_lo too large");
    // convergent quality: |p/q - ratio| < 1/q^2, i.e. c < 1/q
    if (!certainly_less(c, Interval::from_mpz(cert.q, cert.precision).recip()))
        fail("convergent quality |p - q r| < 1/q not certified");

    Interval new_upper = detail::reduced_upper_bound(
        params, Interval::point(c_rec.lo(), cert.precision), cert.precision);
    Interval lower = lower_bound_X(params, cert.precision);
    Interval nu_rec = Interval::from_decimal(cert.new_upper, cert.precision + 64);
    Interval lo_rec = Interval::from_decimal(cert.lower, cert.precision + 64);
    if (mpfr_less_p(nu_rec.hi(), new_upper.hi()))
        fail("recorded new_upper below the recomputed bound");
    if (mpfr_greater_p(lo_rec.lo(), lower.lo()))
        fail("recorded lower above the recomputed bound");

    bool contradiction = mpfr_less_p(new_upper.hi(), lower.lo()) != 0;
    if (contradiction != cert.contradiction) fail("contradiction flag mismatch");
    return errors;
}

struct SweepSummary {
    long total = 0;
    long contradictions = 0;
    long failures = 0;
};

// Runs reduce_parameter for every a in [from, to]. Certificates are
// handed to the sink in parameter order regardless of worker completion
// order; per-parameter precision exhaustion is counted, never fatal.
template <typename Sink>
SweepSummary sweep(long from, long to, int jobs, Sink&& sink,
                   mpfr_prec_t cap = kPrecisionCap) {
    if (!(from > 100)) throw std::invalid_argument("sweep requires from > 100");
    if (from > to) throw std::invalid_argument("empty sweep range");

    SweepSummary summary;
    std::map<long, std::optional<ReductionCertificate>> ready;
    long next = from;
    std::mutex m;
    parallel_for(from, to + 1, jobs, [&](long a) {
        std::optional<ReductionCertificate> cert;
        try {
            cert = reduce_parameter(CubicParams{a}, cap);
        } catch (const PrecisionExhausted&) {
            cert = std::nullopt;
        }
        std::lock_guard<std::mutex> lk(m);
        ready.emplace(a, std::move(cert));
        while (true) {
            auto it = ready.find(next);
            if (it == ready.end()) break;
            summary.total++;
            if (it->second) {
                if (it->second->contradiction) summary.contradictions++;
                sink(*it->second);
            } else {
                summary.failures++;
            }
            ready.erase(it);
            ++next;
        }
    });
    return summary;
}

}  // namespace scf

#endif  // SCF_REDUCTION_HPP
