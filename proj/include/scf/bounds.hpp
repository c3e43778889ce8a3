#ifndef SCF_BOUNDS_HPP
#define SCF_BOUNDS_HPP

#include <stdexcept>

#include "scf/cubic.hpp"
#include "scf/embeddings.hpp"
#include "scf/interval.hpp"

namespace scf {

// Constants of the exponent-bound chain, kept as decimal strings so the
// derivation can be replayed step by step in tests at any precision.
struct BoundConstants {
    static constexpr const char* two_log_coeff = "17.9";  // Laurent coefficient
    static constexpr const char* b_prime_shift = "0.38";
    static constexpr const char* log_slack = "0.24";      // log4 - loglog103 + 0.38 <
    static constexpr const char* max_factor = "1.02";     // log X + 0.24 < 1.02 log X
    static constexpr const char* loglog_coeff = "1.7";
    static constexpr long affine_term = 10;
    static constexpr long final_coeff = 343;
    static constexpr long case_split_X = 200000;
};

// Lower bound for |b2 log a2 - b1 log a1| (two real multiplicatively
// independent algebraic numbers):
//   log|L| >= -17.9 D^4 (max{log b' + 0.38, 30/D, 1})^2 log A1 log A2,
//   b' = b1/(D log A2) + b2/(D log A1).
inline Interval laurent_lower_bound(int degree, const Interval& logA1,
                                    const Interval& logA2, const mpz_class& b1,
                                    const mpz_class& b2) {
    if (degree < 1) throw std::domain_error("degree must be positive");
    if (b1 < 1 || b2 < 1) throw std::domain_error("b1, b2 must be positive");
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(
        192, std::max(logA1.prec(), logA2.prec()));
    Interval d = Interval::from_long(degree, prec);
    Interval min_logA = Interval::from_long(1, prec) / d;
    if (certainly_less(logA1, min_logA) || certainly_less(logA2, min_logA))
        throw std::domain_error("log A_i below 1/D");

    Interval bp = Interval::from_mpz(b1, prec) / (d * logA2) +
                  Interval::from_mpz(b2, prec) / (d * logA1);
    Interval m = max(max(bp.log() + Interval::from_decimal(
                                        BoundConstants::b_prime_shift, prec),
                         Interval::from_long(30, prec) / d),
                     Interval::from_long(1, prec));
    Interval d4 = d.sqr().sqr();
    return -(Interval::from_decimal(BoundConstants::two_log_coeff, prec) * d4 *
             m.sqr() * logA1 * logA2);
}

// 343 log a (10 + 1.7 log log a)^2, the proven upper bound for the
// exponent maximum X of a sporadic solution (a > 100).
inline Interval upper_bound_X(const CubicParams& params,
                              mpfr_prec_t prec = 192) {
    if (!(params.a > 100))
        throw std::domain_error("upper_bound_X requires a > 100");
    Interval la = Interval::from_mpz(params.a, prec).log();
    Interval inner = Interval::from_long(BoundConstants::affine_term, prec) +
                     Interval::from_decimal(BoundConstants::loglog_coeff, prec) *
                         la.log();
    return Interval::from_long(BoundConstants::final_coeff, prec) * la *
           inner.sqr();
}

// (a+2)(log(a+1) - log 2)/2, the elementary lower bound for X (a > 100).
inline Interval lower_bound_X(const CubicParams& params,
                              mpfr_prec_t prec = 192) {
    if (!(params.a > 100))
        throw std::domain_error("lower_bound_X requires a > 100");
    Interval diff = Interval::from_mpz(params.a + 1, prec).log() -
                    Interval::from_long(2, prec).log();
    return (Interval::from_mpz(params.a + 2, prec) * diff).mul_2si(-1);
}

namespace detail {

// +1 when lower_X(a) > upper_X(a) is certified, -1 for the reverse,
// exception when neither separates at the precision cap.
inline int bound_order(const mpz_class& a, mpfr_prec_t cap = 4096) {
    CubicParams p{a};
    return with_precision_ladder(
        [&](mpfr_prec_t prec) {
            Interval up = upper_bound_X(p, prec);
            Interval lo = lower_bound_X(p, prec);
            if (certainly_less(up, lo)) return 1;
            if (certainly_less(lo, up)) return -1;
            throw PrecisionExhausted("bound comparison undecided");
        },
        192, cap);
}

// Sufficient certificate that lower_X(a) > upper_X(a) for every real
// a >= T, by two monotone envelopes:
//   (10 + 1.7 loglog a)^2 / log a is decreasing in a   (for a > e)
//   (log a)^2 / a is decreasing in a                   (for a > e^2)
// so for a >= T
//   upper_X(a) <= 343 C_T (log a)^2 <= 343 C_T (log T)^2 / T * a,
//   lower_X(a) >= a/2 (log(T+1) - log 2),
// and the claim follows once the two constant slopes separate at T.
inline bool tail_dominates(const mpz_class& T, mpfr_prec_t prec = 256) {
    CubicParams p{T};
    Interval logT = Interval::from_mpz(T, prec).log();
    Interval inner = Interval::from_long(BoundConstants::affine_term, prec) +
                     Interval::from_decimal(BoundConstants::loglog_coeff, prec) *
                         logT.log();
    Interval c_t = inner.sqr() / logT;
    Interval slope_up = Interval::from_long(BoundConstants::final_coeff, prec) *
                        c_t * logT.sqr() / Interval::from_mpz(T, prec);
    Interval slope_lo = (Interval::from_mpz(T + 1, prec).log() -
                         Interval::from_long(2, prec).log())
                            .mul_2si(-1);
    return certainly_less(slope_up, slope_lo);
}

}  // namespace detail

// Least integer A with lower_X > upper_X certified for every a > A.
// Found by bisection for the integer crossover, then covered upward by
// monotone windows [t, t'] with upper_X(t') < lower_X(t) (both bound
// functions increase in a), and finally by the tail envelope.
inline mpz_class absolute_parameter_bound() {
    mpz_class lo = 101, hi = 148000;
    if (detail::bound_order(hi) != 1)
        throw CertificationFailed("bounds do not cross by a = 148000");
    if (detail::bound_order(lo) != -1)
        throw CertificationFailed("bounds unexpectedly crossed at a = 101");
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        int order;
        try {
            order = detail::bound_order(mid);
        } catch (const PrecisionExhausted&) {
            order = -1;  // tie broken upward: keeps the sweep range larger
        }
        if (order == 1)
            hi = mid;
        else
            lo = mid;
    }
    const mpz_class bound = lo;

    // certified coverage of every a > bound
    const mpz_class tail_start = mpz_class(1) << 21;
    mpz_class t = bound + 1;
    while (t < tail_start) {
        Interval low_t = lower_bound_X(CubicParams{t}, 256);
        mpz_class step = 1, good = 0;
        while (t + step <= tail_start) {
            Interval up = upper_bound_X(CubicParams{t + step}, 256);
            if (!certainly_less(up, low_t)) break;
            good = step;
            step *= 2;
        }
        if (good == 0) {
            if (detail::bound_order(t) != 1)
                throw CertificationFailed("coverage broke at a = " + t.get_str());
            good = 1;
        }
        t += good;
    }
    if (!detail::tail_dominates(tail_start))
        throw CertificationFailed("tail envelope not certified");
    return bound;
}

struct BoundsReport {
    CubicParams params;
    Interval upper_X;
    Interval lower_X;
    int laurent_degree = 3;
    Interval laurent_logA;      // (1/3) log(a+3), used for both heights
    Interval laurent_b_prime;   // the 4X/log(a+3) bound on b' at X = upper_X
    bool contradiction = false;
};

inline BoundsReport bounds_report(const CubicParams& params,
                                  mpfr_prec_t prec = 192) {
    BoundsReport r;
    r.params = params;
    r.upper_X = upper_bound_X(params, prec);
    r.lower_X = lower_bound_X(params, prec);
    Interval log_a3 = Interval::from_mpz(params.a + 3, prec).log();
    r.laurent_logA = log_a3 / Interval::from_long(3, prec);
    r.laurent_b_prime =
        Interval::from_long(4, prec) * r.upper_X / log_a3;
    r.contradiction = certainly_less(r.upper_X, r.lower_X);
    return r;
}

}  // namespace scf

#endif  // SCF_BOUNDS_HPP
