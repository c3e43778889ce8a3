#ifndef SCF_EMBEDDINGS_HPP
#define SCF_EMBEDDINGS_HPP

#include <cstdint>
#include <utility>

#include "scf/cubic.hpp"
#include "scf/interval.hpp"

namespace scf {

inline constexpr mpfr_prec_t kPrecisionStart = 96;
inline constexpr mpfr_prec_t kPrecisionCap = 1 << 16;

// Runs f(p) on the doubling precision ladder p = start, 2*start, ...,
// retrying on PrecisionExhausted until the cap.
template <typename F>
auto with_precision_ladder(F&& f, mpfr_prec_t start = kPrecisionStart,
                           mpfr_prec_t cap = kPrecisionCap) {
    for (mpfr_prec_t p = start; p <= cap; p *= 2) {
        try {
            return f(p);
        } catch (const PrecisionExhausted&) {
            if (p * 2 > cap) throw;
        }
    }
    throw PrecisionExhausted("precision ladder cap reached");
}

namespace detail {

// f_a at a dyadic point m = z * 2^e, computed exactly over Z:
// returns (N, s) with f(m) = N / 2^s.
inline std::pair<mpz_class, unsigned long> f_at_dyadic(const CubicParams& P,
                                                       mpfr_srcptr m) {
    const mpz_class& a = P.a;
    mpz_class z;
    if (mpfr_zero_p(m)) return {mpz_class(-1), 0};
    mp_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), m);
    if (e >= 0) {
        mpz_class v;
        mpz_mul_2exp(v.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(e));
        mpz_class n = ((v - a) * v - (a + 3)) * v - 1;
        return {n, 0};
    }
    unsigned long k = static_cast<unsigned long>(-e);
    mpz_class p1, p2, p3;  // 2^k, 2^2k, 2^3k
    mpz_ui_pow_ui(p1.get_mpz_t(), 2, k);
    p2 = p1 * p1;
    p3 = p2 * p1;
    mpz_class n = ((z - a * p1) * z - (a + 3) * p2) * z - p3;
    return {n, 3 * k};
}

inline int sign_f_at_dyadic(const CubicParams& P, mpfr_srcptr m) {
    return sgn(f_at_dyadic(P, m).first);
}

inline int sign_f_at_int(const CubicParams& P, const mpz_class& v) {
    mpz_class n = ((v - P.a) * v - (P.a + 3)) * v - 1;
    return sgn(n);
}

// Enclosure of the largest root of f_a. Starts from an integer bracket
// with exactly verified signs, then refines by interval Newton with an
// exact-sign bisection fallback, so every step keeps a certified
// enclosure. The largest root is the unique positive one (both other
// roots are negative whenever a >= -1), hence the bracket isolates it.
inline Interval isolate_largest_root(const CubicParams& P, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    mpz_class lo0 = P.a >= 0 ? mpz_class(P.a + 1) : mpz_class(1);
    if (sign_f_at_int(P, lo0) >= 0)
        throw std::logic_error("root bracket: lower endpoint sign");
    mpz_class hi0 = lo0 + 1;
    while (sign_f_at_int(P, hi0) < 0) hi0 += 1;

    mpfr_t lo, hi, t;
    mpfr_init2(lo, wp);
    mpfr_init2(hi, wp);
    mpfr_init2(t, wp);
    mpfr_set_z(lo, lo0.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi, hi0.get_mpz_t(), MPFR_RNDU);

    Interval two_a = Interval::from_mpz(2 * P.a, wp);
    Interval a3 = Interval::from_mpz(P.a + 3, wp);
    Interval three = Interval::from_long(3, wp);

    const long max_steps = 64 + 2 * static_cast<long>(wp);
    bool done = false;
    for (long step = 0; step < max_steps && !done; ++step) {
        Interval X = Interval::from_endpoints(lo, hi, wp);
        if (X.rel_width_below_2exp(6 - static_cast<long>(prec))) {
            done = true;
            break;
        }
        mpfr_add(t, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(t, t, 1, MPFR_RNDN);

        bool contracted = false;
        Interval fprime = (three * X - two_a) * X - a3;
        if (fprime.is_positive()) {
            auto [num, shift] = f_at_dyadic(P, t);
            Interval fm = Interval::from_mpz_2exp(num, -static_cast<long>(shift), wp);
            Interval newton = Interval::point(t, wp) - fm / fprime;
            Interval next = X.intersect(newton);
            // accept only clear contraction, otherwise bisect
            Interval wa = next.width();
            Interval wb = X.width().mul_2si(-1);
            if (mpfr_lessequal_p(wa.hi(), wb.hi())) {
                mpfr_set(lo, next.lo(), MPFR_RNDD);
                mpfr_set(hi, next.hi(), MPFR_RNDU);
                contracted = true;
            }
        }
        if (!contracted) {
            if (sign_f_at_dyadic(P, t) < 0)
                mpfr_set(lo, t, MPFR_RNDD);
            else
                mpfr_set(hi, t, MPFR_RNDU);
        }
    }

    Interval out = Interval::from_endpoints(lo, hi, prec);
    mpfr_clears(lo, hi, t, static_cast<mpfr_ptr>(nullptr));
    if (!done || !out.rel_width_below_2exp(8 - static_cast<long>(prec)))
        throw PrecisionExhausted("root enclosure did not reach target width");
    return out;
}

}  // namespace detail

// Certified enclosures of the three real roots of f_a and of the
// fundamental-unit logarithms, all at one working precision.
//
//   rho1 = largest root (= eps),   a+1 < rho1 < a+2 for a > 100
//   rho2 = sigma(rho1) = -1 - 1/rho1
//   rho3 = sigma^2(rho1) = -1/(1 + rho1)
//   log_eps = log rho1,  log_delta = log(-rho2) = log1p(1/rho1)
//   log_ratio = log_delta / log_eps
struct EmbeddingContext {
    CubicParams params;
    mpfr_prec_t precision;
    Interval rho1, rho2, rho3;
    Interval log_eps, log_delta, log_ratio;
};

inline EmbeddingContext build_context(const CubicParams& params,
                                      mpfr_prec_t precision) {
    if (params.a < -1) throw std::invalid_argument("parameter must satisfy a >= -1");
    if (precision < 64) throw std::invalid_argument("precision must be >= 64");

    const mpfr_prec_t wp = precision + 32;
    EmbeddingContext ctx;
    ctx.params = params;
    ctx.precision = precision;

    Interval r1 = detail::isolate_largest_root(params, wp);
    Interval one = Interval::from_long(1, wp);
    Interval inv_r1 = r1.recip();
    Interval r2 = -(one + inv_r1);
    Interval r3 = -((one + r1).recip());

    Interval log_eps = r1.log();
    Interval log_delta = inv_r1.log1p();
    Interval log_ratio = log_delta / log_eps;

    if (!(r1 * r2 * r3).contains_long(1))
        throw PrecisionExhausted("root product enclosure misses 1");
    if (!log_eps.is_positive() || !log_delta.is_positive())
        throw PrecisionExhausted("unit logarithms not certified positive");

    ctx.rho1 = r1.rounded_to(precision);
    ctx.rho2 = r2.rounded_to(precision);
    ctx.rho3 = r3.rounded_to(precision);
    ctx.log_eps = log_eps.rounded_to(precision);
    ctx.log_delta = log_delta.rounded_to(precision);
    ctx.log_ratio = log_ratio.rounded_to(precision);

    for (const Interval* iv : {&ctx.rho1, &ctx.rho2, &ctx.rho3, &ctx.log_eps,
                               &ctx.log_delta, &ctx.log_ratio})
        if (!iv->rel_width_below_2exp(8 - static_cast<long>(precision)))
            throw PrecisionExhausted("context interval wider than 2^(8-prec)");
    return ctx;
}

struct SignedLogAbs {
    int sign;          // sign of the embedded value
    Interval log_abs;  // enclosure of log |e^(i)|
};

// Enclosure of log |c0 + c1*rho_i + c2*rho_i^2| together with the exact
// sign of the embedded value. Fails (for the ladder to catch) when the
// evaluation cannot be separated from zero at this precision.
inline SignedLogAbs signed_log_abs(const OrderElement& e,
                                   const EmbeddingContext& ctx,
                                   int embedding_index) {
    if (e.params() != ctx.params)
        throw ParameterMismatch("element/context parameter mismatch");
    if (e.is_zero()) throw std::invalid_argument("log of zero element");
    const Interval* root = nullptr;
    switch (embedding_index) {
        case 1: root = &ctx.rho1; break;
        case 2: root = &ctx.rho2; break;
        case 3: root = &ctx.rho3; break;
        default: throw std::invalid_argument("embedding index must be 1, 2 or 3");
    }
    const mpfr_prec_t p = ctx.precision;
    Interval v = (Interval::from_mpz(e.c2(), p) * *root +
                  Interval::from_mpz(e.c1(), p)) *
                     *root +
                 Interval::from_mpz(e.c0(), p);
    if (v.contains_zero())
        throw PrecisionExhausted("embedded value not separated from zero");
    return SignedLogAbs{v.is_positive() ? 1 : -1, v.abs().log()};
}

// Recovers (sign, x, y) with e = sign * eps^x * delta^y by solving the
// 2x2 log system over the first two embeddings:
//   log|e^(1)| = x log eps  + y log delta
//   log|e^(2)| = x log delta + y (-log eps - log delta)
// (log|eps^(2)| = log|rho2| = log delta and log|delta^(2)| = log|rho3|,
// with log|rho1| + log|rho2| + log|rho3| = 0.)
// The rounded solution is accepted only after exact reconstruction.
inline UnitRepr exponents_from_unit(const OrderElement& e,
                                    const EmbeddingContext& ctx) {
    mpz_class n = e.norm();
    if (n != 1 && n != -1)
        throw NotAUnit("norm is " + n.get_str() + " for " + e.to_string());

    SignedLogAbs v1 = signed_log_abs(e, ctx, 1);
    SignedLogAbs v2 = signed_log_abs(e, ctx, 2);
    const Interval& le = ctx.log_eps;
    const Interval& ld = ctx.log_delta;
    Interval det = -(le.sqr() + le * ld + ld.sqr());
    Interval x = (v1.log_abs * (-(le + ld)) - ld * v2.log_abs) / det;
    Interval y = (le * v2.log_abs - ld * v1.log_abs) / det;
    if (!x.width_below_2exp(-2) || !y.width_below_2exp(-2))
        throw PrecisionExhausted("exponent solution interval wider than 1/4");

    UnitRepr r;
    r.sign = v1.sign;
    r.x = mpfr_get_si(x.midpoint().lo(), MPFR_RNDN);
    r.y = mpfr_get_si(y.midpoint().lo(), MPFR_RNDN);
    if (!x.contains_long(r.x) || !y.contains_long(r.y))
        throw PrecisionExhausted("rounded exponents escape solution interval");

    if (unit_from_exponents(e.params(), r) != e)
        throw VerificationFailed("exact reconstruction mismatch for " +
                                 e.to_string());
    return r;
}

// Ladder wrapper: context construction and exponent recovery retried at
// doubling precision (96 -> ... -> 2^16 binary digits).
inline UnitRepr recover_exponents(const OrderElement& e,
                                  mpfr_prec_t start = kPrecisionStart,
                                  mpfr_prec_t cap = kPrecisionCap) {
    return with_precision_ladder(
        [&](mpfr_prec_t p) {
            EmbeddingContext ctx = build_context(e.params(), p);
            return exponents_from_unit(e, ctx);
        },
        start, cap);
}

}  // namespace scf

#endif  // SCF_EMBEDDINGS_HPP
