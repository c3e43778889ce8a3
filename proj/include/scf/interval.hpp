#ifndef SCF_INTERVAL_HPP
#define SCF_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "scf/errors.hpp"

namespace scf {

// Closed real interval [lo, hi] with MPFR endpoints. Every operation
// rounds outward (lo with MPFR_RNDD, hi with MPFR_RNDU), so the result
// always encloses the exact image of the operands. No operation here is
// allowed to take a faithful-rounding shortcut: everything downstream
// (root enclosures, bound comparisons, reduction certificates) relies on
// these enclosures being sound.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_nan(lo_);
        mpfr_set_nan(hi_);
    }

    Interval(const Interval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);  // same precision: exact
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept {
        mpfr_init2(lo_, 2);
        mpfr_init2(hi_, 2);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval& operator=(Interval o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }

    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t prec() const {
        return std::max(mpfr_get_prec(lo_), mpfr_get_prec(hi_));
    }

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    // ---- constructors ----

    static Interval from_long(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }

    static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    // v * 2^e, exact at any precision >= bit length of v.
    static Interval from_mpz_2exp(const mpz_class& v, long e, mpfr_prec_t prec) {
        Interval r = from_mpz(v, prec);
        mpfr_mul_2si(r.lo_, r.lo_, e, MPFR_RNDD);
        mpfr_mul_2si(r.hi_, r.hi_, e, MPFR_RNDU);
        return r;
    }

    // Point interval from an already-rounded value.
    static Interval point(mpfr_srcptr v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set(r.lo_, v, MPFR_RNDD);
        mpfr_set(r.hi_, v, MPFR_RNDU);
        return r;
    }

    static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set(r.lo_, lo, MPFR_RNDD);
        mpfr_set(r.hi_, hi, MPFR_RNDU);
        return r;
    }

    // Enclosure of a decimal string (directed parse in both directions).
    static Interval from_decimal(const std::string& s, mpfr_prec_t prec) {
        Interval r(prec);
        if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 ||
            mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0)
            throw std::invalid_argument("bad decimal literal: " + s);
        return r;
    }

    // ---- arithmetic ----

    friend Interval operator+(const Interval& x, const Interval& y) {
        Interval r(join_prec(x, y));
        mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& x, const Interval& y) {
        Interval r(join_prec(x, y));
        mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& x) {
        Interval r(x.prec());
        mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& x, const Interval& y) {
        // min/max over the four endpoint products, each rounded outward
        Interval r(join_prec(x, y));
        mpfr_t t;
        mpfr_init2(t, r.prec());
        mpfr_mul(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
        mpfr_mul(t, x.lo_, y.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x.hi_, y.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x.hi_, y.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

        mpfr_mul(r.hi_, x.lo_, y.lo_, MPFR_RNDU);
        mpfr_mul(t, x.lo_, y.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, x.hi_, y.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, x.hi_, y.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    // Reciprocal; the interval must be sign-definite and exclude zero.
    Interval recip() const {
        if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0)
            throw PrecisionExhausted("reciprocal of interval containing zero");
        Interval r(prec());
        mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
        mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator/(const Interval& x, const Interval& y) {
        return x * y.recip();
    }

    Interval abs() const {
        Interval r(prec());
        if (mpfr_sgn(lo_) >= 0) return *this;
        if (mpfr_sgn(hi_) <= 0) return -*this;
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval sqr() const {
        Interval a = abs();
        Interval r(prec());
        mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    Interval mul_2si(long e) const {
        Interval r(prec());
        mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
        mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
        return r;
    }

    // ---- transcendental (all monotone increasing, so endpoint maps) ----

    Interval log() const {
        if (mpfr_sgn(lo_) <= 0)
            throw PrecisionExhausted("log of interval reaching below zero");
        Interval r(prec());
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval log1p() const {
        if (mpfr_cmp_si(lo_, -1) <= 0)
            throw PrecisionExhausted("log1p out of domain");
        Interval r(prec());
        mpfr_log1p(r.lo_, lo_, MPFR_RNDD);
        mpfr_log1p(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval exp() const {
        Interval r(prec());
        mpfr_exp(r.lo_, lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval cbrt() const {
        Interval r(prec());
        mpfr_cbrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_cbrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    friend Interval max(const Interval& x, const Interval& y) {
        Interval r(join_prec(x, y));
        mpfr_max(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
        return r;
    }

    Interval intersect(const Interval& o) const {
        Interval r(join_prec(*this, o));
        mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
        if (mpfr_greater_p(r.lo_, r.hi_))
            throw std::logic_error("empty interval intersection");
        return r;
    }

    // ---- queries ----

    bool valid() const { return !mpfr_nan_p(lo_) && !mpfr_nan_p(hi_) && mpfr_lessequal_p(lo_, hi_); }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }

    bool contains_long(long v) const {
        return mpfr_cmp_si(lo_, v) <= 0 && mpfr_cmp_si(hi_, v) >= 0;
    }

    bool contains(mpfr_srcptr v) const {
        return mpfr_lessequal_p(lo_, v) && mpfr_lessequal_p(v, hi_);
    }

    bool contains_interval(const Interval& o) const {
        return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
    }

    // True iff every point of *this is strictly below every point of o.
    friend bool certainly_less(const Interval& x, const Interval& y) {
        return mpfr_less_p(x.hi_, y.lo_);
    }

    // hi - lo, rounded up.
    Interval width() const {
        Interval r(prec());
        mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDU);
        mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
        return r;
    }

    // Certifies width <= 2^e * |lo| (used for relative-width targets).
    bool rel_width_below_2exp(long e) const {
        mpfr_t w, m;
        mpfr_init2(w, prec());
        mpfr_init2(m, prec());
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        mpfr_abs(m, lo_, MPFR_RNDD);
        mpfr_mul_2si(m, m, e, MPFR_RNDD);
        bool ok = mpfr_lessequal_p(w, m) != 0;
        mpfr_clear(w);
        mpfr_clear(m);
        return ok;
    }

    bool width_below_2exp(long e) const {
        mpfr_t w;
        mpfr_init2(w, prec());
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        bool ok = mpfr_cmp_si_2exp(w, 1, e) <= 0;
        mpfr_clear(w);
        return ok;
    }

    // Midpoint as a point interval (rounding direction immaterial: any
    // value inside the interval works wherever this is used).
    Interval midpoint() const {
        Interval r(prec() + 2);
        mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
        mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
        return r;
    }

    // floor(lo) and floor(hi) as big integers.
    std::pair<mpz_class, mpz_class> floor_pair() const {
        mpz_class fl, fh;
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_floor(t, lo_);
        mpfr_get_z(fl.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_floor(t, hi_);
        mpfr_get_z(fh.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return {fl, fh};
    }

    // Smallest integer >= hi.
    mpz_class ceil_hi() const {
        mpz_class c;
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_ceil(t, hi_);
        mpfr_get_z(c.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return c;
    }

    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    // Decimal strings of the endpoints, rounded in the conserving
    // direction (lower endpoint down, upper endpoint up).
    std::string lo_string(int digits = 40) const { return format(lo_, digits, 'D'); }
    std::string hi_string(int digits = 40) const { return format(hi_, digits, 'U'); }

    // Outward rounding to a (usually smaller) storage precision.
    Interval rounded_to(mpfr_prec_t prec) const {
        Interval r(prec);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

private:
    static mpfr_prec_t join_prec(const Interval& x, const Interval& y) {
        return std::max(x.prec(), y.prec());
    }

    static std::string format(mpfr_srcptr v, int digits, char dir) {
        char fmt[16];
        std::snprintf(fmt, sizeof fmt, "%%.%dR%ce", digits, dir);
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, fmt, v);
        return buf;
    }

    mpfr_t lo_, hi_;
};

}  // namespace scf

#endif  // SCF_INTERVAL_HPP
