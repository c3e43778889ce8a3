#ifndef SCF_CUBIC_HPP
#define SCF_CUBIC_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

#include "scf/errors.hpp"

namespace scf {

// Parameter of the cubic family f_a(x) = x^3 - a x^2 - (a+3) x - 1.
// The fields K_a and K_{-a-3} coincide (f_a(x) = -x^3 f_{-a-3}(1/x)),
// so parameters are normalized to a >= -1.
struct CubicParams {
    mpz_class a;

    CubicParams() : a(0) {}
    explicit CubicParams(mpz_class value) : a(std::move(value)) {}
    explicit CubicParams(long value) : a(value) {}

    bool operator==(const CubicParams& o) const { return a == o.a; }
    bool operator!=(const CubicParams& o) const { return a != o.a; }

    // a^2 + 3a + 9, the positive square root of disc(f_a).
    mpz_class disc_sqrt() const { return a * a + 3 * a + 9; }
};

inline CubicParams normalize_parameter(const mpz_class& a) {
    if (a >= -1) return CubicParams(a);
    return CubicParams(mpz_class(-a - 3));
}

// Exact element c0 + c1*rho + c2*rho^2 of the order Z[rho].
// Multiplication reduces by rho^3 = a*rho^2 + (a+3)*rho + 1.
class OrderElement {
public:
    OrderElement(CubicParams params, mpz_class c0, mpz_class c1, mpz_class c2)
        : params_(std::move(params)),
          c_{std::move(c0), std::move(c1), std::move(c2)} {}

    static OrderElement integer(const CubicParams& p, const mpz_class& n) {
        return OrderElement(p, n, 0, 0);
    }
    static OrderElement zero(const CubicParams& p) { return integer(p, 0); }
    static OrderElement one(const CubicParams& p) { return integer(p, 1); }
    static OrderElement rho(const CubicParams& p) {
        return OrderElement(p, 0, 1, 0);
    }

    const CubicParams& params() const { return params_; }
    const mpz_class& c0() const { return c_[0]; }
    const mpz_class& c1() const { return c_[1]; }
    const mpz_class& c2() const { return c_[2]; }

    bool operator==(const OrderElement& o) const {
        return params_ == o.params_ && c_ == o.c_;
    }
    bool operator!=(const OrderElement& o) const { return !(*this == o); }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    bool is_rational_integer() const { return c_[1] == 0 && c_[2] == 0; }

    friend OrderElement operator+(const OrderElement& x, const OrderElement& y) {
        x.check_same_params(y);
        return OrderElement(x.params_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1],
                            x.c_[2] + y.c_[2]);
    }

    friend OrderElement operator-(const OrderElement& x, const OrderElement& y) {
        x.check_same_params(y);
        return OrderElement(x.params_, x.c_[0] - y.c_[0], x.c_[1] - y.c_[1],
                            x.c_[2] - y.c_[2]);
    }

    friend OrderElement operator-(const OrderElement& x) {
        return OrderElement(x.params_, -x.c_[0], -x.c_[1], -x.c_[2]);
    }

    // Product, reduced to degree <= 2.  Uses
    //   rho^3 = a rho^2 + (a+3) rho + 1
    //   rho^4 = (a^2+a+3) rho^2 + (a^2+3a+1) rho + a
    friend OrderElement operator*(const OrderElement& x, const OrderElement& y) {
        x.check_same_params(y);
        const mpz_class& a = x.params_.a;

        mpz_class t0 = x.c_[0] * y.c_[0];
        mpz_class t1 = x.c_[0] * y.c_[1] + x.c_[1] * y.c_[0];
        mpz_class t2 = x.c_[0] * y.c_[2] + x.c_[1] * y.c_[1] + x.c_[2] * y.c_[0];
        mpz_class t3 = x.c_[1] * y.c_[2] + x.c_[2] * y.c_[1];
        mpz_class t4 = x.c_[2] * y.c_[2];

        mpz_class a3 = a + 3;
        mpz_class q1 = a * a + 3 * a + 1;  // rho^4 linear coefficient
        mpz_class q2 = a * a + a + 3;      // rho^4 quadratic coefficient

        return OrderElement(x.params_,
                            t0 + t3 + t4 * a,
                            t1 + t3 * a3 + t4 * q1,
                            t2 + t3 * a + t4 * q2);
    }

    // Trace of the multiplication-by-*this matrix in basis (1, rho, rho^2):
    // Tr(1) = 3, Tr(rho) = a, Tr(rho^2) = a^2 + 2a + 6.
    mpz_class trace() const {
        const mpz_class& a = params_.a;
        return 3 * c_[0] + a * c_[1] + (a * a + 2 * a + 6) * c_[2];
    }

    // Exact norm N_{K_a/Q}: determinant of the multiplication matrix.
    mpz_class norm() const {
        std::array<std::array<mpz_class, 3>, 3> m = mul_matrix();
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    bool is_unit() const {
        mpz_class n = norm();
        return n == 1 || n == -1;
    }

    // Coefficients (e1, e2, e3) of the characteristic polynomial
    // x^3 - e1 x^2 + e2 x - e3 of multiplication by *this; equivalently
    // the elementary symmetric functions of the three conjugates.
    // In particular N(n - u) = n^3 - e1 n^2 + e2 n - e3, the identity
    // the bounded solver exploits.
    struct CharPoly {
        mpz_class e1, e2, e3;
    };

    CharPoly char_poly() const {
        const mpz_class& a = params_.a;
        // Tr(rho^k) for k = 0..4 via Newton's recurrence on f_a.
        mpz_class t1 = a;
        mpz_class t2 = a * a + 2 * a + 6;
        mpz_class t3 = a * t2 + (a + 3) * t1 + 3;
        mpz_class t4 = a * t3 + (a + 3) * t2 + t1;
        mpz_class tr_sq = c_[0] * c_[0] * 3 + c_[1] * c_[1] * t2 +
                          c_[2] * c_[2] * t4 + 2 * c_[0] * c_[1] * t1 +
                          2 * c_[0] * c_[2] * t2 + 2 * c_[1] * c_[2] * t3;
        mpz_class e1 = trace();
        mpz_class e2 = (e1 * e1 - tr_sq) / 2;
        return CharPoly{e1, e2, norm()};
    }

    // Image under the Galois generator sigma, sigma(rho) = -rho^2 + a rho + a + 2.
    OrderElement sigma() const {
        const mpz_class& a = params_.a;
        OrderElement s(params_, a + 2, a, -1);
        OrderElement s2 = s * s;
        return OrderElement(params_,
                            c_[0] + s.c_[0] * c_[1] + s2.c_[0] * c_[2],
                            s.c_[1] * c_[1] + s2.c_[1] * c_[2],
                            s.c_[2] * c_[1] + s2.c_[2] * c_[2]);
    }

    std::string to_string() const {
        return "(" + c_[0].get_str() + ", " + c_[1].get_str() + ", " +
               c_[2].get_str() + "; a=" + params_.a.get_str() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const OrderElement& e) {
        return os << e.to_string();
    }

private:
    void check_same_params(const OrderElement& o) const {
        if (params_ != o.params_)
            throw ParameterMismatch("operands live in different orders (a=" +
                                    params_.a.get_str() + " vs a=" +
                                    o.params_.a.get_str() + ")");
    }

    // Columns are the images of 1, rho, rho^2 under multiplication by *this.
    std::array<std::array<mpz_class, 3>, 3> mul_matrix() const {
        const mpz_class& a = params_.a;
        const mpz_class& c0 = c_[0];
        const mpz_class& c1 = c_[1];
        const mpz_class& c2 = c_[2];
        mpz_class a3 = a + 3;
        std::array<std::array<mpz_class, 3>, 3> m;
        m[0] = {c0, c2, c1 + a * c2};
        m[1] = {c1, c0 + a3 * c2, a3 * c1 + (a * a + 3 * a + 1) * c2};
        m[2] = {c2, c1 + a * c2, c0 + a * c1 + (a * a + a + 3) * c2};
        return m;
    }

    CubicParams params_;
    std::array<mpz_class, 3> c_;
};

// Fundamental units of Z[rho]: eps = rho (largest root) and
// delta = -sigma(rho) = rho^2 - a rho - (a+2).
inline OrderElement eps(const CubicParams& p) { return OrderElement::rho(p); }

inline OrderElement delta(const CubicParams& p) {
    return OrderElement(p, -(p.a + 2), -p.a, 1);
}

// 1/rho = rho^2 - a rho - (a+3), read off from f_a(rho) = 0.
inline OrderElement eps_inv(const CubicParams& p) {
    return OrderElement(p, -(p.a + 3), -p.a, 1);
}

// Exact inverse of a unit: e^{-1} = N(e) * sigma(e) * sigma^2(e).
inline OrderElement invert_unit(const OrderElement& e) {
    mpz_class n = e.norm();
    if (n != 1 && n != -1)
        throw NotAUnit("norm is " + n.get_str() + " for " + e.to_string());
    OrderElement s = e.sigma();
    OrderElement adj = s * s.sigma();
    if (n == 1) return adj;
    return -adj;
}

// A unit written as sign * eps^x * delta^y. The representation is unique
// (eps and delta are multiplicatively independent), so equality of all
// three fields is equality of units.
struct UnitRepr {
    int sign = 1;  // +1 or -1
    std::int64_t x = 0;
    std::int64_t y = 0;

    bool operator==(const UnitRepr& o) const {
        return sign == o.sign && x == o.x && y == o.y;
    }
    bool operator!=(const UnitRepr& o) const { return !(*this == o); }
};

namespace detail {

inline OrderElement pow_nonneg(OrderElement base, std::uint64_t n,
                               const CubicParams& p) {
    OrderElement acc = OrderElement::one(p);
    while (n != 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n != 0) base = base * base;
    }
    return acc;
}

}  // namespace detail

// base^k for a unit base; negative k goes through the exact inverse.
inline OrderElement unit_pow(const OrderElement& base, std::int64_t k) {
    if (k >= 0)
        return detail::pow_nonneg(base, static_cast<std::uint64_t>(k),
                                  base.params());
    return detail::pow_nonneg(invert_unit(base),
                              static_cast<std::uint64_t>(-(k + 1)) + 1,
                              base.params());
}

inline OrderElement unit_from_exponents(const CubicParams& p, const UnitRepr& r) {
    OrderElement v = unit_pow(eps(p), r.x) * unit_pow(delta(p), r.y);
    if (r.sign < 0) return -v;
    return v;
}

}  // namespace scf

#endif  // SCF_CUBIC_HPP
