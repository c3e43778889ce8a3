#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "scf/cubic.hpp"
#include "scf/embeddings.hpp"

using namespace scf;

namespace {

// Independent norm oracle: resultant Res(f_a, c0 + c1 x + c2 x^2) via the
// 5x5 Sylvester determinant (f monic, so Res(f, g) = prod g(root_i)).
mpz_class det(std::vector<std::vector<mpz_class>> m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    mpz_class acc = 0;
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpz_class>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(row);
        }
        acc += sign * m[0][j] * det(minor);
        sign = -sign;
    }
    return acc;
}

mpz_class sylvester_norm(const OrderElement& e) {
    const mpz_class& a = e.params().a;
    mpz_class f3 = 1, f2 = -a, f1 = -(a + 3), f0 = -1;
    const mpz_class& g2 = e.c2();
    const mpz_class& g1 = e.c1();
    const mpz_class& g0 = e.c0();
    std::vector<std::vector<mpz_class>> s = {
        {f3, f2, f1, f0, 0},
        {0, f3, f2, f1, f0},
        {g2, g1, g0, 0, 0},
        {0, g2, g1, g0, 0},
        {0, 0, g2, g1, g0},
    };
    return det(s);
}

// disc(f) = -Res(f, f') for a monic cubic.
mpz_class resultant_discriminant(const CubicParams& p) {
    const mpz_class& a = p.a;
    mpz_class f3 = 1, f2 = -a, f1 = -(a + 3), f0 = -1;
    mpz_class d2 = 3, d1 = -2 * a, d0 = -(a + 3);
    std::vector<std::vector<mpz_class>> s = {
        {f3, f2, f1, f0, 0},
        {0, f3, f2, f1, f0},
        {d2, d1, d0, 0, 0},
        {0, d2, d1, d0, 0},
        {0, 0, d2, d1, d0},
    };
    return -det(s);
}

OrderElement random_element(const CubicParams& p, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-1000, 1000);
    return OrderElement(p, d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("parameter normalization") {
    REQUIRE(normalize_parameter(5).a == 5);
    REQUIRE(normalize_parameter(-4).a == 1);
    REQUIRE(normalize_parameter(-2).a == -1);
    REQUIRE(normalize_parameter(-1).a == -1);

    // f_a(x) = -x^3 f_{-a-3}(1/x): coefficient-level identity behind the
    // normalization, checked for the a = -2 -> -1 example and a few more.
    for (long a : {-2L, -4L, -17L, -1000L}) {
        long b = -a - 3;
        // -x^3 f_b(1/x) = x^3 + (b+3) x^2 + b x - 1... reduced against f_a:
        // coefficients of f_a are (1, -a, -(a+3), -1).
        REQUIRE(mpz_class(b + 3) == mpz_class(-a));
        REQUIRE(mpz_class(b) == mpz_class(-(a + 3)));
    }
}

TEST_CASE("discriminant square root") {
    REQUIRE(CubicParams(-1).disc_sqrt() == 7);
    REQUIRE(CubicParams(0).disc_sqrt() == 9);
    REQUIRE(CubicParams(100).disc_sqrt() == 10309);

    // cross-check against the exact resultant-based discriminant
    for (long a : {-1L, 0L, 1L, 2L, 100L, 12345L}) {
        CubicParams p{a};
        mpz_class d = p.disc_sqrt();
        REQUIRE(resultant_discriminant(p) == d * d);
    }
}

TEST_CASE("multiplication reduces by the minimal polynomial") {
    for (long a : {-1L, 0L, 5L, 101L}) {
        CubicParams p{a};
        OrderElement rho = OrderElement::rho(p);
        OrderElement rho2 = rho * rho;
        REQUIRE(rho2 == OrderElement(p, 0, 0, 1));
        REQUIRE(rho2 * rho == OrderElement(p, 1, a + 3, a));
        // eps * delta = rho + 1
        REQUIRE(eps(p) * delta(p) == OrderElement(p, 1, 1, 0));
    }
}

TEST_CASE("parameter mismatch is rejected") {
    OrderElement x = OrderElement::rho(CubicParams(3));
    OrderElement y = OrderElement::rho(CubicParams(4));
    REQUIRE_THROWS_AS(x * y, ParameterMismatch);
    REQUIRE_THROWS_AS(x + y, ParameterMismatch);
}

TEST_CASE("norm values") {
    for (long a : {-1L, 0L, 1L, 2L, 57L, 100L, 99991L}) {
        CubicParams p{a};
        REQUIRE(OrderElement::rho(p).norm() == 1);
        OrderElement d = delta(p);
        OrderElement one = OrderElement::one(p);
        REQUIRE((d + one).norm() == mpz_class(-2 * a - 3));
        REQUIRE((d - one).norm() == 1);
    }
}

TEST_CASE("norm is multiplicative and matches the resultant oracle") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long> ad(-1, 10000);
    for (int i = 0; i < 200; ++i) {
        CubicParams p{ad(rng)};
        OrderElement e1 = random_element(p, rng);
        OrderElement e2 = random_element(p, rng);
        REQUIRE((e1 * e2).norm() == e1.norm() * e2.norm());
        REQUIRE(e1.norm() == sylvester_norm(e1));
    }
}

TEST_CASE("characteristic polynomial gives N(n - u)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> ad(-1, 500);
    std::uniform_int_distribution<long> nd(-50, 50);
    for (int i = 0; i < 100; ++i) {
        CubicParams p{ad(rng)};
        OrderElement u = random_element(p, rng);
        auto cp = u.char_poly();
        REQUIRE(cp.e1 == u.trace());
        REQUIRE(cp.e3 == u.norm());
        mpz_class n = nd(rng);
        OrderElement diff = OrderElement::integer(p, n) - u;
        REQUIRE(diff.norm() == n * n * n - cp.e1 * n * n + cp.e2 * n - cp.e3);
    }
}

TEST_CASE("sigma") {
    for (long a : {-1L, 0L, 7L, 1001L}) {
        CubicParams p{a};
        OrderElement rho = OrderElement::rho(p);
        REQUIRE(rho.sigma() == OrderElement(p, a + 2, a, -1));
        REQUIRE(OrderElement::one(p).sigma() == OrderElement::one(p));
        REQUIRE(rho.sigma().sigma().sigma() == rho);
        // delta = -sigma(rho)
        REQUIRE(delta(p) == -rho.sigma());
    }
}

TEST_CASE("sigma is a ring homomorphism of exact order 3") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> ad(-1, 10000);
    for (int i = 0; i < 50; ++i) {
        CubicParams p{ad(rng)};
        OrderElement e1 = random_element(p, rng);
        OrderElement e2 = random_element(p, rng);
        REQUIRE((e1 + e2).sigma() == e1.sigma() + e2.sigma());
        REQUIRE((e1 * e2).sigma() == e1.sigma() * e2.sigma());
        REQUIRE(e1.sigma().sigma().sigma() == e1);
        if (!e1.is_rational_integer()) REQUIRE(e1.sigma() != e1);
    }
}

TEST_CASE("unit inversion") {
    for (long a : {-1L, 0L, 3L, 250L}) {
        CubicParams p{a};
        OrderElement e = eps(p);
        REQUIRE(invert_unit(e) == eps_inv(p));
        REQUIRE(invert_unit(e) * e == OrderElement::one(p));
        REQUIRE(invert_unit(OrderElement::one(p)) == OrderElement::one(p));
        OrderElement d = delta(p);
        REQUIRE(invert_unit(invert_unit(d)) == d);
        REQUIRE_THROWS_AS(invert_unit(OrderElement::integer(p, 2)), NotAUnit);
    }
}

TEST_CASE("units from exponents") {
    CubicParams p0{0};
    REQUIRE(unit_from_exponents(p0, UnitRepr{1, 0, 0}) == OrderElement::one(p0));
    REQUIRE(unit_from_exponents(p0, UnitRepr{1, -1, 1}) ==
            OrderElement(p0, 6, 1, -2));
    CubicParams pm1{-1};
    REQUIRE(unit_from_exponents(pm1, UnitRepr{-1, 1, 1}) ==
            OrderElement(pm1, -1, -1, 0));
}

TEST_CASE("unit powers always have unit norm") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> ad(-1, 10000);
    for (int rep = 0; rep < 4; ++rep) {
        CubicParams p{ad(rng)};
        for (long x = -15; x <= 15; ++x)
            for (long y = -15; y <= 15; ++y) {
                OrderElement u = unit_from_exponents(p, UnitRepr{1, x, y});
                mpz_class n = u.norm();
                REQUIRE((n == 1 || n == -1));
                // N(eps) = 1 and N(delta) = -1, so the sign is (-1)^y
                REQUIRE(n == ((y % 2 == 0) ? 1 : -1));
            }
    }
}

TEST_CASE("representation is unique on a small box") {
    for (long a : {-1L, 0L, 2L, 19L}) {
        CubicParams p{a};
        std::set<std::string> seen;
        for (int s : {1, -1})
            for (long x = -6; x <= 6; ++x)
                for (long y = -6; y <= 6; ++y) {
                    OrderElement u = unit_from_exponents(p, UnitRepr{s, x, y});
                    REQUIRE(seen.insert(u.to_string()).second);
                }
    }
}

TEST_CASE("norm of eps^x +- 1 exceeds a") {
    // |N(eps^x +- 1)| > a for |x| >= 2; exact big-integer comparison
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> ad(101, 10000);
    for (int i = 0; i < 10; ++i) {
        CubicParams p{ad(rng)};
        OrderElement one = OrderElement::one(p);
        for (long x : {-50L, -17L, -3L, -2L, 2L, 3L, 17L, 50L}) {
            OrderElement ex = unit_pow(eps(p), x);
            mpz_class np = (ex + one).norm();
            mpz_class nm = (ex - one).norm();
            REQUIRE(abs(np) > p.a);
            REQUIRE(abs(nm) > p.a);
        }
    }
}
