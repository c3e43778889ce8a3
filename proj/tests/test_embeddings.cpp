#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "scf/embeddings.hpp"

using namespace scf;

namespace {

// Plain double bisection of f_a over a bracket; test-side oracle, fully
// independent of the interval machinery.
double bisect_root_double(long a, double lo, double hi) {
    auto f = [&](double x) {
        return ((x - a) * x - (a + 3.0)) * x - 1.0;
    };
    for (int i = 0; i < 200; ++i) {
        double m = (lo + hi) / 2;
        if (f(m) < 0)
            lo = m;
        else
            hi = m;
    }
    return (lo + hi) / 2;
}

// High-precision non-interval bisection oracle for the largest root,
// evaluated with plain MPFR round-to-nearest.
void bisect_root_mpfr(const CubicParams& P, mpfr_ptr out, mpfr_prec_t prec) {
    mpfr_t lo, hi, m, v, t;
    mpfr_inits2(prec, lo, hi, m, v, t, static_cast<mpfr_ptr>(nullptr));
    long a = P.a.get_si();
    mpfr_set_si(lo, a >= 0 ? a + 1 : 1, MPFR_RNDN);
    mpfr_set_si(hi, a >= 0 ? a + 2 : 2, MPFR_RNDN);
    for (mpfr_prec_t i = 0; i < prec + 8; ++i) {
        mpfr_add(m, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(m, m, 1, MPFR_RNDN);
        // f(m) = ((m - a) m - (a+3)) m - 1
        mpfr_sub_si(v, m, a, MPFR_RNDN);
        mpfr_mul(v, v, m, MPFR_RNDN);
        mpfr_sub_si(v, v, a + 3, MPFR_RNDN);
        mpfr_mul(v, v, m, MPFR_RNDN);
        mpfr_sub_si(v, v, 1, MPFR_RNDN);
        if (mpfr_sgn(v) < 0)
            mpfr_set(lo, m, MPFR_RNDN);
        else
            mpfr_set(hi, m, MPFR_RNDN);
    }
    mpfr_set(out, lo, MPFR_RNDN);
    mpfr_clears(lo, hi, m, v, t, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

TEST_CASE("root enclosure sits in the expected bracket") {
    EmbeddingContext ctx = build_context(CubicParams(101), 128);
    REQUIRE(mpfr_cmp_si(ctx.rho1.lo(), 102) > 0);
    REQUIRE(mpfr_cmp_si(ctx.rho1.hi(), 103) < 0);
    REQUIRE((ctx.rho1 * ctx.rho2 * ctx.rho3).contains_long(1));

    // rho2 = -1 - 1/rho1 with a+1 < rho1 < a+2 forces
    // -1 - 1/(a+1) < rho2 < -1 - 1/(a+2); likewise -1/(a+2) < rho3 < -1/(a+3)
    Interval one = Interval::from_long(1, 128);
    Interval lo2 = -(one + (Interval::from_long(102, 128).recip()));
    Interval hi2 = -(one + (Interval::from_long(103, 128).recip()));
    REQUIRE(certainly_less(lo2, ctx.rho2));
    REQUIRE(certainly_less(ctx.rho2, hi2));
    Interval lo3 = -(Interval::from_long(103, 128).recip());
    Interval hi3 = -(Interval::from_long(104, 128).recip());
    REQUIRE(certainly_less(lo3, ctx.rho3));
    REQUIRE(certainly_less(ctx.rho3, hi3));
}

TEST_CASE("small-parameter roots match the bisection oracle") {
    double expect = bisect_root_double(-1, 1.0, 2.0);
    REQUIRE(std::abs(expect - 1.24698) < 1e-4);
    EmbeddingContext ctx = build_context(CubicParams(-1), 96);
    REQUIRE(std::abs(ctx.rho1.lo_double() - expect) < 1e-12);

    for (long a : {0L, 1L, 2L, 3L}) {
        EmbeddingContext c = build_context(CubicParams(a), 96);
        double r = bisect_root_double(a, a >= 0 ? a + 1 : 1, a + 2);
        REQUIRE(std::abs(c.rho1.lo_double() - r) < 1e-9);
    }
}

TEST_CASE("context rejects bad arguments") {
    REQUIRE_THROWS_AS(build_context(CubicParams(-2), 96), std::invalid_argument);
    REQUIRE_THROWS_AS(build_context(CubicParams(5), 32), std::invalid_argument);
}

TEST_CASE("monotone refinement") {
    for (long a : {-1L, 0L, 101L, 14867L}) {
        EmbeddingContext coarse = build_context(CubicParams(a), 96);
        EmbeddingContext fine = build_context(CubicParams(a), 192);
        REQUIRE(coarse.rho1.contains_interval(fine.rho1));
        REQUIRE(coarse.log_eps.contains_interval(fine.log_eps));
        REQUIRE(coarse.log_delta.contains_interval(fine.log_delta));
        REQUIRE(coarse.log_ratio.contains_interval(fine.log_ratio));
    }
}

TEST_CASE("log ratio contains an independently computed value") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<long> ad(101, 100000);
    for (int i = 0; i < 10; ++i) {
        CubicParams p{ad(rng)};
        EmbeddingContext ctx = build_context(p, 128);
        mpfr_t root, le, ld, ratio;
        mpfr_inits2(512, root, le, ld, ratio, static_cast<mpfr_ptr>(nullptr));
        bisect_root_mpfr(p, root, 512);
        mpfr_log(le, root, MPFR_RNDN);
        mpfr_ui_div(ld, 1, root, MPFR_RNDN);
        mpfr_log1p(ld, ld, MPFR_RNDN);
        mpfr_div(ratio, ld, le, MPFR_RNDN);
        REQUIRE(ctx.log_ratio.contains(ratio));
        mpfr_clears(root, le, ld, ratio, static_cast<mpfr_ptr>(nullptr));
    }
}

TEST_CASE("signed log abs") {
    CubicParams p{101};
    EmbeddingContext ctx = build_context(p, 128);

    SignedLogAbs rho_log = signed_log_abs(OrderElement::rho(p), ctx, 1);
    REQUIRE(rho_log.sign == 1);
    Interval lo = Interval::from_long(102, 128).log();
    Interval hi = Interval::from_long(103, 128).log();
    REQUIRE(certainly_less(lo, rho_log.log_abs));
    REQUIRE(certainly_less(rho_log.log_abs, hi));

    SignedLogAbs one_log = signed_log_abs(OrderElement::one(p), ctx, 2);
    REQUIRE(one_log.sign == 1);
    REQUIRE(one_log.log_abs.contains_long(0));
    REQUIRE(one_log.log_abs.width_below_2exp(-64));

    // log|delta^(1)| enclosed by log(1 + 1/103) and log(1 + 1/102),
    // and consistent with a direct 256-digit evaluation
    SignedLogAbs d = signed_log_abs(delta(p), ctx, 1);
    Interval dlo = Interval::from_long(103, 256).recip().log1p();
    Interval dhi = Interval::from_long(102, 256).recip().log1p();
    REQUIRE(certainly_less(dlo, d.log_abs));
    REQUIRE(certainly_less(d.log_abs, dhi));
    mpfr_t root, t;
    mpfr_inits2(850, root, t, static_cast<mpfr_ptr>(nullptr));
    bisect_root_mpfr(p, root, 850);
    mpfr_ui_div(t, 1, root, MPFR_RNDN);
    mpfr_log1p(t, t, MPFR_RNDN);
    REQUIRE(d.log_abs.contains(t));
    mpfr_clears(root, t, static_cast<mpfr_ptr>(nullptr));

    REQUIRE_THROWS_AS(signed_log_abs(OrderElement::zero(p), ctx, 1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(signed_log_abs(OrderElement::one(p), ctx, 4),
                      std::invalid_argument);
}

TEST_CASE("sum of embedding logs of a unit encloses zero") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> ad(-1, 2000);
    std::uniform_int_distribution<long> ed(-12, 12);
    for (int i = 0; i < 20; ++i) {
        CubicParams p{ad(rng)};
        OrderElement u =
            unit_from_exponents(p, UnitRepr{i % 2 ? 1 : -1, ed(rng), ed(rng)});
        Interval total = with_precision_ladder([&](mpfr_prec_t prec) {
            EmbeddingContext ctx = build_context(p, prec);
            return signed_log_abs(u, ctx, 1).log_abs +
                   signed_log_abs(u, ctx, 2).log_abs +
                   signed_log_abs(u, ctx, 3).log_abs;
        });
        REQUIRE(total.contains_long(0));
    }
}

TEST_CASE("exponent recovery on known values") {
    for (long a : {3L, 10L, 500L}) {
        CubicParams p{a};
        OrderElement e = OrderElement::rho(p) + OrderElement::one(p);
        UnitRepr r = recover_exponents(e);
        REQUIRE(r == UnitRepr{1, 1, 1});
    }
    CubicParams p0{7};
    REQUIRE(recover_exponents(OrderElement::one(p0)) == UnitRepr{1, 0, 0});

    CubicParams pm1{-1};
    OrderElement table_row(pm1, 1234, -305, -549);
    REQUIRE(recover_exponents(table_row) == UnitRepr{-1, -11, -8});

    REQUIRE_THROWS_AS(recover_exponents(OrderElement::integer(p0, 3)), NotAUnit);
}

TEST_CASE("exponent recovery roundtrip") {
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<long> ad(-1, 1000);
    std::uniform_int_distribution<long> ed(-50, 50);
    std::bernoulli_distribution sd;
    for (int i = 0; i < 60; ++i) {
        CubicParams p{ad(rng)};
        UnitRepr r{sd(rng) ? 1 : -1, ed(rng), ed(rng)};
        OrderElement u = unit_from_exponents(p, r);
        REQUIRE(recover_exponents(u) == r);
    }
}
