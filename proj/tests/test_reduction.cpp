#include <catch_amalgamated.hpp>

#include <vector>

#include "scf/reduction.hpp"

using namespace scf;

namespace {

Interval golden_ratio(mpfr_prec_t prec) {
    Interval five = Interval::from_long(5, prec);
    Interval r(prec);
    mpfr_t s;
    mpfr_init2(s, prec);
    mpfr_sqrt_ui(s, 5, MPFR_RNDD);
    Interval lo = Interval::point(s, prec);
    mpfr_sqrt_ui(s, 5, MPFR_RNDU);
    Interval hi = Interval::point(s, prec);
    mpfr_clear(s);
    Interval sqrt5 = Interval::from_endpoints(lo.lo(), hi.hi(), prec);
    return (Interval::from_long(1, prec) + sqrt5).mul_2si(-1);
}

}  // namespace

TEST_CASE("convergents of the golden ratio") {
    auto [p, q] = convergents_until(golden_ratio(128), 10);
    REQUIRE(p == 21);
    REQUIRE(q == 13);
    auto [p2, q2] = convergents_until(golden_ratio(128), 14);
    REQUIRE(p2 == 34);
    REQUIRE(q2 == 21);
}

TEST_CASE("rational ratios stall instead of guessing") {
    // an interval strictly around 22/7 cannot certify quotients past the
    // final one; documented degenerate behavior
    Interval r = Interval::from_long(22, 128) / Interval::from_long(7, 128);
    REQUIRE_THROWS_AS(convergents_until(r, 100), PrecisionExhausted);
    REQUIRE_THROWS_AS(convergents_until(Interval::from_long(-3, 96), 5),
                      std::invalid_argument);
}

TEST_CASE("reduction at a = 101") {
    ReductionCertificate cert = reduce_parameter(CubicParams(101));
    REQUIRE(cert.contradiction);
    REQUIRE(cert.q >= cert.q_min);
    REQUIRE(cert.q_min == 502620);  // ceil(2 * upper_X(101))
    REQUIRE(cert.q >= 500000);
    REQUIRE(cert.q <= 5100000);

    // the reduced bound collapses to O(10), far below lower_X ~ 202.5
    Interval nu = Interval::from_decimal(cert.new_upper, 192);
    REQUIRE(certainly_less(nu, Interval::from_decimal("202.4", 192)));
    REQUIRE(certainly_less(Interval::from_long(0, 192), nu));
    REQUIRE(certainly_less(nu, Interval::from_long(20, 192)));

    // regression fixture for the selected convergent
    REQUIRE(cert.p == 2467);
    REQUIRE(cert.q == 1169767);

    REQUIRE(verify_certificate(cert).empty());
}

TEST_CASE("reduction at the top of the sweep range") {
    ReductionCertificate cert = reduce_parameter(CubicParams(148000));
    REQUIRE(cert.contradiction);
    REQUIRE(verify_certificate(cert).empty());
}

TEST_CASE("tampered certificates are rejected") {
    ReductionCertificate good = reduce_parameter(CubicParams(150));
    REQUIRE(verify_certificate(good).empty());

    ReductionCertificate bad = good;
    bad.q += 1;
    REQUIRE_FALSE(verify_certificate(bad).empty());

    bad = good;
    bad.contradiction = false;
    REQUIRE_FALSE(verify_certificate(bad).empty());

    bad = good;
    bad.c_lo = "1.0";  // far above the true linear form
    REQUIRE_FALSE(verify_certificate(bad).empty());

    bad = good;
    bad.new_upper = "0.001";  // claims a tighter bound than provable
    REQUIRE_FALSE(verify_certificate(bad).empty());

    bad = good;
    bad.lower = "99999999";  // claims a stronger lower bound than provable
    REQUIRE_FALSE(verify_certificate(bad).empty());

    bad = good;
    bad.q_min = 3;
    REQUIRE_FALSE(verify_certificate(bad).empty());
}

TEST_CASE("roundings are outward at every precision") {
    CubicParams p{1234};
    Interval c_pt = Interval::from_decimal("1.5e-7", 512);
    Interval nu1 = detail::reduced_upper_bound(p, c_pt, 192);
    Interval nu2 = detail::reduced_upper_bound(p, c_pt, 384);
    REQUIRE(mpfr_greaterequal_p(nu1.hi(), nu2.hi()));
    Interval lo1 = lower_bound_X(p, 192);
    Interval lo2 = lower_bound_X(p, 384);
    REQUIRE(mpfr_lessequal_p(lo1.lo(), lo2.lo()));
    Interval up1 = upper_bound_X(p, 192);
    Interval up2 = upper_bound_X(p, 384);
    REQUIRE(mpfr_greaterequal_p(up1.hi(), up2.hi()));
}

TEST_CASE("convergent quality") {
    for (long a : {101L, 500L, 9999L}) {
        CubicParams p{a};
        ReductionCertificate cert = reduce_parameter(p);
        EmbeddingContext ctx = build_context(p, cert.precision);
        Interval c = (Interval::from_mpz(cert.p, cert.precision) -
                      Interval::from_mpz(cert.q, cert.precision) * ctx.log_ratio)
                         .abs();
        REQUIRE(c.is_positive());
        REQUIRE(certainly_less(
            c, Interval::from_mpz(cert.q, cert.precision).recip()));
    }
}

TEST_CASE("singleton sweep equals direct reduction") {
    std::vector<ReductionCertificate> got;
    SweepSummary s = sweep(101, 101, 1,
                           [&](const ReductionCertificate& c) { got.push_back(c); });
    REQUIRE(s.total == 1);
    REQUIRE(s.contradictions == 1);
    REQUIRE(s.failures == 0);
    ReductionCertificate direct = reduce_parameter(CubicParams(101));
    REQUIRE(got.size() == 1);
    REQUIRE(got[0].p == direct.p);
    REQUIRE(got[0].q == direct.q);
    REQUIRE(got[0].precision == direct.precision);
    REQUIRE(got[0].c_lo == direct.c_lo);
    REQUIRE(got[0].new_upper == direct.new_upper);
    REQUIRE(got[0].lower == direct.lower);
}

TEST_CASE("sweep emits ordered, all-contradiction certificates") {
    std::vector<long> order;
    SweepSummary s = sweep(101, 1000, 4, [&](const ReductionCertificate& c) {
        order.push_back(c.a.get_si());
        REQUIRE(c.contradiction);
    });
    REQUIRE(s.total == 900);
    REQUIRE(s.contradictions == 900);
    REQUIRE(s.failures == 0);
    REQUIRE(order.size() == 900);
    for (size_t i = 0; i < order.size(); ++i)
        REQUIRE(order[i] == 101 + static_cast<long>(i));

    REQUIRE_THROWS_AS(sweep(50, 60, 1, [](const ReductionCertificate&) {}),
                      std::invalid_argument);
}
