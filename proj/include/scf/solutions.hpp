#ifndef SCF_SOLUTIONS_HPP
#define SCF_SOLUTIONS_HPP

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "scf/cubic.hpp"
#include "scf/embeddings.hpp"

namespace scf {

// A solution (u1, u2, n) of u1 + u2 = n with both units carried in exact
// coordinates and in exponent form. Construction validates everything:
// the sum, both unit norms, and both exponent reconstructions.
class SolutionTriple {
public:
    static SolutionTriple make(OrderElement u1, UnitRepr r1, OrderElement u2,
                               UnitRepr r2, mpz_class n) {
        if (u1.params() != u2.params())
            throw ParameterMismatch("solution units in different orders");
        OrderElement sum = u1 + u2;
        if (sum.c1() != 0 || sum.c2() != 0 || sum.c0() != n)
            throw std::invalid_argument("u1 + u2 != n");
        if (!u1.is_unit() || !u2.is_unit())
            throw NotAUnit("solution entry is not a unit");
        if (unit_from_exponents(u1.params(), r1) != u1 ||
            unit_from_exponents(u2.params(), r2) != u2)
            throw VerificationFailed("exponent form does not match coordinates");
        return SolutionTriple(std::move(u1), r1, std::move(u2), r2,
                              std::move(n));
    }

    static SolutionTriple from_exponents(const CubicParams& p, UnitRepr r1,
                                         UnitRepr r2, mpz_class n) {
        OrderElement u1 = unit_from_exponents(p, r1);
        OrderElement u2 = unit_from_exponents(p, r2);
        return make(std::move(u1), r1, std::move(u2), r2, std::move(n));
    }

    const OrderElement& u1() const { return u1_; }
    const OrderElement& u2() const { return u2_; }
    const UnitRepr& r1() const { return r1_; }
    const UnitRepr& r2() const { return r2_; }
    const mpz_class& n() const { return n_; }
    const CubicParams& params() const { return u1_.params(); }

    bool operator==(const SolutionTriple& o) const {
        return n_ == o.n_ && u1_ == o.u1_ && u2_ == o.u2_;
    }

    // ---- the three equivalence generators ----

    SolutionTriple negated() const {
        return SolutionTriple(-u1_, UnitRepr{-r1_.sign, r1_.x, r1_.y}, -u2_,
                              UnitRepr{-r2_.sign, r2_.x, r2_.y}, -n_);
    }

    SolutionTriple swapped() const {
        return SolutionTriple(u2_, r2_, u1_, r1_, n_);
    }

    // sigma(eps) = -delta and sigma(delta) = 1/(eps delta), so on
    // exponents sigma acts by (x, y) -> (-y, x - y) with a sign twist
    // (-1)^x. The element side goes through the exact Galois action.
    static UnitRepr sigma_repr(const UnitRepr& r) {
        int s = (r.x % 2 == 0) ? r.sign : -r.sign;
        return UnitRepr{s, -r.y, r.x - r.y};
    }

    SolutionTriple galois() const {
        return SolutionTriple(u1_.sigma(), sigma_repr(r1_), u2_.sigma(),
                              sigma_repr(r2_), n_);
    }

    std::string key() const {
        return n_.get_str() + "|" + u1_.to_string() + "|" + u2_.to_string();
    }

    std::int64_t max_exponent() const {
        return std::max({std::llabs(r1_.x), std::llabs(r1_.y),
                         std::llabs(r2_.x), std::llabs(r2_.y)});
    }

private:
    SolutionTriple(OrderElement u1, UnitRepr r1, OrderElement u2, UnitRepr r2,
                   mpz_class n)
        : u1_(std::move(u1)), u2_(std::move(u2)), r1_(r1), r2_(r2),
          n_(std::move(n)) {}

    OrderElement u1_, u2_;
    UnitRepr r1_, r2_;
    mpz_class n_;
};

// Closure of a solution under sign flip, swap and the Galois action.
// The generated group has order 12, so the orbit size divides 12.
inline std::vector<SolutionTriple> orbit(const SolutionTriple& sol) {
    std::vector<SolutionTriple> out;
    std::set<std::string> seen;
    std::vector<SolutionTriple> queue{sol};
    while (!queue.empty()) {
        SolutionTriple cur = queue.back();
        queue.pop_back();
        if (!seen.insert(cur.key()).second) continue;
        out.push_back(cur);
        queue.push_back(cur.negated());
        queue.push_back(cur.swapped());
        queue.push_back(cur.galois());
    }
    if (out.size() > 12 || 12 % out.size() != 0)
        throw std::logic_error("orbit size " + std::to_string(out.size()));
    return out;
}

namespace detail {

// Deterministic class representative: prefer n > 0, then small |n|, then
// the lexicographically smallest exponent tuple.
struct CanonicalKey {
    int neg_sign_n;
    mpz_class abs_n;
    std::array<std::int64_t, 6> t;

    explicit CanonicalKey(const SolutionTriple& s)
        : neg_sign_n(-sgn(s.n())),
          abs_n(abs(s.n())),
          t{s.r1().x, s.r1().y, s.r1().sign,
            s.r2().x, s.r2().y, s.r2().sign} {}

    bool operator<(const CanonicalKey& o) const {
        if (neg_sign_n != o.neg_sign_n) return neg_sign_n < o.neg_sign_n;
        if (abs_n != o.abs_n) return abs_n < o.abs_n;
        return t < o.t;
    }
};

}  // namespace detail

inline SolutionTriple canonicalize(const SolutionTriple& sol) {
    std::vector<SolutionTriple> orb = orbit(sol);
    const SolutionTriple* best = &orb.front();
    detail::CanonicalKey best_key(*best);
    for (const SolutionTriple& s : orb) {
        detail::CanonicalKey k(s);
        if (k < best_key) {
            best_key = k;
            best = &s;
        }
    }
    return *best;
}

struct TrivialCheck {
    bool trivial = false;
    std::string family;  // "(1,1,2)", "(u,-u,0)" or "(rho+1,-rho,1)"
};

inline TrivialCheck is_trivial(const SolutionTriple& sol) {
    const CubicParams& p = sol.params();
    OrderElement one = OrderElement::one(p);
    OrderElement rho = OrderElement::rho(p);
    for (const SolutionTriple& m : orbit(sol)) {
        if (m.n() == 0) return {true, "(u,-u,0)"};
        if (m.n() == 2 && m.u1() == one && m.u2() == one)
            return {true, "(1,1,2)"};
        if (m.n() == 1 && m.u1() == rho + one && m.u2() == -rho)
            return {true, "(rho+1,-rho,1)"};
    }
    return {false, ""};
}

// Moves a solution to an equivalent one whose u2 is large in the real
// embedding: |u2| > a^(X/2), X the maximum exponent of the *input*.
// Swap puts the maximal exponent into u2, then one of {id, sigma,
// sigma^2} is chosen by a four-way case split on which of +-x2, +-y2
// attains X, and finally the sign is flipped so that u1 > 0.  The
// resulting inequality is recertified with intervals rather than
// trusted, so a failure here is loud.
inline SolutionTriple good_representative(const SolutionTriple& sol,
                                          const EmbeddingContext& ctx) {
    if (sol.params() != ctx.params)
        throw ParameterMismatch("solution/context parameter mismatch");
    if (!(ctx.params.a > 100))
        throw std::invalid_argument("good_representative requires a > 100");
    const std::int64_t X = sol.max_exponent();
    if (X == 0)
        throw std::invalid_argument("degenerate solution with all exponents 0");

    SolutionTriple work = sol;
    if (std::max(std::llabs(work.r2().x), std::llabs(work.r2().y)) < X)
        work = work.swapped();

    const std::int64_t x2 = work.r2().x;
    const std::int64_t y2 = work.r2().y;
    int tau;  // number of sigma applications
    if (x2 == X) {
        tau = 0;
    } else if (-x2 == X) {
        tau = (2 * y2 >= -X) ? 2 : 1;
    } else if (y2 == X) {
        tau = (2 * x2 >= X) ? 0 : 2;
    } else {
        tau = 1;  // -y2 == X
    }
    for (int i = 0; i < tau; ++i) work = work.galois();
    if (work.r1().sign < 0) work = work.negated();

    SignedLogAbs u2_log = signed_log_abs(work.u2(), ctx, 1);
    Interval log_a = Interval::from_mpz(ctx.params.a, ctx.precision).log();
    Interval rhs = (log_a * Interval::from_long(X, ctx.precision)).mul_2si(-1);
    if (!certainly_less(rhs, u2_log.log_abs))
        throw CertificationFailed("|u2| > a^(X/2) not certified at precision " +
                                  std::to_string(ctx.precision));
    return work;
}

struct EquivalenceClass {
    SolutionTriple representative;
    int orbit_size = 0;
};

inline EquivalenceClass make_class(const SolutionTriple& sol) {
    SolutionTriple rep = canonicalize(sol);
    return EquivalenceClass{rep, static_cast<int>(orbit(rep).size())};
}

}  // namespace scf

#endif  // SCF_SOLUTIONS_HPP
