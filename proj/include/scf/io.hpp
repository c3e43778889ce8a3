#ifndef SCF_IO_HPP
#define SCF_IO_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "scf/bounds.hpp"
#include "scf/reduction.hpp"
#include "scf/search.hpp"

namespace scf {

using json = nlohmann::json;

// Big integers ride as JSON numbers while they fit int64 and as decimal
// strings beyond; readers accept both.
inline json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

inline mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<std::int64_t>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string");
}

inline json element_to_json(const OrderElement& e) {
    return json{{"a", mpz_to_json(e.params().a)},
                {"c", {e.c0().get_str(), e.c1().get_str(), e.c2().get_str()}}};
}

inline OrderElement element_from_json(const json& j) {
    CubicParams p{mpz_from_json(j.at("a"))};
    const json& c = j.at("c");
    return OrderElement(p, mpz_class(c.at(0).get<std::string>()),
                        mpz_class(c.at(1).get<std::string>()),
                        mpz_class(c.at(2).get<std::string>()));
}

inline json repr_to_json(const UnitRepr& r) {
    return json{{"s", r.sign}, {"x", r.x}, {"y", r.y}};
}

inline json unit_to_json(const OrderElement& e, const UnitRepr& r) {
    return json{{"c", {e.c0().get_str(), e.c1().get_str(), e.c2().get_str()}},
                {"s", r.sign},
                {"x", r.x},
                {"y", r.y}};
}

inline json triple_to_json(const SolutionTriple& t) {
    return json{{"a", mpz_to_json(t.params().a)},
                {"n", mpz_to_json(t.n())},
                {"u1", unit_to_json(t.u1(), t.r1())},
                {"u2", unit_to_json(t.u2(), t.r2())}};
}

// Reconstruction goes through SolutionTriple::make, so a tampered file
// cannot produce an invalid triple.
inline SolutionTriple triple_from_json(const json& j) {
    CubicParams p{mpz_from_json(j.at("a"))};
    auto unit = [&](const json& u) {
        const json& c = u.at("c");
        return std::pair<OrderElement, UnitRepr>(
            OrderElement(p, mpz_class(c.at(0).get<std::string>()),
                         mpz_class(c.at(1).get<std::string>()),
                         mpz_class(c.at(2).get<std::string>())),
            UnitRepr{u.at("s").get<int>(), u.at("x").get<std::int64_t>(),
                     u.at("y").get<std::int64_t>()});
    };
    auto [u1, r1] = unit(j.at("u1"));
    auto [u2, r2] = unit(j.at("u2"));
    return SolutionTriple::make(u1, r1, u2, r2, mpz_from_json(j.at("n")));
}

inline json class_to_json(const EquivalenceClass& c) {
    return json{{"representative", triple_to_json(c.representative)},
                {"orbit_size", c.orbit_size}};
}

inline json classes_to_json(const std::vector<EquivalenceClass>& cs) {
    json arr = json::array();
    for (const EquivalenceClass& c : cs) arr.push_back(class_to_json(c));
    return arr;
}

inline const char* kClassCsvHeader =
    "a,n,s1,x1,y1,s2,x2,y2,u1c0,u1c1,u1c2,u2c0,u2c1,u2c2";

inline std::string class_to_csv_row(const EquivalenceClass& c) {
    const SolutionTriple& t = c.representative;
    std::ostringstream os;
    os << t.params().a << ',' << t.n() << ',' << t.r1().sign << ',' << t.r1().x
       << ',' << t.r1().y << ',' << t.r2().sign << ',' << t.r2().x << ','
       << t.r2().y << ',' << t.u1().c0() << ',' << t.u1().c1() << ','
       << t.u1().c2() << ',' << t.u2().c0() << ',' << t.u2().c1() << ','
       << t.u2().c2();
    return os.str();
}

inline std::string classes_to_csv(const std::vector<EquivalenceClass>& cs) {
    std::ostringstream os;
    os << kClassCsvHeader << '\n';
    for (const EquivalenceClass& c : cs) os << class_to_csv_row(c) << '\n';
    return os.str();
}

inline json search_result_to_json(const SearchResult& r) {
    return json{{"a", mpz_to_json(r.config.params.a)},
                {"n_max", mpz_to_json(r.config.n_max)},
                {"x_max", r.config.x_max},
                {"include_trivial", r.config.include_trivial},
                {"raw_sporadic_count", r.raw_sporadic.size()},
                {"sporadic", classes_to_json(r.sporadic)},
                {"trivial", classes_to_json(r.trivial)},
                {"unit_pair_family",
                 r.unit_pair_family ? json("(u,-u,0) for every unit u")
                                    : json(nullptr)}};
}

inline json bounds_report_to_json(const BoundsReport& r) {
    return json{{"a", mpz_to_json(r.params.a)},
                {"upper_X", {r.upper_X.lo_double(), r.upper_X.hi_double()}},
                {"lower_X", {r.lower_X.lo_double(), r.lower_X.hi_double()}},
                {"contradiction", r.contradiction}};
}

inline json certificate_to_json(const ReductionCertificate& c) {
    return json{{"a", mpz_to_json(c.a)},
                {"prec", static_cast<std::int64_t>(c.precision)},
                {"p", c.p.get_str()},
                {"q", c.q.get_str()},
                {"q_min", c.q_min.get_str()},
                {"c_lo", c.c_lo},
                {"new_upper", c.new_upper},
                {"lower", c.lower},
                {"contradiction", c.contradiction}};
}

inline ReductionCertificate certificate_from_json(const json& j) {
    ReductionCertificate c;
    c.a = mpz_from_json(j.at("a"));
    c.precision = static_cast<mpfr_prec_t>(j.at("prec").get<std::int64_t>());
    c.p = mpz_class(j.at("p").get<std::string>());
    c.q = mpz_class(j.at("q").get<std::string>());
    c.q_min = mpz_class(j.at("q_min").get<std::string>());
    c.c_lo = j.at("c_lo").get<std::string>();
    c.new_upper = j.at("new_upper").get<std::string>();
    c.lower = j.at("lower").get<std::string>();
    c.contradiction = j.at("contradiction").get<bool>();
    return c;
}

inline json table_report_to_json(const TableReport& r) {
    json per_a = json::object();
    for (const auto& [a, k] : r.classes_per_a) per_a[std::to_string(a)] = k;
    return json{{"raw_sporadic_triples", r.raw_sporadic_triples},
                {"class_count", r.classes.size()},
                {"classes_per_a", per_a},
                {"classes", classes_to_json(r.classes)},
                {"matches_fixture", r.matches_fixture}};
}

inline json scan_report_to_json(const ScanReport& r) {
    json per_a = json::object();
    for (const auto& [a, k] : r.classes_per_a) per_a[std::to_string(a)] = k;
    return json{{"a_max", r.a_max},
                {"n_max", mpz_to_json(r.n_max)},
                {"x_max", r.x_max},
                {"class_count", r.classes.size()},
                {"largest_n", mpz_to_json(r.largest_n)},
                {"largest_a", r.largest_a},
                {"classes_per_a", per_a},
                {"classes", classes_to_json(r.classes)},
                {"caveat", r.caveat}};
}

}  // namespace scf

#endif  // SCF_IO_HPP
