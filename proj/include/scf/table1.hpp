#ifndef SCF_TABLE1_HPP
#define SCF_TABLE1_HPP

#include <array>
#include <cstdint>

namespace scf {

// The ten sporadic solution classes (u1, u2, 1) for a <= 2, with both
// coordinate and exponent forms. Also shipped as data/table1.json; a test
// keeps the two in sync, and every row is re-validated exactly
// (coordinates against exponents, sum, norms) before use.
struct Table1Row {
    long a;
    long u1c0, u1c1, u1c2;
    int s1;
    std::int64_t x1, y1;
    long u2c0, u2c1, u2c2;
    int s2;
    std::int64_t x2, y2;
};

inline constexpr std::array<Table1Row, 10> kTable1 = {{
    {-1, -1, -1, 0, -1, 1, 1, 2, 1, 0, 1, 0, 2},
    {-1, 3, 0, -1, 1, -1, 1, -2, 0, 1, -1, -1, -1},
    {-1, 1, 1, -1, 1, 1, -1, 0, -1, 1, 1, 0, -2},
    {-1, 1234, -305, -549, -1, -11, -8, -1233, 305, 549, 1, -8, 3},
    {-1, 14, -3, -6, 1, -3, 1, -13, 3, 6, 1, -4, -3},
    {-1, 7, -2, -3, -1, -3, -2, -6, 2, 3, 1, -2, 1},
    {0, 61, 7, -21, -1, -5, -2, -60, -7, 21, 1, -2, 3},
    {0, 6, 1, -2, 1, -1, 1, -5, -1, 2, 1, -2, -1},
    {1, 77, 27, -21, 1, -1, 3, -76, -27, 21, 1, -4, -1},
    {2, 2718, 1340, -603, 1, -1, 5, -2717, -1340, 603, 1, -6, -1},
}};

}  // namespace scf

#endif  // SCF_TABLE1_HPP
