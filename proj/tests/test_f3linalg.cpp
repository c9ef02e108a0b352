#include "doctest.h"
#include "ree2g2/f3linalg.hpp"

using namespace ree2g2;

namespace {

F3Mat mat_from(std::size_t rows, std::size_t cols, std::initializer_list<int> vals) {
    F3Mat m(rows, cols);
    auto it = vals.begin();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = f3_from_int(*it++);
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic mod 3") {
    CHECK(f3_add(2, 2) == 1);
    CHECK(f3_sub(0, 1) == 2);
    CHECK(f3_neg(1) == 2);
    CHECK(f3_mul(2, 2) == 1);
    CHECK(f3_inv(1) == 1);
    CHECK(f3_inv(2) == 2);
    CHECK(f3_from_int(-1) == 2);
    CHECK(f3_from_int(7) == 1);
}

TEST_CASE("solve: unique solution") {
    // x + y = 1, x - y = 0  ->  x = y = 2
    auto m = mat_from(2, 2, {1, 1, 1, 2});
    auto s = f3_solve(m, {1, 0});
    REQUIRE(s.solvable);
    CHECK(s.kernel.empty());
    CHECK(s.particular == F3Vec{2, 2});
}

TEST_CASE("solve: inconsistent system") {
    auto m = mat_from(2, 2, {1, 1, 2, 2});
    auto s = f3_solve(m, {1, 0});
    CHECK_FALSE(s.solvable);
}

TEST_CASE("solve: kernel has the right dimension and spans solutions") {
    // single equation x + y + z = 2 over F3^3: 9 solutions, kernel dim 2
    auto m = mat_from(1, 3, {1, 1, 1});
    auto s = f3_solve(m, {2});
    REQUIRE(s.solvable);
    CHECK(s.kernel.size() == 2);
    // every combination of the kernel basis added to the particular solution satisfies the system
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            F3Vec v = s.particular;
            for (std::size_t k = 0; k < 3; ++k)
                v[k] = f3_add(v[k], f3_add(f3_mul(static_cast<F3>(i), s.kernel[0][k]),
                                           f3_mul(static_cast<F3>(j), s.kernel[1][k])));
            CHECK(m.apply(v) == F3Vec{2});
        }
}

TEST_CASE("lex-min coset element: brute force comparison") {
    // coset of the plane x+y+z=0 shifted by (2,1,0); enumerate all 9 members
    auto m = mat_from(1, 3, {1, 1, 1});
    auto s = f3_solve(m, {0});
    REQUIRE(s.solvable);
    REQUIRE(s.kernel.size() == 2);
    F3Vec shift = {2, 1, 0};
    std::vector<F3Vec> members;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            F3Vec v = shift;
            for (std::size_t k = 0; k < 3; ++k)
                v[k] = f3_add(v[k], f3_add(f3_mul(static_cast<F3>(i), s.kernel[0][k]),
                                           f3_mul(static_cast<F3>(j), s.kernel[1][k])));
            members.push_back(v);
        }
    F3Vec expect = *std::min_element(members.begin(), members.end());
    CHECK(f3_lex_min_coset(shift, s.kernel) == expect);
}

TEST_CASE("lex-min is stable under kernel basis permutation") {
    std::vector<F3Vec> basis = {{1, 0, 2}, {0, 1, 1}};
    auto a = f3_lex_min_coset({2, 2, 2}, basis);
    std::swap(basis[0], basis[1]);
    auto b = f3_lex_min_coset({2, 2, 2}, basis);
    CHECK(a == b);
}

TEST_CASE("span membership") {
    std::vector<F3Vec> basis = {{1, 0, 2}, {0, 1, 1}};
    CHECK(f3_in_span(basis, {1, 1, 0}));   // sum of the two
    CHECK(f3_in_span(basis, {0, 0, 0}));
    CHECK_FALSE(f3_in_span(basis, {0, 0, 1}));
}

TEST_CASE("matrix product against manual computation") {
    auto a = mat_from(2, 3, {1, 2, 0, 0, 1, 1});
    auto b = mat_from(3, 2, {1, 1, 2, 0, 1, 2});
    auto p = a.mul(b);
    CHECK(p.apply({1, 0}) == a.apply(b.apply({1, 0})));
    CHECK(p.apply({0, 1}) == a.apply(b.apply({0, 1})));
}
