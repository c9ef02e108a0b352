#pragma once

#include <cstdint>
#include <vector>

namespace ree2g2 {

/*
 * Dense linear algebra over F3. Scalars are 0, 1, 2 stored in uint8_t.
 * This backs the linearized-polynomial solver and the Lang-map block solver.
 */
using F3 = std::uint8_t;

inline F3 f3_add(F3 a, F3 b) { return static_cast<F3>((a + b) % 3); }
inline F3 f3_sub(F3 a, F3 b) { return static_cast<F3>((a + 3 - b) % 3); }
inline F3 f3_neg(F3 a) { return static_cast<F3>((3 - a) % 3); }
inline F3 f3_mul(F3 a, F3 b) { return static_cast<F3>((a * b) % 3); }
inline F3 f3_inv(F3 a) { return a; /* 1->1, 2->2; caller must not pass 0 */ }
inline F3 f3_from_int(long v) { return static_cast<F3>(((v % 3) + 3) % 3); }

using F3Vec = std::vector<F3>;

struct F3Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<F3> data;  // row major

    F3Mat() = default;
    F3Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    F3& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    F3 at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    F3Vec apply(const F3Vec& v) const;
    static F3Mat identity(std::size_t n);
    F3Mat mul(const F3Mat& other) const;
};

/* Solution set of M x = b: empty, or particular + span(kernel). */
struct F3LinSolution {
    bool solvable = false;
    F3Vec particular;
    std::vector<F3Vec> kernel;
};

F3LinSolution f3_solve(const F3Mat& m, const F3Vec& rhs);

/*
 * Smallest element of the coset particular + span(kernel) in the
 * lexicographic order that reads coordinate 0 as most significant
 * (with 0 < 1 < 2). Greedy Gaussian elimination with column priority.
 */
F3Vec f3_lex_min_coset(F3Vec particular, std::vector<F3Vec> kernel);

/* Is v in span(basis)? */
bool f3_in_span(const std::vector<F3Vec>& basis, const F3Vec& v);

}  // namespace ree2g2
