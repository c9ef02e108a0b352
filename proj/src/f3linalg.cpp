#include "ree2g2/f3linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace ree2g2 {

F3Vec F3Mat::apply(const F3Vec& v) const {
    assert(v.size() == cols);
    F3Vec out(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        unsigned acc = 0;
        const F3* row = &data[r * cols];
        for (std::size_t c = 0; c < cols; ++c) acc += row[c] * v[c];
        out[r] = static_cast<F3>(acc % 3);
    }
    return out;
}

F3Mat F3Mat::identity(std::size_t n) {
    F3Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

F3Mat F3Mat::mul(const F3Mat& other) const {
    assert(cols == other.rows);
    F3Mat out(rows, other.cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < cols; ++k) {
            F3 a = at(r, k);
            if (!a) continue;
            for (std::size_t c = 0; c < other.cols; ++c)
                out.at(r, c) = f3_add(out.at(r, c), f3_mul(a, other.at(k, c)));
        }
    return out;
}

F3LinSolution f3_solve(const F3Mat& m, const F3Vec& rhs) {
    if (rhs.size() != m.rows) throw std::invalid_argument("f3_solve: rhs size mismatch");
    const std::size_t nr = m.rows, nc = m.cols;

    // augmented row echelon
    F3Mat a = m;
    F3Vec b = rhs;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t p = row;
        while (p < nr && a.at(p, col) == 0) ++p;
        if (p == nr) continue;
        if (p != row) {
            for (std::size_t c = 0; c < nc; ++c) std::swap(a.at(p, c), a.at(row, c));
            std::swap(b[p], b[row]);
        }
        F3 inv = f3_inv(a.at(row, col));
        if (inv != 1)
            for (std::size_t c = col; c < nc; ++c) a.at(row, c) = f3_mul(a.at(row, c), inv);
        if (inv != 1) b[row] = f3_mul(b[row], inv);
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == row) continue;
            F3 f = a.at(r, col);
            if (!f) continue;
            for (std::size_t c = col; c < nc; ++c)
                a.at(r, c) = f3_sub(a.at(r, c), f3_mul(f, a.at(row, c)));
            b[r] = f3_sub(b[r], f3_mul(f, b[row]));
        }
        pivot_col.push_back(col);
        ++row;
    }

    F3LinSolution sol;
    for (std::size_t r = row; r < nr; ++r)
        if (b[r] != 0) return sol;  // inconsistent
    sol.solvable = true;

    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    sol.particular.assign(nc, 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) sol.particular[pivot_col[r]] = b[r];

    for (std::size_t free_c = 0; free_c < nc; ++free_c) {
        if (is_pivot[free_c]) continue;
        F3Vec k(nc, 0);
        k[free_c] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            k[pivot_col[r]] = f3_neg(a.at(r, free_c));
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

F3Vec f3_lex_min_coset(F3Vec particular, std::vector<F3Vec> kernel) {
    const std::size_t n = particular.size();
    for (std::size_t j = 0; j < n; ++j) {
        // find an unused basis vector with nonzero coordinate j
        std::size_t hit = kernel.size();
        for (std::size_t k = 0; k < kernel.size(); ++k)
            if (kernel[k][j] != 0) { hit = k; break; }
        if (hit == kernel.size()) continue;  // coordinate j is fixed on the coset
        F3Vec piv = kernel[hit];
        kernel.erase(kernel.begin() + static_cast<std::ptrdiff_t>(hit));
        F3 pinv = f3_inv(piv[j]);
        // zero out coordinate j of the point (0 is minimal, and the choice is free)
        if (particular[j] != 0) {
            F3 f = f3_mul(particular[j], pinv);
            for (std::size_t c = 0; c < n; ++c)
                particular[c] = f3_sub(particular[c], f3_mul(f, piv[c]));
        }
        // remove coordinate j from the remaining directions
        for (auto& k : kernel) {
            if (k[j] == 0) continue;
            F3 f = f3_mul(k[j], pinv);
            for (std::size_t c = 0; c < n; ++c) k[c] = f3_sub(k[c], f3_mul(f, piv[c]));
        }
    }
    return particular;
}

bool f3_in_span(const std::vector<F3Vec>& basis, const F3Vec& v) {
    if (basis.empty()) {
        for (F3 x : v)
            if (x) return false;
        return true;
    }
    const std::size_t n = v.size();
    F3Mat m(n, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) m.at(r, c) = basis[c][r];
    return f3_solve(m, v).solvable;
}

}  // namespace ree2g2
