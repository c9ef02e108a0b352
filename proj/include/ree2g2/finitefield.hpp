#pragma once

#include "ree2g2/bigrat.hpp"
#include "ree2g2/f3linalg.hpp"
#include "ree2g2/rng.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace ree2g2 {

/*
 * The tower F3 < F_q < F_{q^3} with q = 3^(2n+1).
 *
 * Each level is represented as F3[x]/(f) with f the lexicographically
 * smallest monic irreducible polynomial of the right degree over F3
 * (coefficient vectors ordered constant term first, 0 < 1 < 2), so the whole
 * construction is deterministic for fixed n. F_q sits inside F_{q^3} through
 * the lex-smallest root of the middle modulus in the top field.
 *
 * Two distinguished elements are fixed at construction:
 *   alpha0: the lex-smallest solution of X^q - X + 1 = 0 in F_{q^3},
 *           so alpha0^q = alpha0 - 1;
 *   xi    = alpha0^3 - alpha0, which lies in F_q, has trace -1 to F3,
 *           and makes X^3 - X - xi irreducible over F_q.
 */

enum class Level : std::uint8_t { f3 = 0, fq = 1, fq3 = 2 };

constexpr int MAX_FIELD_DEG = 51;  // 3(2n+1) at the largest supported n = 8
constexpr int MAX_TOWER_N = 8;

struct FqElement {
    Level level = Level::f3;
    std::array<std::uint8_t, MAX_FIELD_DEG> c{};  // coefficients, c[0] = constant term

    bool operator==(const FqElement&) const = default;
    bool is_zero() const {
        for (auto v : c)
            if (v) return false;
        return true;
    }
};

/* coefficient-vector order with c[0] most significant; levels must match */
bool lex_less(const FqElement& a, const FqElement& b);

/* Solutions of an F3-linear equation in one field level: empty or a coset. */
struct SolutionSet {
    bool solvable = false;
    Level level = Level::f3;
    int degree = 1;  // F3-dimension of the ambient field
    FqElement particular;
    std::vector<FqElement> kernel;  // F3-basis of the homogeneous solutions

    bool empty() const { return !solvable; }
    std::size_t kernel_dim() const { return kernel.size(); }
    BigInt count() const { return solvable ? pow3(static_cast<unsigned>(kernel.size())) : BigInt(0); }
    FqElement lex_min() const;
    bool contains(const FqElement& x) const;
    /* materializes every solution; refuses above 3^max_dim entries */
    std::vector<FqElement> all(std::size_t max_dim = 12) const;
};

class FieldTower {
  public:
    explicit FieldTower(int n);

    int n() const { return _n; }
    std::int64_t theta() const { return _theta; }
    std::int64_t q() const { return _q; }
    int degree(Level l) const { return _deg[static_cast<int>(l)]; }
    /* monic modulus of the level, degree(l)+1 coefficients, constant first */
    const std::vector<F3>& modulus(Level l) const { return _mod[static_cast<int>(l)]; }

    FqElement zero(Level l) const;
    FqElement one(Level l) const { return from_int(l, 1); }
    FqElement from_int(Level l, long v) const;
    FqElement from_coeffs(Level l, const std::vector<int>& coeffs) const;
    FqElement gen(Level l) const;  // the class of x; at level f3 this is 0

    FqElement add(const FqElement& a, const FqElement& b) const;
    FqElement sub(const FqElement& a, const FqElement& b) const;
    FqElement neg(const FqElement& a) const;
    FqElement mul(const FqElement& a, const FqElement& b) const;
    FqElement inv(const FqElement& a) const;
    FqElement pow(const FqElement& a, std::int64_t e) const;
    FqElement frobenius_pow(const FqElement& a, int k) const;  // a^(3^k), k >= 0

    FqElement embed(const FqElement& a, Level target) const;
    bool in_subfield(const FqElement& a, Level sub) const;
    FqElement project(const FqElement& a, Level sub) const;

    const FqElement& alpha0() const { return _alpha0; }
    const FqElement& xi() const { return _xi_mid; }
    FqElement xi_at(Level l) const { return embed(_xi_mid, l); }

    /* Tr down to F3, as a value in {0,1,2} */
    int trace_to_prime(const FqElement& a) const;

    /*
     * The unique eta in {-1,0,1} with x = eta*xi + (t^3 - t) for some t in F_q
     * (Artin-Schreier decomposition of F_q along xi). Equals -Tr_{F_q/F3}(x).
     */
    int eta(const FqElement& x_mid) const;

    /*
     * All solutions of  sum_i terms[i].first * X^(3^terms[i].second) = rhs
     * in the level of rhs. The left side is F3-linear, so the solution set is
     * empty or a coset of the kernel; both are returned exactly.
     */
    SolutionSet solve_linearized(const std::vector<std::pair<FqElement, int>>& terms,
                                 const FqElement& rhs) const;

    /* shared engine: solutions of m * x = rhs on coefficient vectors */
    SolutionSet solve_f3_linear(Level l, const F3Mat& m, const FqElement& rhs) const;

    FqElement random_element(Level l, SplitMix64& rng) const;

    /* throws std::invalid_argument naming `who` if a is not at level l */
    void check_level(const FqElement& a, Level l, const char* who) const;

  private:
    int _n;
    std::int64_t _theta, _q;
    std::array<int, 3> _deg;
    std::array<std::vector<F3>, 3> _mod;
    std::array<std::vector<std::vector<F3>>, 3> _redux;  // x^(deg+j) mod f
    std::array<F3Mat, 3> _frob;                          // cube map per level
    F3Mat _embed_mid;                                    // columns: root^i in top coords
    FqElement _alpha0, _xi_mid;

    FqElement reduce_product(Level l, const std::vector<unsigned>& prod) const;
};

}  // namespace ree2g2
