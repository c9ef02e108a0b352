#pragma once

/*
 * The unipotent subgroup U of G2 in characteristic 3, as a normal-form group.
 *
 * Elements are stored by their coordinates in the fixed normal order
 *   (a, b, a+b, 3a+b, 2a+b, 3a+2b),
 * which is unique (Chevalley decomposition). Multiplication collects words
 * using the three nontrivial commutation rules
 *   x_a(t)x_b(u)     = x_b(u)x_a(t) x_{a+b}(-tu) x_{3a+b}(t^3 u) x_{2a+b}(-t^2 u) x_{3a+2b}(t^3 u^2)
 *   x_a(t)x_{a+b}(u) = x_{a+b}(u)x_a(t) x_{2a+b}(tu)
 *   x_b(t)x_{3a+b}(u)= x_{3a+b}(u)x_b(t) x_{3a+2b}(tu)
 * every other generator pair commutes (all remaining structure constants are
 * multiples of 3). The subgroup generated by {a+b, 3a+b, 2a+b, 3a+2b} is
 * abelian and {2a+b, 3a+2b} spans the center.
 *
 * Endomorphisms are words alpha^i . F_k where F_k raises every coordinate to
 * the 3^k power and alpha exchanges each root r with rho(r) (a<->b,
 * a+b<->3a+b, 2a+b<->3a+2b), cubing the parameter on short roots. They
 * commute and alpha^2 = F_1, so {alpha_pow in {0,1}, frob_pow} is a canonical
 * form. The Ree twist is F = alpha . F_n with F^2 = F_{2n+1}.
 *
 * lang_solve inverts the Lang map x -> x^{-1} e(x) over F_{q^3} by
 * block-triangular elimination along the rho-orbit pairs: each pair yields
 * one semilinear kernel equation dispatched to FieldTower::solve_linearized,
 * and the remaining coordinate is obtained by back-substitution. Among the
 * solution coset the lexicographically smallest element is returned.
 */

#include <array>
#include <cstdint>
#include <vector>

#include "ree2g2/finitefield.hpp"
#include "ree2g2/rng.hpp"

namespace ree2g2 {

enum class Root : std::uint8_t { a = 0, b = 1, ab = 2, a3b = 3, a2b = 4, a3b2 = 5 };

constexpr std::array<Root, 6> all_roots() {
    return {Root::a, Root::b, Root::ab, Root::a3b, Root::a2b, Root::a3b2};
}

constexpr bool root_is_short(Root r) {
    return r == Root::a || r == Root::ab || r == Root::a2b;
}

constexpr Root rho(Root r) {
    switch (r) {
        case Root::a: return Root::b;
        case Root::b: return Root::a;
        case Root::ab: return Root::a3b;
        case Root::a3b: return Root::ab;
        case Root::a2b: return Root::a3b2;
        case Root::a3b2: return Root::a2b;
    }
    return Root::a;  // unreachable
}

const char* root_name(Root r);

struct GroupEndo {
    int alpha_pow{0};
    int frob_pow{0};

    static GroupEndo frobenius(int k) { return {0, k}; }
    static GroupEndo alpha() { return {1, 0}; }
    static GroupEndo ree_twist(int n) { return {1, n}; }  // F = alpha . F_n

    /* canonical form: alpha_pow in {0,1} via alpha^2 = F_1 */
    GroupEndo normalized() const { return {alpha_pow % 2, frob_pow + alpha_pow / 2}; }
    /* all generators commute, so composition just adds with carry */
    GroupEndo compose(const GroupEndo& other) const {
        return GroupEndo{alpha_pow + other.alpha_pow, frob_pow + other.frob_pow}.normalized();
    }
    bool operator==(const GroupEndo&) const = default;
};

struct UnipotentElement {
    Level level{Level::fq};
    std::array<FqElement, 6> t{};

    const FqElement& coord(Root r) const { return t[static_cast<std::size_t>(r)]; }
    FqElement& coord(Root r) { return t[static_cast<std::size_t>(r)]; }
    bool is_identity() const {
        for (const auto& c : t)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const UnipotentElement&) const = default;
};

class UnipotentGroup {
  public:
    UnipotentGroup(const FieldTower& tower, Level level);

    const FieldTower& tower() const { return *_K; }
    Level level() const { return _level; }

    UnipotentElement identity() const;
    UnipotentElement root_elt(Root r, const FqElement& t) const;
    UnipotentElement from_coords(const std::array<FqElement, 6>& coords) const;

    UnipotentElement multiply(const UnipotentElement& u, const UnipotentElement& v) const;
    UnipotentElement inverse(const UnipotentElement& u) const;
    /* g u g^{-1} */
    UnipotentElement conjugate(const UnipotentElement& g, const UnipotentElement& u) const;

    UnipotentElement apply_endo(const GroupEndo& e, const UnipotentElement& u) const;
    /* alpha with free signs on the four non-simple root images (sign self-test) */
    UnipotentElement apply_alpha_signed(const UnipotentElement& u, const std::array<int, 4>& signs) const;

    /* x^{-1} e(x) */
    UnipotentElement lang_value(const UnipotentElement& x, const GroupEndo& e) const;
    /* lexicographically smallest x with lang_value(x, e) = target; requires the
       top field level; throws std::domain_error if no solution exists there */
    UnipotentElement lang_solve(const UnipotentElement& target, const GroupEndo& e) const;
    /* like lang_solve but only the four non-central coordinates of the target are
       enforced; the central block of x is left at zero.  An exact solution exists
       over the top field iff the fixed-point image L_{F^2}(x^{-1}) has order <= 3;
       for targets whose image is regular (order 9) the exact witness lives in a
       cubic extension, and this mod-center solve is the strongest statement
       available at the top level. */
    UnipotentElement lang_solve_mod_center(const UnipotentElement& target,
                                           const GroupEndo& e) const;
    /* uniformly random element of the same solution coset */
    UnipotentElement sample_lang_solution(const UnipotentElement& target, const GroupEndo& e,
                                          SplitMix64& rng) const;

    UnipotentElement random_element(SplitMix64& rng) const;

    /* t_{a+b} + t_{3a+b}; requires t_a = t_b = 1 */
    FqElement p_invariant(const UnipotentElement& u) const;

    /* named elements of the class ledger */
    UnipotentElement reg_base() const;                       // x_a(1)x_b(1)x_{a+b}(1)x_{2a+b}(1)
    UnipotentElement beta_elt(const FqElement& u) const;     // x_{a+b}(u^theta)x_{3a+b}(u)
    UnipotentElement x_class_rep() const;                    // x_{2a+b}(1)x_{3a+2b}(1)

  private:
    using Word = std::vector<std::pair<Root, FqElement>>;

    UnipotentElement collect(Word word) const;
    UnipotentElement lang_solve_impl(const UnipotentElement& target, const GroupEndo& e,
                                     SplitMix64* rng, bool mod_center) const;

    const FieldTower* _K;
    Level _level;
};

enum class UnipClassLabel : std::uint8_t { A51, A52, A53, Y1, Y2, Y3, T, Tinv, X };
const char* unip_class_name(UnipClassLabel c);

/* Lemma: u regular unipotent with t_a = t_b = 1 lies in A51/A52/A53 according
   to eta(p(u)) = 0 / 1 / -1. */
UnipClassLabel classify_regular_unipotent(const FieldTower& K, const UnipotentElement& u);

struct YRepresentatives {
    UnipotentElement Y1, Y2, Y3;
    int eta1;  // eta of 1 in F_q; determines the branch
};

/* branch of the Y_i <-> A_5i assignment selected by n mod 3 */
YRepresentatives y_representatives(const FieldTower& K, Level level);

/* Solution (x0, x0^{3theta}-1, t0, x0^{3theta+1}+t0^theta+1-alpha) of the system
     y^theta - x = 1
     x^{3theta} - y = 1
     t^theta - z + 1 + x^{3theta+1} = alpha
     z^{3theta} - t - 1 - x^{3theta+3} = beta
   with all four residuals verified; all arguments at the top field level. */
std::array<FqElement, 4> solve_system_S(const FieldTower& K, const FqElement& alpha,
                                        const FqElement& beta, const FqElement& x0);

/* Norm correspondence on the unipotent-supported labels: for the outer class
   [u.F] with u the representative of `outer`, solves L_F(x) = u, forms
   g = L_{F^2}(x^{-1}), checks g is F-fixed, and classifies g in G^F.
   For the T/Tinv/X labels the solve and the F-fixedness check are exact; the
   Y labels are handled mod center (the class of a regular g depends only on
   its non-central coordinates, which is what makes this sufficient), with the
   F-fixedness check applied to those coordinates. */
UnipClassLabel shintani_inverse_image(const FieldTower& K, UnipClassLabel outer);

struct AlphaSignScan {
    int passing_count;
    std::array<int, 4> signs;  // on (a+b, 3a+b, 2a+b, 3a+2b) images
};

/* Search all 16 sign tuples for the non-simple images of alpha, keeping those
   that make alpha a homomorphism with alpha^2 = F_1 and reproduce the Lang-map
   coordinate formulas; exactly one tuple (all +1) must survive. */
AlphaSignScan alpha_sign_scan(const FieldTower& K);

}  // namespace ree2g2
