#pragma once

/* Character-level data and exact verifications for the Ree groups of type
 * G_2: the Geck-Malle Fourier matrix, the Shintani-descent decomposition
 * vectors of the extended principal-series characters on the basis of the
 * eight unipotent characters xi_k (k in I = {1,3,5,6,7,8,9,10}), the almost
 * characters, the Frobenius root-of-unity table, and the Asai eigenvalue
 * table.
 *
 * Two exact verifications run on this data:
 *  - extract_roots recovers the full root table from Sh(theta1~) and the
 *    almost character R_{2_1~} via the descent relation
 *        Sh(chi_rho~) = sum_V <R_rho~, V> omega_V V,
 *    with the global sign fixed by the prior constraint
 *    omega_{xi9} in {(+-i - sqrt3)/2}.
 *  - digne_michel_verify searches, for each of the six extensions, the
 *    unique (u in mu_12, row r, sign eps) with
 *        u * Sh(chi~) = eps * (M_{r,V} * omega_V)_V,
 *    exactly; uniqueness holds up to the simultaneous flip
 *    (u, eps) -> (-u, -eps), and u^2 equals the Asai eigenvalue lambda.
 *
 * The column order of the printed matrix (xi5..xi10) is never stated by the
 * source; resolve_column_order validates it (rows 1-2 must equal the almost
 * characters and the Digne-Michel search must succeed) and, when validation
 * fails, searches all 720 column permutations for the unique valid order.
 */

#include "ree2g2/cyclo.hpp"

#include "json.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ree2g2 {

enum class UniCharLabel : std::uint8_t { xi1, xi3, xi5, xi6, xi7, xi8, xi9, xi10 };
enum class ExtCharLabel : std::uint8_t {
    one,  // the trivial extension 1~
    theta1,
    theta2,
    theta5,
    theta10,
    theta11,
    theta12_p,  // theta12[1]
    theta12_m,  // theta12[-1]
};

const char* uni_name(UniCharLabel v);
const char* ext_name(ExtCharLabel c);
UniCharLabel uni_from_name(const std::string& s);  // throws std::invalid_argument
ExtCharLabel ext_from_name(const std::string& s);

constexpr std::array<UniCharLabel, 8> all_uni_labels() {
    return {UniCharLabel::xi1, UniCharLabel::xi3, UniCharLabel::xi5,  UniCharLabel::xi6,
            UniCharLabel::xi7, UniCharLabel::xi8, UniCharLabel::xi9, UniCharLabel::xi10};
}
constexpr std::array<ExtCharLabel, 8> all_ext_labels() {
    return {ExtCharLabel::one,     ExtCharLabel::theta1,  ExtCharLabel::theta2,
            ExtCharLabel::theta5,  ExtCharLabel::theta10, ExtCharLabel::theta11,
            ExtCharLabel::theta12_p, ExtCharLabel::theta12_m};
}

/* The six extensions whose descent lands in the 6-dimensional xi5..xi10 span. */
constexpr std::array<ExtCharLabel, 6> dm_labels() {
    return {ExtCharLabel::theta1,  ExtCharLabel::theta2,    ExtCharLabel::theta10,
            ExtCharLabel::theta11, ExtCharLabel::theta12_p, ExtCharLabel::theta12_m};
}

/* Exact class-function decomposition on the basis (xi_k, k in I). */
struct DecompVector {
    std::array<Cyclotomic, 8> coeff{};
    bool sign_ambiguous = false;  // the source prints a global +-

    Cyclotomic& operator[](UniCharLabel v) { return coeff[static_cast<std::size_t>(v)]; }
    const Cyclotomic& operator[](UniCharLabel v) const { return coeff[static_cast<std::size_t>(v)]; }
    bool operator==(const DecompVector&) const = default;
};

DecompVector negated(const DecompVector& v);
/* Hermitian product sum_V a_V conj(b_V). */
Cyclotomic hermitian(const DecompVector& a, const DecompVector& b);

/* 6x6 exact matrix; column j carries the unipotent character column_label(j). */
struct FourierMatrix {
    std::array<std::array<Cyclotomic, 6>, 6> m{};

    static UniCharLabel column_label(int j) { return all_uni_labels()[static_cast<std::size_t>(j) + 2]; }
    bool operator==(const FourierMatrix&) const = default;
};

using RootTable = std::array<Cyclotomic, 8>;  // indexed like DecompVector::coeff

struct BuiltinData {
    FourierMatrix fourier;
    RootTable expected_roots;
    std::map<ExtCharLabel, Cyclotomic> lambda;   // Asai eigenvalue table (six entries)
    std::map<ExtCharLabel, DecompVector> sh;     // Shintani descents, all eight labels
    std::map<std::string, DecompVector> almost;  // keys "1", "sgn", "2_1", "2_2"
    std::vector<std::pair<std::string, int>> hc_decomposition;  // constituent, multiplicity
    std::vector<std::string> extension_conventions;  // normalization metadata, documentation
};

const BuiltinData& builtin_data();

/* strict override merge: accepts a JSON object with any of the keys
 * "fourier", "sh_vectors", "almost", "expected_roots", "lambda"; values use
 * the cyclotomic literal format [[p,q],[p,q],[p,q],[p,q]]. */
BuiltinData apply_overrides(BuiltinData base, const nlohmann::json& ov);

/* M * M^T = identity, exactly (the matrix is real). */
bool fourier_orthogonality_check(const FourierMatrix& M);
/* The eight descent vectors are Hermitian-orthonormal, for both resolutions
 * of any +- ambiguity. */
bool sh_gram_check(const std::map<ExtCharLabel, DecompVector>& sh);
/* Rows 1 and 2 of M are the coefficient vectors of R_{2_1~} and R_{2_2~};
 * the trivial almost character is the basis vector xi1 (handled outside M)
 * and R_{sgn~} = xi3. */
bool almost_character_row_check(const FourierMatrix& M,
                                const std::map<std::string, DecompVector>& almost);

struct LusztigPriors {
    std::array<Cyclotomic, 2> omega9_pair;   // {(i - sqrt3)/2, (-i - sqrt3)/2}
    std::array<Cyclotomic, 2> omega57_pair;  // {i, -i} as a set for {omega5, omega7}
    std::array<Cyclotomic, 2> omega68_pair;  // {i, -i} as a set for {omega6, omega8}
};
LusztigPriors lusztig_priors();

struct RootExtraction {
    RootTable roots;
    int sign;  // eps with chi_{2_1~} = eps * theta1~
};

/* Recovers the root table from Sh(theta1~) / R_{2_1~}; the global sign is
 * the unique one satisfying the omega9 prior.  Validates that every root is
 * a 12th root of unity and that the remaining priors hold.  Throws
 * std::domain_error when data and priors are inconsistent. */
RootExtraction extract_roots(const std::map<ExtCharLabel, DecompVector>& sh,
                             const std::map<std::string, DecompVector>& almost,
                             const LusztigPriors& priors);
RootExtraction extract_roots(const std::map<ExtCharLabel, DecompVector>& sh,
                             const std::map<std::string, DecompVector>& almost);

struct DMSolution {
    Cyclotomic u;    // canonical: argument in [0, pi)
    int row;         // 1..6
    int sign;        // eps of the canonical solution for the stored vector
    int sign_other;  // eps for the flipped +- resolution; equals sign when unambiguous
    Cyclotomic lambda;  // table value; u^2 == lambda is asserted
};

/* For each of the six extensions, searches all (u in mu_12, row, eps) and
 * asserts the solution set is exactly one flip pair {(u,eps), (-u,-eps)}
 * for every resolution of the data ambiguity, with u and row agreeing across
 * resolutions and u^2 = lambda.  Throws std::domain_error otherwise. */
std::map<ExtCharLabel, DMSolution> digne_michel_verify(
    const std::map<ExtCharLabel, DecompVector>& sh, const FourierMatrix& M,
    const RootTable& omegas, const std::map<ExtCharLabel, Cyclotomic>& lambda);

struct ColumnResolution {
    FourierMatrix matrix;
    std::array<int, 6> permutation;  // applied to the input columns
    int valid_orders;                // how many of the 720 orders validate
};

/* Scans all 720 column orders of M and keeps those validated by the almost
 * characters and the Digne-Michel search.  The criterion has an intrinsic
 * two-fold symmetry: permuting the columns by
 * (xi5 xi7)(xi6 xi8)(xi9 xi10) reproduces the matrix with rows 3 and 4
 * swapped and rows 5 and 6 negated, which the conjecture (rows defined up to
 * sign) cannot distinguish.  The input order is therefore preferred when it
 * validates, and the lexicographically least valid permutation is chosen
 * otherwise; both choices are deterministic.  Throws std::domain_error when
 * no order validates. */
ColumnResolution resolve_column_order(const FourierMatrix& M, const BuiltinData& data);

}  // namespace ree2g2
