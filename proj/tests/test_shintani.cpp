#include "ree2g2/shintani.hpp"

#include "doctest.h"

using namespace ree2g2;

namespace {

const Cyclotomic I = Cyclotomic::imag_unit();
const Cyclotomic S3 = Cyclotomic::sqrt3();
const Cyclotomic HALF = Cyclotomic::rational(BigRat(1, 2));

Cyclotomic k6() { return S3 * Cyclotomic::rational(BigRat(1, 6)); }

}  // namespace

TEST_CASE("builtin data shapes and printed constants") {
    const BuiltinData& d = builtin_data();

    // label name round trips
    for (UniCharLabel v : all_uni_labels()) CHECK(uni_from_name(uni_name(v)) == v);
    for (ExtCharLabel c : all_ext_labels()) CHECK(ext_from_name(ext_name(c)) == c);
    CHECK_THROWS_AS(uni_from_name("xi2"), std::invalid_argument);
    CHECK_THROWS_AS(ext_from_name("theta3"), std::invalid_argument);

    // spot entries of the matrix: (sqrt3/6) * 1 and (sqrt3/6) * sqrt3 = 1/2
    CHECK(d.fourier.m[0][0] == k6());
    CHECK(d.fourier.m[1][0] == HALF);
    CHECK(d.fourier.m[1][1] == -HALF);
    CHECK(d.fourier.m[2][5] == k6() * Cyclotomic::integer(-2));

    // descent coefficients as printed
    CHECK(d.sh.at(ExtCharLabel::theta1)[UniCharLabel::xi9] == k6() * (S3 - I));
    CHECK(d.sh.at(ExtCharLabel::theta1)[UniCharLabel::xi10] == k6() * (S3 + I));
    CHECK(d.sh.at(ExtCharLabel::theta2)[UniCharLabel::xi5] == HALF * (-I));
    CHECK(d.sh.at(ExtCharLabel::theta2).sign_ambiguous);
    CHECK(d.sh.at(ExtCharLabel::theta5)[UniCharLabel::xi3] == Cyclotomic::one());
    CHECK(d.sh.at(ExtCharLabel::theta10)[UniCharLabel::xi10] == k6() * (-(I + S3)));
    CHECK(d.sh.at(ExtCharLabel::theta12_p)[UniCharLabel::xi7].is_zero());
    CHECK(d.sh.at(ExtCharLabel::theta12_m)[UniCharLabel::xi10] == k6() * (S3 - I));
    for (ExtCharLabel c : all_ext_labels())
        if (c != ExtCharLabel::theta2) CHECK(!d.sh.at(c).sign_ambiguous);

    // principal series decomposition: multiplicities square-sum to |W| = 12
    int sum = 0;
    for (const auto& [name, mult] : d.hc_decomposition) {
        (void)name;
        sum += mult * mult;
    }
    CHECK(sum == 12);
    CHECK(d.hc_decomposition.size() == 6);
    CHECK(!d.extension_conventions.empty());
}

TEST_CASE("fourier orthogonality") {
    const BuiltinData& d = builtin_data();
    CHECK(fourier_orthogonality_check(d.fourier));

    // row 1 self-product expands to (3/36) * 12 = 1
    Cyclotomic dot = Cyclotomic::zero();
    for (int j = 0; j < 6; ++j) dot = dot + square(d.fourier.m[0][static_cast<std::size_t>(j)]);
    CHECK(dot == Cyclotomic::one());

    // row 1 . row 3 = (3/36)(0 + 0 + 2 + 2 + 0 - 4) = 0
    dot = Cyclotomic::zero();
    for (int j = 0; j < 6; ++j)
        dot = dot + d.fourier.m[0][static_cast<std::size_t>(j)] * d.fourier.m[2][static_cast<std::size_t>(j)];
    CHECK(dot.is_zero());

    FourierMatrix bad = d.fourier;
    bad.m[0][0] = bad.m[0][0] + Cyclotomic::one();
    CHECK(!fourier_orthogonality_check(bad));

    FourierMatrix imag = d.fourier;
    imag.m[3][3] = I;
    CHECK(!fourier_orthogonality_check(imag));
}

TEST_CASE("gram orthonormality of the descent vectors") {
    const BuiltinData& d = builtin_data();
    CHECK(sh_gram_check(d.sh));

    const DecompVector& t1 = d.sh.at(ExtCharLabel::theta1);
    CHECK(hermitian(t1, t1) == Cyclotomic::one());
    CHECK(hermitian(d.sh.at(ExtCharLabel::theta12_p), t1).is_zero());
    CHECK(hermitian(d.sh.at(ExtCharLabel::one), d.sh.at(ExtCharLabel::theta5)).is_zero());
    CHECK(hermitian(d.sh.at(ExtCharLabel::theta2), d.sh.at(ExtCharLabel::theta11)).is_zero());

    // flipping the ambiguous vector leaves the check satisfied
    auto flipped = d.sh;
    flipped[ExtCharLabel::theta2] = negated(flipped[ExtCharLabel::theta2]);
    flipped[ExtCharLabel::theta2].sign_ambiguous = true;
    CHECK(sh_gram_check(flipped));

    auto bad = d.sh;
    bad[ExtCharLabel::theta11][UniCharLabel::xi5] = Cyclotomic::one();
    CHECK(!sh_gram_check(bad));
}

TEST_CASE("almost character rows") {
    const BuiltinData& d = builtin_data();
    CHECK(almost_character_row_check(d.fourier, d.almost));

    // R_{2_2~} printed as (1/2)(1,-1,1,-1) equals the sqrt3/6-scaled row 2
    CHECK(d.almost.at("2_2")[UniCharLabel::xi5] == HALF);
    CHECK(d.almost.at("2_2")[UniCharLabel::xi5] == d.fourier.m[1][0]);
    CHECK(d.almost.at("1")[UniCharLabel::xi1] == Cyclotomic::one());
    CHECK(d.almost.at("sgn")[UniCharLabel::xi3] == Cyclotomic::one());

    FourierMatrix swapped = d.fourier;
    std::swap(swapped.m[0], swapped.m[1]);
    CHECK(!almost_character_row_check(swapped, d.almost));
}

TEST_CASE("root extraction") {
    const BuiltinData& d = builtin_data();
    RootExtraction got = extract_roots(d.sh, d.almost);
    CHECK(got.sign == -1);
    for (UniCharLabel v : all_uni_labels()) {
        INFO(uni_name(v));
        CHECK(got.roots[static_cast<std::size_t>(v)] == d.expected_roots[static_cast<std::size_t>(v)]);
        CHECK(root_of_unity_index(got.roots[static_cast<std::size_t>(v)]) >= 0);
    }
    CHECK(got.roots[static_cast<std::size_t>(UniCharLabel::xi9)] == (-S3 + I) * HALF);
    CHECK(got.roots[static_cast<std::size_t>(UniCharLabel::xi10)] ==
          conjugate(got.roots[static_cast<std::size_t>(UniCharLabel::xi9)]));

    // sign covariance: negating Sh(theta1~) flips the sign, not the roots
    auto neg = d.sh;
    neg[ExtCharLabel::theta1] = negated(neg[ExtCharLabel::theta1]);
    RootExtraction flipped = extract_roots(neg, d.almost);
    CHECK(flipped.sign == 1);
    CHECK(flipped.roots == got.roots);

    // unsatisfiable prior
    LusztigPriors wrong = lusztig_priors();
    wrong.omega9_pair = {I, -I};
    CHECK_THROWS_AS(extract_roots(d.sh, d.almost, wrong), std::domain_error);

    // corrupted descent coefficient
    auto bad = d.sh;
    bad[ExtCharLabel::theta1][UniCharLabel::xi9] = Cyclotomic::one();
    CHECK_THROWS_AS(extract_roots(bad, d.almost), std::domain_error);
}

TEST_CASE("digne-michel verification") {
    const BuiltinData& d = builtin_data();
    auto sols = digne_michel_verify(d.sh, d.fourier, d.expected_roots, d.lambda);
    REQUIRE(sols.size() == 6);

    const Cyclotomic u12p = (Cyclotomic::integer(-1) + S3 * I) * HALF;
    const Cyclotomic u12m = (Cyclotomic::integer(1) + S3 * I) * HALF;

    CHECK(sols.at(ExtCharLabel::theta1).u == Cyclotomic::one());
    CHECK(sols.at(ExtCharLabel::theta1).row == 1);
    CHECK(sols.at(ExtCharLabel::theta1).sign == -1);
    CHECK(sols.at(ExtCharLabel::theta1).sign_other == -1);

    CHECK(sols.at(ExtCharLabel::theta2).u == Cyclotomic::one());
    CHECK(sols.at(ExtCharLabel::theta2).row == 2);
    CHECK(sols.at(ExtCharLabel::theta2).sign == 1);
    CHECK(sols.at(ExtCharLabel::theta2).sign_other == -1);  // both resolutions verified

    CHECK(sols.at(ExtCharLabel::theta10).u == Cyclotomic::one());
    CHECK(sols.at(ExtCharLabel::theta10).row == 5);
    CHECK(sols.at(ExtCharLabel::theta10).sign == -1);

    CHECK(sols.at(ExtCharLabel::theta11).u == I);
    CHECK(sols.at(ExtCharLabel::theta11).row == 6);
    CHECK(sols.at(ExtCharLabel::theta11).sign == -1);

    CHECK(sols.at(ExtCharLabel::theta12_p).u == u12p);
    CHECK(sols.at(ExtCharLabel::theta12_p).row == 4);
    CHECK(sols.at(ExtCharLabel::theta12_p).sign == -1);

    CHECK(sols.at(ExtCharLabel::theta12_m).u == u12m);
    CHECK(sols.at(ExtCharLabel::theta12_m).row == 3);
    CHECK(sols.at(ExtCharLabel::theta12_m).sign == 1);

    for (ExtCharLabel chi : dm_labels()) {
        const DMSolution& s = sols.at(chi);
        CHECK(square(s.u) == s.lambda);
        CHECK(s.lambda == d.lambda.at(chi));
        CHECK(root_of_unity_index(s.u) >= 0);
        CHECK(root_of_unity_index(s.u) < 6);  // canonical argument range
    }

    // a wrong root table (omega9 and omega10 swapped) breaks the search
    RootTable swapped = d.expected_roots;
    std::swap(swapped[static_cast<std::size_t>(UniCharLabel::xi9)],
              swapped[static_cast<std::size_t>(UniCharLabel::xi10)]);
    CHECK_THROWS_AS(digne_michel_verify(d.sh, d.fourier, swapped, d.lambda), std::domain_error);

    // a wrong eigenvalue table breaks the u^2 = lambda assertion
    auto badlambda = d.lambda;
    badlambda[ExtCharLabel::theta11] = Cyclotomic::one();
    CHECK_THROWS_AS(digne_michel_verify(d.sh, d.fourier, d.expected_roots, badlambda),
                    std::domain_error);
}

namespace {

FourierMatrix apply_columns(const FourierMatrix& M, const std::array<int, 6>& sigma) {
    FourierMatrix out;
    for (int r = 0; r < 6; ++r)
        for (int j = 0; j < 6; ++j)
            out.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                M.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])];
    return out;
}

}  // namespace

TEST_CASE("column order resolution") {
    const BuiltinData& d = builtin_data();

    // the validation criterion has exactly one nontrivial symmetry:
    // (xi5 xi7)(xi6 xi8)(xi9 xi10) swaps rows 3,4 and negates rows 5,6
    const std::array<int, 6> twin_perm{2, 3, 0, 1, 5, 4};
    FourierMatrix twin = apply_columns(d.fourier, twin_perm);
    for (int j = 0; j < 6; ++j) {
        CHECK(twin.m[2][static_cast<std::size_t>(j)] == d.fourier.m[3][static_cast<std::size_t>(j)]);
        CHECK(twin.m[3][static_cast<std::size_t>(j)] == d.fourier.m[2][static_cast<std::size_t>(j)]);
        CHECK(twin.m[4][static_cast<std::size_t>(j)] == -d.fourier.m[4][static_cast<std::size_t>(j)]);
        CHECK(twin.m[5][static_cast<std::size_t>(j)] == -d.fourier.m[5][static_cast<std::size_t>(j)]);
        CHECK(twin.m[0][static_cast<std::size_t>(j)] == d.fourier.m[0][static_cast<std::size_t>(j)]);
        CHECK(twin.m[1][static_cast<std::size_t>(j)] == d.fourier.m[1][static_cast<std::size_t>(j)]);
    }

    // the printed order validates and is preferred
    ColumnResolution same = resolve_column_order(d.fourier, d);
    CHECK(same.matrix == d.fourier);
    CHECK(same.permutation == std::array<int, 6>{0, 1, 2, 3, 4, 5});
    CHECK(same.valid_orders == 2);

    // scramble the columns: the search finds the two equivalent orders and
    // lands deterministically on one of them
    FourierMatrix scrambled = apply_columns(d.fourier, {2, 0, 3, 1, 5, 4});
    CHECK(!almost_character_row_check(scrambled, d.almost));
    ColumnResolution rec = resolve_column_order(scrambled, d);
    CHECK(rec.valid_orders == 2);
    CHECK((rec.matrix == d.fourier || rec.matrix == twin));
    CHECK(almost_character_row_check(rec.matrix, d.almost));
    CHECK(fourier_orthogonality_check(rec.matrix));
    ColumnResolution rec2 = resolve_column_order(scrambled, d);
    CHECK(rec2.matrix == rec.matrix);
    CHECK(rec2.permutation == rec.permutation);

    // a perturbed matrix validates under no column order
    FourierMatrix bad = d.fourier;
    bad.m[4][4] = bad.m[4][4] + Cyclotomic::one();
    CHECK_THROWS_AS(resolve_column_order(bad, d), std::domain_error);
}

TEST_CASE("override merging") {
    const BuiltinData& d = builtin_data();

    // replacing data with itself is the identity
    nlohmann::json same;
    same["lambda"]["theta11"] = cyclo_to_json(d.lambda.at(ExtCharLabel::theta11));
    BuiltinData merged = apply_overrides(d, same);
    CHECK(merged.lambda.at(ExtCharLabel::theta11) == d.lambda.at(ExtCharLabel::theta11));
    CHECK(merged.fourier == d.fourier);

    // perturbing one matrix entry is visible to the orthogonality check
    nlohmann::json perturb;
    perturb["fourier"] = nlohmann::json::array();
    for (int r = 0; r < 6; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 6; ++j)
            row.push_back(cyclo_to_json(d.fourier.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]));
        perturb["fourier"].push_back(row);
    }
    perturb["fourier"][0][0] = cyclo_to_json(Cyclotomic::one());
    BuiltinData broken = apply_overrides(d, perturb);
    CHECK(!fourier_orthogonality_check(broken.fourier));

    // vector override with the ambiguity flag
    nlohmann::json vec;
    vec["sh_vectors"]["theta2"]["ambiguous"] = true;
    vec["sh_vectors"]["theta2"]["xi5"] = cyclo_to_json(HALF * (-I));
    vec["sh_vectors"]["theta2"]["xi6"] = cyclo_to_json(HALF * I);
    vec["sh_vectors"]["theta2"]["xi7"] = cyclo_to_json(HALF * I);
    vec["sh_vectors"]["theta2"]["xi8"] = cyclo_to_json(HALF * (-I));
    BuiltinData revec = apply_overrides(d, vec);
    CHECK(revec.sh.at(ExtCharLabel::theta2) == d.sh.at(ExtCharLabel::theta2));

    CHECK_THROWS_AS(apply_overrides(d, nlohmann::json{{"mystery", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(apply_overrides(d, nlohmann::json::parse(R"({"lambda":{"theta9":[[0,1],[0,1],[0,1],[0,1]]}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_overrides(d, nlohmann::json::parse("[1,2]")), std::invalid_argument);
}
