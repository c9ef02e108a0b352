#include "doctest.h"
#include "ree2g2/finitefield.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace ree2g2;

namespace {

/* all q elements of the middle field, in lexicographic order */
std::vector<FqElement> middle_field(const FieldTower& K) {
    int d = K.degree(Level::fq);
    std::vector<FqElement> out;
    std::vector<int> digits(static_cast<std::size_t>(d), 0);
    while (true) {
        out.push_back(K.from_coeffs(Level::fq, digits));
        int i = d - 1;
        while (i >= 0 && digits[static_cast<std::size_t>(i)] == 2) digits[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++digits[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::set<std::array<uint8_t, MAX_FIELD_DEG>> image_of_t3_minus_t(const FieldTower& K) {
    std::set<std::array<uint8_t, MAX_FIELD_DEG>> img;
    for (const auto& t : middle_field(K)) img.insert(K.sub(K.frobenius_pow(t, 1), t).c);
    return img;
}

}  // namespace

TEST_CASE("tower construction is deterministic and uses the frozen moduli") {
    FieldTower a(1), b(1);
    CHECK(a.modulus(Level::fq) == b.modulus(Level::fq));
    CHECK(a.modulus(Level::fq3) == b.modulus(Level::fq3));
    CHECK(a.alpha0() == b.alpha0());
    CHECK(a.xi() == b.xi());
    // lex-smallest monic irreducible cubic over F3 is x^3 + 2x^2 + 1
    CHECK(a.modulus(Level::fq) == std::vector<F3>{1, 0, 2, 1});
    CHECK(a.degree(Level::fq) == 3);
    CHECK(a.degree(Level::fq3) == 9);
    CHECK(a.q() == 27);
    CHECK(a.theta() == 3);
}

TEST_CASE("basic arithmetic laws in F27") {
    FieldTower K(1);
    SplitMix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = K.random_element(Level::fq, rng);
        auto b = K.random_element(Level::fq, rng);
        auto c = K.random_element(Level::fq, rng);
        CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
        CHECK(K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)));
        CHECK(K.add(a, K.neg(a)).is_zero());
        if (!a.is_zero()) {
            CHECK(K.mul(a, K.inv(a)) == K.one(Level::fq));
            CHECK(K.pow(a, -1) == K.inv(a));
        }
    }
    CHECK(K.pow(K.gen(Level::fq), 26) == K.one(Level::fq));  // multiplicative order divides 26
}

TEST_CASE("frobenius is cubing and has the right order") {
    FieldTower K(1);
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = K.random_element(Level::fq3, rng);
        auto b = K.random_element(Level::fq3, rng);
        CHECK(K.frobenius_pow(a, 1) == K.mul(a, K.mul(a, a)));
        CHECK(K.frobenius_pow(a, 9) == a);
        CHECK(K.frobenius_pow(K.add(a, b), 1) == K.add(K.frobenius_pow(a, 1), K.frobenius_pow(b, 1)));
    }
}

TEST_CASE("embedding is a ring homomorphism with a left inverse") {
    FieldTower K(1);
    SplitMix64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = K.random_element(Level::fq, rng);
        auto b = K.random_element(Level::fq, rng);
        auto ea = K.embed(a, Level::fq3);
        auto eb = K.embed(b, Level::fq3);
        CHECK(K.embed(K.add(a, b), Level::fq3) == K.add(ea, eb));
        CHECK(K.embed(K.mul(a, b), Level::fq3) == K.mul(ea, eb));
        CHECK(K.in_subfield(ea, Level::fq));
        CHECK(K.project(ea, Level::fq) == a);
    }
    CHECK(K.embed(K.one(Level::fq), Level::fq3) == K.one(Level::fq3));
    CHECK_FALSE(K.in_subfield(K.gen(Level::fq3), Level::fq));
    CHECK_THROWS_AS((void)K.project(K.gen(Level::fq3), Level::fq), std::domain_error);
}

TEST_CASE("alpha0 and xi satisfy their defining identities") {
    for (int n : {1, 2}) {
        FieldTower K(n);
        auto a0 = K.alpha0();
        // alpha0^q = alpha0 - 1, so alpha0 generates the degree-3 step of the tower
        CHECK(K.pow(a0, K.q()) == K.sub(a0, K.one(Level::fq3)));
        CHECK_FALSE(K.in_subfield(a0, Level::fq));
        auto xi_top = K.sub(K.frobenius_pow(a0, 1), a0);
        CHECK(K.in_subfield(xi_top, Level::fq));
        CHECK(K.project(xi_top, Level::fq) == K.xi());
        CHECK(K.trace_to_prime(K.xi()) == 2);  // trace -1
        CHECK(K.eta(K.xi()) == 1);
        auto xi_theta = K.frobenius_pow(K.xi(), K.n());
        CHECK(K.eta(xi_theta) == 1);
    }
}

TEST_CASE("alpha0 is the lex-smallest solution of its defining equation") {
    FieldTower K(1);
    auto one3 = K.one(Level::fq3);
    auto s = K.solve_linearized({{one3, K.degree(Level::fq)}, {K.neg(one3), 0}}, K.neg(one3));
    REQUIRE(s.solvable);
    CHECK(s.kernel_dim() == 3);
    CHECK(s.count() == 27);
    CHECK(s.lex_min() == K.alpha0());
    CHECK(s.contains(K.alpha0()));
    // the solution coset is alpha0 + F_q
    CHECK(s.contains(K.add(K.alpha0(), K.embed(K.one(Level::fq), Level::fq3))));
    CHECK_FALSE(s.contains(K.gen(Level::fq3)));
    for (const auto& x : s.all())
        CHECK(K.sub(K.pow(x, K.q()), x) == K.neg(one3));
}

TEST_CASE("frozen linearized systems over F27") {
    FieldTower K(1);
    auto one = K.one(Level::fq);

    // x^3 - x = 0: solutions are exactly the prime field
    auto s0 = K.solve_linearized({{one, 1}, {K.neg(one), 0}}, K.zero(Level::fq));
    REQUIRE(s0.solvable);
    CHECK(s0.count() == 3);
    auto all0 = s0.all();
    std::sort(all0.begin(), all0.end(), lex_less);
    CHECK(all0[0] == K.from_int(Level::fq, 0));
    CHECK(all0[1] == K.from_int(Level::fq, 1));
    CHECK(all0[2] == K.from_int(Level::fq, 2));

    // x^3 - x = xi has no solution (otherwise X^3 - X - xi would be reducible)
    CHECK(K.solve_linearized({{one, 1}, {K.neg(one), 0}}, K.xi()).empty());

    // x^3 - x = xi^3 - xi obviously has xi as a solution
    auto rhs = K.sub(K.frobenius_pow(K.xi(), 1), K.xi());
    auto s2 = K.solve_linearized({{one, 1}, {K.neg(one), 0}}, rhs);
    REQUIRE(s2.solvable);
    CHECK(s2.contains(K.xi()));
}

TEST_CASE("eta agrees with the additive coset decomposition, exhaustively at n=1") {
    FieldTower K(1);
    auto E = image_of_t3_minus_t(K);
    CHECK(E.size() == 9);  // kernel of t -> t^3 - t is F3, so the image has q/3 elements
    int counts[3] = {0, 0, 0};
    for (const auto& x : middle_field(K)) {
        int expected;
        if (E.count(x.c)) expected = 0;
        else if (E.count(K.sub(x, K.xi()).c)) expected = 1;
        else if (E.count(K.add(x, K.xi()).c)) expected = -1;
        else { FAIL("element not covered by the three cosets"); continue; }
        CHECK(K.eta(x) == expected);
        ++counts[(expected + 3) % 3];
    }
    CHECK(counts[0] == 9);
    CHECK(counts[1] == 9);
    CHECK(counts[2] == 9);
}

TEST_CASE("eta is additive as an F3-valued map") {
    FieldTower K(1);
    auto field = middle_field(K);
    for (const auto& x : field)
        for (const auto& y : field) {
            int lhs = (K.eta(K.add(x, y)) + 3) % 3;
            int rhs = ((K.eta(x) + K.eta(y)) % 3 + 3) % 3;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("eta coset oracle sampled at n=2") {
    FieldTower K(2);
    auto E = image_of_t3_minus_t(K);
    CHECK(E.size() == 81);
    SplitMix64 rng(2026);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = K.random_element(Level::fq, rng);
        int expected;
        if (E.count(x.c)) expected = 0;
        else if (E.count(K.sub(x, K.xi()).c)) expected = 1;
        else expected = -1;
        if (expected == -1) REQUIRE(E.count(K.add(x, K.xi()).c) == 1);
        CHECK(K.eta(x) == expected);
    }
}

TEST_CASE("level discipline is enforced") {
    FieldTower K(1);
    CHECK_THROWS_AS((void)K.add(K.one(Level::fq), K.one(Level::fq3)), std::invalid_argument);
    CHECK_THROWS_AS((void)K.eta(K.one(Level::fq3)), std::invalid_argument);
    CHECK_THROWS_AS((void)K.from_coeffs(Level::fq, {1, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)K.inv(K.zero(Level::fq)), std::domain_error);
    CHECK_THROWS_AS(FieldTower(0), std::invalid_argument);
}

TEST_CASE("lexicographic order sorts by constant coefficient first") {
    FieldTower K(1);
    auto lt = [&](std::vector<int> a, std::vector<int> b) {
        return lex_less(K.from_coeffs(Level::fq, a), K.from_coeffs(Level::fq, b));
    };
    CHECK(lt({0}, {1}));
    CHECK(lt({1}, {2}));
    CHECK(lt({0, 1}, {2}));   // plain lex: first coefficient decides before degree
    CHECK(lt({0, 1}, {1, 1}));
    CHECK(lt({0, 2}, {1, 1}));
    CHECK(lt({1, 1}, {1, 2}));
}

TEST_CASE("n=3 tower constructs with consistent parameters") {
    FieldTower K(3);
    CHECK(K.theta() == 27);
    CHECK(K.q() == 2187);
    CHECK(K.degree(Level::fq) == 7);
    CHECK(K.degree(Level::fq3) == 21);
    CHECK(K.pow(K.alpha0(), K.q()) == K.sub(K.alpha0(), K.one(Level::fq3)));
    CHECK(K.eta(K.xi()) == 1);
}
