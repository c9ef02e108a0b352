#include "ree2g2/classdata.hpp"

#include "doctest.h"

#include <set>

using namespace ree2g2;

namespace {

const ThetaPoly Q = ThetaPoly::q();
const ThetaPoly TH = ThetaPoly::theta();
const ThetaPoly ONE = ThetaPoly::constant(1);

bool has_issue_for(const CheckOutcome& o, const std::string& label) {
    for (const auto& i : o.issues)
        if (i.label == label) return true;
    return false;
}

bool has_issue_containing(const CheckOutcome& o, const std::string& needle) {
    for (const auto& i : o.issues)
        if (i.message.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("theta polynomial arithmetic") {
    // q^3 + 1 factors as (q + 1)(q^2 - q + 1)
    ThetaPoly lhs = Q * Q * Q * (Q * Q * Q + ONE) * (Q - ONE);
    ThetaPoly rhs = Q * Q * Q * (Q + ONE) * (Q * Q - Q + ONE) * (Q - ONE);
    CHECK(lhs == rhs);
    CHECK(lhs == inner_group_order_poly());

    CHECK((Q - ONE) * (Q + ONE) == Q * Q - ONE);
    CHECK((Q - Q).is_zero());
    CHECK((ThetaPoly::term(BigRat(1), 2) + ThetaPoly::term(BigRat(-1), 2)).is_zero());

    CHECK(TH.evaluate(1) == BigRat(3));
    CHECK(TH.evaluate(2) == BigRat(9));
    CHECK(Q.evaluate(1) == BigRat(27));
    CHECK(Q.evaluate(3) == BigRat(2187));
    CHECK((Q - ThetaPoly::constant(3)).scaled(BigRat(1, 2)).evaluate(1) == BigRat(12));

    // non-integral and non-positive values are rejected
    ThetaPoly bad = (Q - ThetaPoly::constant(3)).scaled(BigRat(1, 18));
    CHECK_THROWS_AS(bad.evaluate_positive_integer(1), std::domain_error);
    CHECK_THROWS_AS((ONE - Q).evaluate_positive_integer(1), std::domain_error);
    CHECK((Q - ThetaPoly::constant(3)).scaled(BigRat(1, 6)).evaluate_positive_integer(1) == 4);
}

TEST_CASE("group orders") {
    // fixed group: q^3 (q^3 + 1)(q - 1) at q = 27
    CHECK(group_order(Side::inner, 1) == BigInt("10073444472"));

    // ambient of the outer coset is twice the q = 27 order of the untwisted
    // group, computed here from scratch
    BigInt q = 27;
    BigInt q2 = q * q, q6 = q2 * q2 * q2;
    BigInt g2_order = q6 * (q6 - 1) * (q2 - 1);
    CHECK(group_order(Side::outer, 1) == g2_order);
    CHECK(ambient_order(Side::outer, 1) == 2 * g2_order);
    CHECK(ambient_order(Side::inner, 1) == group_order(Side::inner, 1));

    for (unsigned n = 1; n <= 3; ++n) CHECK(group_order(Side::outer, n) % group_order(Side::inner, n) == 0);
}

TEST_CASE("as-printed dataset shape") {
    Dataset ds = as_printed_dataset();
    CHECK(ds.name == "as-printed");
    CHECK(ds.records.size() == 28);

    std::set<std::string> labels;
    long inner = 0, outer = 0, inner_singletons = 0;
    for (const auto& r : ds.records) {
        labels.insert(r.label);
        (r.side == Side::inner ? inner : outer)++;
        if (r.side == Side::inner && r.count == ONE) ++inner_singletons;
    }
    CHECK(labels.size() == 28);
    CHECK(inner == 14);
    CHECK(outer == 14);
    CHECK(inner_singletons == 10);

    const ClassRecord* t = ds.find("T");
    REQUIRE(t != nullptr);
    CHECK(t->side == Side::inner);
    CHECK(t->partner == "T.F");
    CHECK(t->centralizer == (Q * Q).scaled(BigRat(2)));

    const ClassRecord* f = ds.find("F");
    REQUIRE(f != nullptr);
    CHECK(f->side == Side::outer);
    CHECK(!f->centralizer.has_value());  // malformed in the source

    CHECK(ds.find("no-such-class") == nullptr);

    // printed family counts at n = 1
    CHECK(ds.find("R")->count.evaluate(1) == BigRat(12));   // (q-3)/2
    CHECK(ds.find("S")->count.evaluate(1) == BigRat(4));    // (q-3)/6
    CHECK(ds.find("V")->count.evaluate(1) == BigRat(3));    // (q-3theta)/6
    CHECK(ds.find("M")->count.evaluate(1) == BigRat(18));   // (q+3theta)/2 as printed
}

TEST_CASE("as-printed audit flags the printed contradictions") {
    Dataset ds = as_printed_dataset();
    for (unsigned n : {1u, 2u, 3u}) {
        CheckOutcome counts = class_count_check(ds, n);
        CHECK(!counts.pass);
        if (n == 1) {
            CHECK(has_issue_containing(counts, "47"));
            CHECK(has_issue_containing(counts, "35"));
        }

        CheckOutcome eq = class_equation_check(ds, n);
        CHECK(!eq.pass);
        CHECK(has_issue_for(eq, "F"));  // malformed centralizer
        if (n == 1) CHECK(has_issue_containing(eq, "13340507544"));

        CheckOutcome rel = relation1_check(ds, n);
        CHECK(!rel.pass);
        CHECK(has_issue_for(rel, "1"));  // link to F not verifiable
        for (const char* l : {"T", "Tinv", "TJ", "TinvJ", "R", "S", "V", "M"})
            CHECK(has_issue_for(rel, l));
        for (const char* l : {"J", "X", "Y1", "Y2", "Y3"})
            CHECK(!has_issue_for(rel, l));  // these printed links already double
    }
    CHECK(!consistency_report(ds, {1, 2, 3}).all_pass());
}

TEST_CASE("curation finds a unique repair") {
    CurationResult cur = run_curation(as_printed_dataset());
    CHECK(cur.inner_matches == 1);
    CHECK(cur.outer_matches == 1);
    CHECK(cur.inner_combinations == 3456);
    CHECK(cur.outer_combinations == 55296);
    CHECK(cur.changes.size() == 11);

    const Dataset& ds = cur.dataset;
    const ThetaPoly m_count = (Q + TH.scaled(3)).scaled(BigRat(1, 6));
    CHECK(ds.find("M")->count == m_count);
    CHECK(ds.find("M'")->count == m_count);
    CHECK(ds.find("F")->centralizer == inner_group_order_poly().scaled(BigRat(2)));
    CHECK(ds.find("T.F")->centralizer == (Q * Q).scaled(BigRat(4)));
    CHECK(ds.find("Tinv.F")->centralizer == (Q * Q).scaled(BigRat(4)));
    CHECK(ds.find("eta.h0.F")->centralizer == Q.scaled(BigRat(4)));
    CHECK(ds.find("etainv.h0.F")->centralizer == Q.scaled(BigRat(4)));
    CHECK(ds.find("R'")->centralizer == (Q - ONE).scaled(BigRat(2)));
    CHECK(ds.find("S'")->centralizer == (Q + ONE).scaled(BigRat(2)));
    CHECK(ds.find("V'")->centralizer == (Q - TH.scaled(3) + ONE).scaled(BigRat(2)));
    CHECK(ds.find("M'")->centralizer == (Q + TH.scaled(3) + ONE).scaled(BigRat(2)));

    // fields the search leaves alone
    CHECK(ds.find("T")->centralizer == (Q * Q).scaled(BigRat(2)));
    CHECK(ds.find("TJ")->centralizer == Q.scaled(BigRat(2)));
    CHECK(ds.find("R")->count == as_printed_dataset().find("R")->count);
    CHECK(ds.find("S")->count == as_printed_dataset().find("S")->count);
    CHECK(ds.find("V")->count == as_printed_dataset().find("V")->count);
}

TEST_CASE("curated dataset passes every check") {
    Dataset ds = curated_dataset();
    ConsistencyReport rep = consistency_report(ds, {1, 2, 3});
    CHECK(rep.outcomes.size() == 9);
    for (const auto& o : rep.outcomes) {
        INFO(o.check << " at n=" << o.n);
        CHECK(o.pass);
        CHECK(o.issues.empty());
    }
    CHECK(rep.all_pass());
    CHECK(!ds.notes.empty());

    // every field evaluates to a positive integer well past the checked range
    for (const auto& r : ds.records)
        for (unsigned n = 1; n <= 5; ++n) {
            CHECK(r.count.evaluate_positive_integer(n) > 0);
            REQUIRE(r.centralizer.has_value());
            CHECK(r.centralizer->evaluate_positive_integer(n) > 0);
        }

    // family counts at n = 1 after repair: 12 + 4 + 3 + 6 singleton-equivalents
    CHECK(ds.find("M")->count.evaluate(1) == BigRat(6));
    BigRat family_total = ds.find("R")->count.evaluate(1) + ds.find("S")->count.evaluate(1) +
                          ds.find("V")->count.evaluate(1) + ds.find("M")->count.evaluate(1);
    CHECK(family_total == BigRat(25));  // plus 10 singletons = 35 = q + 8
}

TEST_CASE("json round trip and strictness") {
    Dataset ds = curated_dataset();
    nlohmann::json j = ds.to_json();
    Dataset back = Dataset::from_json(j);
    CHECK(back.name == ds.name);
    CHECK(back.notes == ds.notes);
    REQUIRE(back.records.size() == ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) CHECK(back.records[i] == ds.records[i]);

    // large coefficients survive via decimal strings
    ThetaPoly big = ThetaPoly::term(BigRat(BigInt(1) << 90, BigInt(7)), 5);
    CHECK(ThetaPoly::from_json(big.to_json()) == big);

    nlohmann::json extra = j;
    extra["surprise"] = 1;
    CHECK_THROWS_AS(Dataset::from_json(extra), std::invalid_argument);

    nlohmann::json badrec = j;
    badrec["records"][0]["extra"] = true;
    CHECK_THROWS_AS(Dataset::from_json(badrec), std::invalid_argument);

    nlohmann::json badside = j;
    badside["records"][0]["side"] = "sideways";
    CHECK_THROWS_AS(Dataset::from_json(badside), std::invalid_argument);

    nlohmann::json nocount = j;
    nocount["records"][0].erase("count");
    CHECK_THROWS_AS(Dataset::from_json(nocount), std::invalid_argument);

    CHECK_THROWS_AS(ThetaPoly::from_json(nlohmann::json::parse("[[1, 0, 2]]")), std::invalid_argument);
    CHECK_THROWS_AS(ThetaPoly::from_json(nlohmann::json::parse("[[1.5, 1, 2]]")), std::invalid_argument);
    CHECK_THROWS_AS(ThetaPoly::from_json(nlohmann::json::parse("[[1, 1]]")), std::invalid_argument);
}
