#pragma once

/* The conjugacy-class ledger of the Ree group G^F and of the outer coset
 * G^{F^2}.F, the norm-correspondence partner links, and the consistency
 * engine: class count (q+8), exact class equation, and the centralizer
 * doubling relation |C_{G^{F^2} x| F}(u.F)| = 2 |C_{G^F}(g)| for linked
 * classes.
 *
 * Two datasets ship.  "as-printed" transcribes the source lists verbatim,
 * including a malformed centralizer expression (stored as absent) and
 * family data that contradict the stated class count.  "curated" is produced
 * mechanically: every suspect field gets a small candidate set (the printed
 * value, the printed value with the /2 <-> /6 denominator swapped, half or
 * double the printed partner value, standard order formulas for the
 * full-group centralizer) and the unique candidate combination satisfying
 * all constraints at n in {1,2,3} is kept.  If the search were ever not
 * unique the curation fails closed rather than guess.
 */

#include "ree2g2/bigrat.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ree2g2 {

/* Exact polynomial in theta (theta = 3^n); q enters as 3*theta^2. */
class ThetaPoly {
  public:
    ThetaPoly() = default;
    static ThetaPoly term(const BigRat& coeff, int exp);
    static ThetaPoly constant(long v);
    static ThetaPoly theta();
    static ThetaPoly q();  // 3 theta^2

    ThetaPoly operator+(const ThetaPoly&) const;
    ThetaPoly operator-(const ThetaPoly&) const;
    ThetaPoly operator*(const ThetaPoly&) const;
    ThetaPoly scaled(const BigRat& factor) const;
    bool operator==(const ThetaPoly&) const = default;

    bool is_zero() const { return _terms.empty(); }
    const std::map<int, BigRat>& terms() const { return _terms; }

    BigRat evaluate(unsigned n) const;  // at theta = 3^n
    /* evaluate and require a positive integer; throws std::domain_error */
    BigInt evaluate_positive_integer(unsigned n) const;

    nlohmann::json to_json() const;  // [[num, den, exp], ...]
    static ThetaPoly from_json(const nlohmann::json& j);

  private:
    std::map<int, BigRat> _terms;  // exponent -> coefficient, no zero entries
    void put(int exp, const BigRat& coeff);
};

enum class Side : std::uint8_t { inner, outer };
const char* side_name(Side s);

struct ClassRecord {
    std::string label;
    Side side{Side::inner};
    /* absent = the printed expression is malformed and has no value */
    std::optional<ThetaPoly> centralizer;
    ThetaPoly count;  // number of classes covered by this record (1 for singletons)
    /* inner records: label of the outer partner class under the norm map */
    std::optional<std::string> partner;

    bool operator==(const ClassRecord&) const = default;
};

struct Dataset {
    std::string name;
    std::vector<ClassRecord> records;
    std::vector<std::string> notes;

    const ClassRecord* find(const std::string& label) const;

    nlohmann::json to_json() const;
    /* strict: unknown or missing fields are rejected */
    static Dataset from_json(const nlohmann::json& j);
};

/* |G^F| = q^3 (q^3 + 1)(q - 1)  and  |G^{F^2}| = |G_2(q)| = q^6 (q^6-1)(q^2-1)
 * as polynomials in theta; the outer ambient group G^{F^2} x| <F> has twice
 * the latter order. */
ThetaPoly inner_group_order_poly();
ThetaPoly outer_group_order_poly();
BigInt group_order(Side side, unsigned n);
BigInt ambient_order(Side side, unsigned n);  // inner: |G^F|; outer: 2|G^{F^2}|

struct CheckIssue {
    std::string label;    // offending record, or "" for dataset-level issues
    std::string message;  // human-readable, deterministic
    bool operator==(const CheckIssue&) const = default;
};

struct CheckOutcome {
    std::string check;
    unsigned n{0};
    bool pass{false};
    std::vector<CheckIssue> issues;
    nlohmann::json to_json() const;
};

/* Sum of class counts must be q+8 on each side; inner singleton subtotal 10. */
CheckOutcome class_count_check(const Dataset& ds, unsigned n);
/* Sum over records of count * (ambient / centralizer) must equal |G^F| on the
 * inner side and |G^{F^2}| (the coset size) on the outer side, with exact
 * divisibility per record. */
CheckOutcome class_equation_check(const Dataset& ds, unsigned n);
/* Every linked pair satisfies outer centralizer = 2 * inner centralizer and
 * equal class counts; unlinked records are reported as incomplete. */
CheckOutcome relation1_check(const Dataset& ds, unsigned n);

struct ConsistencyReport {
    std::string dataset;
    std::vector<unsigned> n_values;
    std::vector<CheckOutcome> outcomes;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

ConsistencyReport consistency_report(const Dataset& ds, const std::vector<unsigned>& ns);

/* The verbatim transcription of the printed class lists. */
Dataset as_printed_dataset();

struct CurationResult {
    Dataset dataset;
    std::vector<std::string> changes;  // one line per modified field
    long inner_combinations;           // search-space sizes, for reporting
    long outer_combinations;
    long inner_matches;  // must be 1
    long outer_matches;  // must be 1
};

/* Mechanical repair search described above; throws std::logic_error if the
 * passing combination is not unique. */
CurationResult run_curation(const Dataset& printed);

/* run_curation(as_printed_dataset()).dataset with the change log as notes */
Dataset curated_dataset();

}  // namespace ree2g2
