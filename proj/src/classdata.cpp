#include "ree2g2/classdata.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ree2g2 {

namespace {

std::string rat_str(const BigRat& v) { return v.str(); }

std::string poly_str(const ThetaPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [exp, coeff] = *it;
        BigRat c = coeff;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool unit = (c == 1 && exp != 0);
        if (!unit) os << rat_str(c);
        if (exp != 0) {
            if (!unit) os << "*";
            os << "t";
            if (exp != 1) os << "^" << exp;
        }
    }
    return os.str();
}

}  // namespace

void ThetaPoly::put(int exp, const BigRat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = _terms.emplace(exp, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) _terms.erase(it);
    }
}

ThetaPoly ThetaPoly::term(const BigRat& coeff, int exp) {
    ThetaPoly out;
    out.put(exp, coeff);
    return out;
}

ThetaPoly ThetaPoly::constant(long v) { return term(BigRat(v), 0); }
ThetaPoly ThetaPoly::theta() { return term(BigRat(1), 1); }
ThetaPoly ThetaPoly::q() { return term(BigRat(3), 2); }

ThetaPoly ThetaPoly::operator+(const ThetaPoly& o) const {
    ThetaPoly out = *this;
    for (const auto& [e, c] : o._terms) out.put(e, c);
    return out;
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& o) const {
    ThetaPoly out = *this;
    for (const auto& [e, c] : o._terms) out.put(e, -c);
    return out;
}

ThetaPoly ThetaPoly::operator*(const ThetaPoly& o) const {
    ThetaPoly out;
    for (const auto& [e1, c1] : _terms)
        for (const auto& [e2, c2] : o._terms) out.put(e1 + e2, c1 * c2);
    return out;
}

ThetaPoly ThetaPoly::scaled(const BigRat& factor) const {
    ThetaPoly out;
    for (const auto& [e, c] : _terms) out.put(e, c * factor);
    return out;
}

BigRat ThetaPoly::evaluate(unsigned n) const {
    BigRat acc = 0;
    for (const auto& [e, c] : _terms) {
        if (e < 0) throw std::logic_error("ThetaPoly: negative exponent");
        acc += c * BigRat(pow3(static_cast<unsigned>(e) * n));
    }
    return acc;
}

BigInt ThetaPoly::evaluate_positive_integer(unsigned n) const {
    BigRat v = evaluate(n);
    if (boost::multiprecision::denominator(v) != 1)
        throw std::domain_error("ThetaPoly: value " + v.str() + " is not an integer at n=" +
                                std::to_string(n));
    BigInt i = boost::multiprecision::numerator(v);
    if (i <= 0)
        throw std::domain_error("ThetaPoly: value " + i.str() + " is not positive at n=" +
                                std::to_string(n));
    return i;
}

nlohmann::json ThetaPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [e, c] : _terms) {
        BigInt num = boost::multiprecision::numerator(c);
        BigInt den = boost::multiprecision::denominator(c);
        nlohmann::json t = nlohmann::json::array();
        if (fits_int64(num))
            t.push_back(static_cast<std::int64_t>(num));
        else
            t.push_back(num.str());
        if (fits_int64(den))
            t.push_back(static_cast<std::int64_t>(den));
        else
            t.push_back(den.str());
        t.push_back(e);
        j.push_back(t);
    }
    return j;
}

ThetaPoly ThetaPoly::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of terms");
    ThetaPoly out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("polynomial term must be [num, den, exp]");
        auto read = [](const nlohmann::json& v) -> BigInt {
            if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
            if (v.is_string()) return BigInt(v.get<std::string>());
            throw std::invalid_argument("polynomial term entries must be integers");
        };
        BigInt num = read(t[0]);
        BigInt den = read(t[1]);
        if (den == 0) throw std::invalid_argument("polynomial term has zero denominator");
        if (!t[2].is_number_integer()) throw std::invalid_argument("polynomial exponent must be an integer");
        out.put(t[2].get<int>(), BigRat(num, den));
    }
    return out;
}

const char* side_name(Side s) { return s == Side::inner ? "inner" : "outer"; }

const ClassRecord* Dataset::find(const std::string& label) const {
    for (const auto& r : records)
        if (r.label == label) return &r;
    return nullptr;
}

nlohmann::json Dataset::to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json jr;
        jr["label"] = r.label;
        jr["side"] = side_name(r.side);
        jr["centralizer"] = r.centralizer ? r.centralizer->to_json() : nlohmann::json();
        jr["count"] = r.count.to_json();
        jr["partner"] = r.partner ? nlohmann::json(*r.partner) : nlohmann::json();
        recs.push_back(jr);
    }
    return nlohmann::json{{"name", name}, {"records", recs}, {"notes", notes}};
}

Dataset Dataset::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("dataset must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "name" && key != "records" && key != "notes")
            throw std::invalid_argument("dataset: unknown field '" + key + "'");
    }
    if (!j.contains("name") || !j["name"].is_string())
        throw std::invalid_argument("dataset: missing or invalid 'name'");
    if (!j.contains("records") || !j["records"].is_array())
        throw std::invalid_argument("dataset: missing or invalid 'records'");
    Dataset out;
    out.name = j["name"].get<std::string>();
    if (j.contains("notes")) {
        if (!j["notes"].is_array()) throw std::invalid_argument("dataset: 'notes' must be an array");
        for (const auto& nnote : j["notes"]) {
            if (!nnote.is_string()) throw std::invalid_argument("dataset: notes must be strings");
            out.notes.push_back(nnote.get<std::string>());
        }
    }
    for (const auto& jr : j["records"]) {
        if (!jr.is_object()) throw std::invalid_argument("record must be an object");
        for (const auto& [key, value] : jr.items()) {
            (void)value;
            if (key != "label" && key != "side" && key != "centralizer" && key != "count" &&
                key != "partner")
                throw std::invalid_argument("record: unknown field '" + key + "'");
        }
        ClassRecord r;
        if (!jr.contains("label") || !jr["label"].is_string())
            throw std::invalid_argument("record: missing 'label'");
        r.label = jr["label"].get<std::string>();
        if (!jr.contains("side") || !jr["side"].is_string())
            throw std::invalid_argument("record: missing 'side'");
        std::string s = jr["side"].get<std::string>();
        if (s == "inner")
            r.side = Side::inner;
        else if (s == "outer")
            r.side = Side::outer;
        else
            throw std::invalid_argument("record: side must be 'inner' or 'outer'");
        if (!jr.contains("centralizer")) throw std::invalid_argument("record: missing 'centralizer'");
        if (!jr["centralizer"].is_null()) r.centralizer = ThetaPoly::from_json(jr["centralizer"]);
        if (!jr.contains("count")) throw std::invalid_argument("record: missing 'count'");
        r.count = ThetaPoly::from_json(jr["count"]);
        if (jr.contains("partner") && !jr["partner"].is_null()) {
            if (!jr["partner"].is_string()) throw std::invalid_argument("record: partner must be a string");
            r.partner = jr["partner"].get<std::string>();
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

ThetaPoly inner_group_order_poly() {
    ThetaPoly Q = ThetaPoly::q(), one = ThetaPoly::constant(1);
    return Q * Q * Q * (Q * Q * Q + one) * (Q - one);
}

ThetaPoly outer_group_order_poly() {
    ThetaPoly Q = ThetaPoly::q(), one = ThetaPoly::constant(1);
    ThetaPoly q2 = Q * Q, q6 = q2 * q2 * q2;
    return q6 * (q6 - one) * (q2 - one);
}

BigInt group_order(Side side, unsigned n) {
    return (side == Side::inner ? inner_group_order_poly() : outer_group_order_poly())
        .evaluate_positive_integer(n);
}

BigInt ambient_order(Side side, unsigned n) {
    BigInt g = group_order(side, n);
    return side == Side::inner ? g : 2 * g;
}

nlohmann::json CheckOutcome::to_json() const {
    nlohmann::json ji = nlohmann::json::array();
    for (const auto& i : issues) ji.push_back({{"label", i.label}, {"message", i.message}});
    return nlohmann::json{{"check", check}, {"n", n}, {"pass", pass}, {"issues", ji}};
}

namespace {

bool has_side(const Dataset& ds, Side side) {
    return std::any_of(ds.records.begin(), ds.records.end(),
                       [side](const ClassRecord& r) { return r.side == side; });
}

}  // namespace

CheckOutcome class_count_check(const Dataset& ds, unsigned n) {
    CheckOutcome out{"class-count", n, true, {}};
    BigInt expected = 3 * pow3(2 * n) + 8;  // q + 8
    for (Side side : {Side::inner, Side::outer}) {
        if (!has_side(ds, side)) continue;
        BigRat total = 0;
        long singletons = 0;
        for (const auto& r : ds.records) {
            if (r.side != side) continue;
            total += r.count.evaluate(n);
            if (r.count == ThetaPoly::constant(1)) ++singletons;
        }
        if (total != BigRat(expected))
            out.issues.push_back({"", std::string(side_name(side)) + " class total " + total.str() +
                                          " != q+8 = " + expected.str()});
        if (singletons != 10)
            out.issues.push_back({"", std::string(side_name(side)) + " singleton classes " +
                                          std::to_string(singletons) + " != 10"});
    }
    out.pass = out.issues.empty();
    return out;
}

CheckOutcome class_equation_check(const Dataset& ds, unsigned n) {
    CheckOutcome out{"class-equation", n, true, {}};
    for (Side side : {Side::inner, Side::outer}) {
        if (!has_side(ds, side)) continue;
        BigInt ambient = ambient_order(side, n);
        // inner classes partition G^F; outer classes partition the coset of
        // size |G^{F^2}| inside the ambient group of twice that order
        BigInt target = side == Side::inner ? ambient : ambient / 2;
        BigInt total = 0;
        bool complete = true;
        for (const auto& r : ds.records) {
            if (r.side != side) continue;
            if (!r.centralizer) {
                out.issues.push_back({r.label, "centralizer malformed in source; no value to check"});
                complete = false;
                continue;
            }
            BigInt c, cnt;
            try {
                c = r.centralizer->evaluate_positive_integer(n);
                cnt = r.count.evaluate_positive_integer(n);
            } catch (const std::domain_error& e) {
                out.issues.push_back({r.label, e.what()});
                complete = false;
                continue;
            }
            if (ambient % c != 0) {
                out.issues.push_back({r.label, "centralizer order " + c.str() +
                                                   " does not divide the ambient order " +
                                                   ambient.str()});
                complete = false;
                continue;
            }
            total += cnt * (ambient / c);
        }
        if (total != target)
            out.issues.push_back({"", std::string(side_name(side)) + " class sizes sum to " +
                                          total.str() + (complete ? "" : " (incomplete)") +
                                          " != " + target.str()});
    }
    out.pass = out.issues.empty();
    return out;
}

CheckOutcome relation1_check(const Dataset& ds, unsigned n) {
    CheckOutcome out{"centralizer-doubling", n, true, {}};
    std::set<std::string> referenced;
    for (const auto& r : ds.records) {
        if (r.side != Side::inner) continue;
        if (!r.partner) {
            out.issues.push_back({r.label, "inner record has no outer partner link"});
            continue;
        }
        const ClassRecord* p = ds.find(*r.partner);
        if (!p || p->side != Side::outer) {
            out.issues.push_back({r.label, "partner '" + *r.partner + "' not found on the outer side"});
            continue;
        }
        referenced.insert(p->label);
        if (!r.centralizer || !p->centralizer) {
            out.issues.push_back(
                {r.label, "link to '" + p->label + "' not verifiable: centralizer malformed in source"});
            continue;
        }
        BigInt ci = r.centralizer->evaluate_positive_integer(n);
        BigInt co = p->centralizer->evaluate_positive_integer(n);
        if (co != 2 * ci)
            out.issues.push_back({r.label, "outer centralizer " + co.str() + " of '" + p->label +
                                               "' != 2 * inner centralizer " + ci.str()});
        BigRat ki = r.count.evaluate(n), ko = p->count.evaluate(n);
        if (ki != ko)
            out.issues.push_back({r.label, "class count " + ki.str() + " != partner count " +
                                               ko.str() + " of '" + p->label + "'"});
    }
    for (const auto& r : ds.records)
        if (r.side == Side::outer && !referenced.count(r.label))
            out.issues.push_back({r.label, "outer record is not the partner of any inner record"});
    out.pass = out.issues.empty();
    return out;
}

bool ConsistencyReport::all_pass() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.pass; });
}

nlohmann::json ConsistencyReport::to_json() const {
    nlohmann::json jo = nlohmann::json::array();
    for (const auto& o : outcomes) jo.push_back(o.to_json());
    return nlohmann::json{
        {"dataset", dataset}, {"n_values", n_values}, {"outcomes", jo}, {"all_pass", all_pass()}};
}

ConsistencyReport consistency_report(const Dataset& ds, const std::vector<unsigned>& ns) {
    ConsistencyReport rep;
    rep.dataset = ds.name;
    rep.n_values = ns;
    for (unsigned n : ns) {
        rep.outcomes.push_back(class_count_check(ds, n));
        rep.outcomes.push_back(class_equation_check(ds, n));
        rep.outcomes.push_back(relation1_check(ds, n));
    }
    return rep;
}

namespace {

ClassRecord rec(std::string label, Side side, std::optional<ThetaPoly> cent, ThetaPoly count,
                std::optional<std::string> partner) {
    ClassRecord r;
    r.label = std::move(label);
    r.side = side;
    r.centralizer = std::move(cent);
    r.count = std::move(count);
    r.partner = std::move(partner);
    return r;
}

}  // namespace

Dataset as_printed_dataset() {
    using TP = ThetaPoly;
    const TP Q = TP::q(), th = TP::theta(), one = TP::constant(1), three = TP::constant(3);
    const TP q2 = Q * Q, q3 = Q * Q * Q;
    const BigRat half(1, 2), sixth(1, 6);

    Dataset ds;
    ds.name = "as-printed";
    auto& R = ds.records;

    // inner classes with their printed centralizer orders
    R.push_back(rec("1", Side::inner, inner_group_order_poly(), one, "F"));
    R.push_back(rec("J", Side::inner, Q * (Q - one) * (Q + one), one, "h0.F"));
    R.push_back(rec("X", Side::inner, q3, one, "X.F"));
    R.push_back(rec("T", Side::inner, q2.scaled(2), one, "T.F"));
    R.push_back(rec("Tinv", Side::inner, q2.scaled(2), one, "Tinv.F"));
    R.push_back(rec("Y1", Side::inner, Q.scaled(3), one, "Y3.F"));
    R.push_back(rec("Y2", Side::inner, Q.scaled(3), one, "Y1.F"));
    R.push_back(rec("Y3", Side::inner, Q.scaled(3), one, "Y2.F"));
    R.push_back(rec("TJ", Side::inner, Q.scaled(2), one, "eta.h0.F"));
    R.push_back(rec("TinvJ", Side::inner, Q.scaled(2), one, "etainv.h0.F"));
    R.push_back(rec("R", Side::inner, Q - one, (Q - three).scaled(half), "R'"));
    R.push_back(rec("S", Side::inner, Q + one, (Q - three).scaled(sixth), "S'"));
    R.push_back(rec("V", Side::inner, Q - th.scaled(3) + one, (Q - th.scaled(3)).scaled(sixth), "V'"));
    R.push_back(rec("M", Side::inner, Q + th.scaled(3) + one, (Q + th.scaled(3)).scaled(half), "M'"));

    // outer classes; the printed centralizer expression for F is malformed
    R.push_back(rec("F", Side::outer, std::nullopt, one, std::nullopt));
    R.push_back(rec("h0.F", Side::outer, (Q * (Q - one) * (Q + one)).scaled(2), one, std::nullopt));
    R.push_back(rec("X.F", Side::outer, q3.scaled(2), one, std::nullopt));
    R.push_back(rec("T.F", Side::outer, q2.scaled(6), one, std::nullopt));
    R.push_back(rec("Tinv.F", Side::outer, q2.scaled(6), one, std::nullopt));
    R.push_back(rec("Y1.F", Side::outer, Q.scaled(6), one, std::nullopt));
    R.push_back(rec("Y2.F", Side::outer, Q.scaled(6), one, std::nullopt));
    R.push_back(rec("Y3.F", Side::outer, Q.scaled(6), one, std::nullopt));
    R.push_back(rec("eta.h0.F", Side::outer, Q.scaled(2), one, std::nullopt));
    R.push_back(rec("etainv.h0.F", Side::outer, Q.scaled(2), one, std::nullopt));
    R.push_back(rec("R'", Side::outer, Q - one, (Q - three).scaled(half), std::nullopt));
    R.push_back(rec("S'", Side::outer, Q + one, (Q - three).scaled(sixth), std::nullopt));
    R.push_back(rec("V'", Side::outer, Q - th.scaled(3) + one, (Q - th.scaled(3)).scaled(sixth),
                    std::nullopt));
    R.push_back(rec("M'", Side::outer, Q + th.scaled(3) + one, (Q + th.scaled(3)).scaled(half),
                    std::nullopt));

    ds.notes = {
        "the printed centralizer of F is malformed ('2q^3(q^2-1)q^2-q+1)') and is stored without a value",
        "the pairing {TJ, TinvJ} <-> {eta.h0.F, etainv.h0.F} is determined only as a set; the recorded "
        "orientation is a labeling convention and every check is orientation-independent",
        "links R->R', S->S', V->V', M->M' are family-to-family (set-level) correspondences",
    };
    return ds;
}

namespace {

/* one mutable field of the repair search */
struct FieldCandidates {
    std::size_t rec_index;
    bool is_count;  // false: centralizer
    std::vector<ThetaPoly> cands;
};

bool positive_integer_at_all(const ThetaPoly& p, const std::vector<unsigned>& ns) {
    for (unsigned n : ns) {
        try {
            (void)p.evaluate_positive_integer(n);
        } catch (const std::domain_error&) {
            return false;
        }
    }
    return true;
}

void push_unique(std::vector<ThetaPoly>& v, const ThetaPoly& p) {
    if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

/* candidate counts: printed, and the /2 <-> /6 denominator swap in both
 * directions (x3 and /3), kept when they evaluate to positive integers */
std::vector<ThetaPoly> count_candidates(const ThetaPoly& printed, const std::vector<unsigned>& ns) {
    std::vector<ThetaPoly> out{printed};
    for (const BigRat& f : {BigRat(3), BigRat(1, 3)}) {
        ThetaPoly c = printed.scaled(f);
        if (positive_integer_at_all(c, ns)) push_unique(out, c);
    }
    return out;
}

bool combo_passes(const Dataset& ds, const std::vector<unsigned>& ns) {
    for (unsigned n : ns) {
        if (!class_count_check(ds, n).pass) return false;
        if (!class_equation_check(ds, n).pass) return false;
    }
    return true;
}

bool combo_passes_full(const Dataset& ds, const std::vector<unsigned>& ns) {
    if (!combo_passes(ds, ns)) return false;
    for (unsigned n : ns)
        if (!relation1_check(ds, n).pass) return false;
    return true;
}

/* odometer enumeration over the candidate product; returns matching choice
 * vectors and the total number of combinations */
template <typename Pass>
std::pair<std::vector<std::vector<std::size_t>>, long> search(
    Dataset& ds, const std::vector<FieldCandidates>& fields, Pass&& passes) {
    std::vector<std::size_t> choice(fields.size(), 0);
    std::vector<std::vector<std::size_t>> matches;
    long combos = 0;
    while (true) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            auto& r = ds.records[fields[i].rec_index];
            const ThetaPoly& v = fields[i].cands[choice[i]];
            if (fields[i].is_count)
                r.count = v;
            else
                r.centralizer = v;
        }
        ++combos;
        if (passes(ds)) matches.push_back(choice);
        std::size_t k = 0;
        while (k < fields.size() && ++choice[k] == fields[k].cands.size()) choice[k++] = 0;
        if (k == fields.size()) break;
    }
    return {matches, combos};
}

void apply_choice(Dataset& ds, const std::vector<FieldCandidates>& fields,
                  const std::vector<std::size_t>& choice, const Dataset& printed,
                  std::vector<std::string>& changes) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        auto& r = ds.records[fields[i].rec_index];
        const ThetaPoly& v = fields[i].cands[choice[i]];
        const char* what = fields[i].is_count ? "count" : "centralizer";
        const auto& pr = printed.records[fields[i].rec_index];
        const ThetaPoly* old = fields[i].is_count ? &pr.count : (pr.centralizer ? &*pr.centralizer : nullptr);
        if (fields[i].is_count)
            r.count = v;
        else
            r.centralizer = v;
        if (!old)
            changes.push_back(r.label + " " + what + ": malformed in source -> " + poly_str(v) +
                              " (unique candidate passing all checks)");
        else if (!(*old == v))
            changes.push_back(r.label + " " + what + ": " + poly_str(*old) + " -> " + poly_str(v) +
                              " (unique candidate passing all checks)");
    }
}

}  // namespace

CurationResult run_curation(const Dataset& printed) {
    const std::vector<unsigned> ns{1, 2, 3};
    CurationResult result;
    result.dataset = printed;
    result.dataset.name = "curated";

    // phase 1: repair the inner side against its own constraints (class count
    // total and exact class equation)
    Dataset inner_only;
    inner_only.name = printed.name;
    std::vector<std::size_t> inner_map;  // index into printed.records
    for (std::size_t idx = 0; idx < printed.records.size(); ++idx)
        if (printed.records[idx].side == Side::inner) {
            inner_only.records.push_back(printed.records[idx]);
            inner_map.push_back(idx);
        }

    std::vector<FieldCandidates> inner_fields;
    for (std::size_t i = 0; i < inner_only.records.size(); ++i) {
        const auto& r = inner_only.records[i];
        if (!(r.count == ThetaPoly::constant(1))) {
            auto cands = count_candidates(r.count, ns);
            if (cands.size() > 1) inner_fields.push_back({i, true, cands});
        }
        if (r.centralizer && r.partner) {
            // alternative reading: half of the printed outer partner value
            std::vector<ThetaPoly> cands{*r.centralizer};
            if (const ClassRecord* p = printed.find(*r.partner); p && p->centralizer) {
                ThetaPoly halved = p->centralizer->scaled(BigRat(1, 2));
                if (positive_integer_at_all(halved, ns)) push_unique(cands, halved);
            }
            if (cands.size() > 1) inner_fields.push_back({i, false, cands});
        }
    }
    auto [inner_matches, inner_combos] =
        search(inner_only, inner_fields, [&](const Dataset& d) { return combo_passes(d, ns); });
    result.inner_combinations = inner_combos;
    result.inner_matches = static_cast<long>(inner_matches.size());
    if (inner_matches.size() != 1)
        throw std::logic_error("curation: inner repair is not unique (" +
                               std::to_string(inner_matches.size()) + " of " +
                               std::to_string(inner_combos) + " combinations pass)");

    // write the unique inner repair into the full dataset
    {
        std::vector<FieldCandidates> mapped = inner_fields;
        for (auto& f : mapped) f.rec_index = inner_map[f.rec_index];
        apply_choice(result.dataset, mapped, inner_matches[0], printed, result.changes);
    }

    // phase 2: repair the outer side against the class count, the class
    // equation, and the doubling relation with the repaired inner side
    std::vector<FieldCandidates> outer_fields;
    for (std::size_t i = 0; i < result.dataset.records.size(); ++i) {
        const auto& r = result.dataset.records[i];
        if (r.side != Side::outer) continue;
        if (!(r.count == ThetaPoly::constant(1))) {
            auto cands = count_candidates(r.count, ns);
            if (cands.size() > 1) outer_fields.push_back({i, true, cands});
        }
        std::vector<ThetaPoly> cands;
        if (r.centralizer) cands.push_back(*r.centralizer);
        // alternative reading: twice the (repaired) inner partner value
        for (const auto& ir : result.dataset.records)
            if (ir.side == Side::inner && ir.partner && *ir.partner == r.label && ir.centralizer)
                push_unique(cands, ir.centralizer->scaled(BigRat(2)));
        // the full-group centralizer: standard order formulas
        if (!r.centralizer) {
            push_unique(cands, inner_group_order_poly().scaled(BigRat(2)));
            push_unique(cands, inner_group_order_poly());
            push_unique(cands, outer_group_order_poly().scaled(BigRat(2)));
            push_unique(cands, outer_group_order_poly());
        }
        if (cands.size() > 1 || !r.centralizer) outer_fields.push_back({i, false, cands});
    }

    // total size of the unpruned product; a candidate failing its pairwise
    // constraint against the repaired inner side fails the doubling check in
    // every combination, so pruning it cannot change the match count
    long full_product = 1;
    for (const auto& f : outer_fields) full_product *= static_cast<long>(f.cands.size());
    for (auto& f : outer_fields) {
        const ClassRecord& orec = result.dataset.records[f.rec_index];
        const ClassRecord* ipartner = nullptr;
        for (const auto& ir : result.dataset.records)
            if (ir.side == Side::inner && ir.partner && *ir.partner == orec.label) ipartner = &ir;
        if (!ipartner) continue;
        std::vector<ThetaPoly> kept;
        for (const auto& cand : f.cands) {
            bool ok = true;
            for (unsigned n : ns) {
                if (f.is_count) {
                    if (cand.evaluate(n) != ipartner->count.evaluate(n)) ok = false;
                } else {
                    if (!ipartner->centralizer ||
                        cand.evaluate(n) != BigRat(2) * ipartner->centralizer->evaluate(n))
                        ok = false;
                }
            }
            if (ok) kept.push_back(cand);
        }
        if (kept.empty())
            throw std::logic_error("curation: no candidate for '" + orec.label + "' " +
                                   (f.is_count ? "count" : "centralizer") +
                                   " satisfies the doubling relation");
        f.cands = std::move(kept);
    }

    auto [outer_matches, outer_enumerated] =
        search(result.dataset, outer_fields, [&](const Dataset& d) { return combo_passes_full(d, ns); });
    (void)outer_enumerated;
    result.outer_combinations = full_product;
    result.outer_matches = static_cast<long>(outer_matches.size());
    if (outer_matches.size() != 1)
        throw std::logic_error("curation: outer repair is not unique (" +
                               std::to_string(outer_matches.size()) + " of " +
                               std::to_string(full_product) + " combinations pass)");
    apply_choice(result.dataset, outer_fields, outer_matches[0], printed, result.changes);

    return result;
}

Dataset curated_dataset() {
    static const Dataset cached = [] {
        Dataset printed = as_printed_dataset();
        CurationResult cur = run_curation(printed);
        Dataset ds = std::move(cur.dataset);
        ds.notes.clear();
        ds.notes.push_back("mechanically repaired from the printed lists; every change below is the "
                           "unique candidate passing class count, class equation, and centralizer "
                           "doubling at n in {1,2,3}");
        for (const auto& c : cur.changes) ds.notes.push_back(c);
        for (const auto& nnote : printed.notes)
            if (nnote.find("malformed") == std::string::npos) ds.notes.push_back(nnote);
        return ds;
    }();
    return cached;
}

}  // namespace ree2g2
