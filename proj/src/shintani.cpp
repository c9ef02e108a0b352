#include "ree2g2/shintani.hpp"

#include <algorithm>
#include <stdexcept>

namespace ree2g2 {

namespace {

Cyclotomic rat(long n, long d) { return Cyclotomic::rational(BigRat(n, d)); }

const Cyclotomic& c_one() {
    static const Cyclotomic v = Cyclotomic::one();
    return v;
}
const Cyclotomic& c_i() {
    static const Cyclotomic v = Cyclotomic::imag_unit();
    return v;
}
const Cyclotomic& c_s3() {
    static const Cyclotomic v = Cyclotomic::sqrt3();
    return v;
}

std::size_t idx(UniCharLabel v) { return static_cast<std::size_t>(v); }

}  // namespace

const char* uni_name(UniCharLabel v) {
    switch (v) {
        case UniCharLabel::xi1: return "xi1";
        case UniCharLabel::xi3: return "xi3";
        case UniCharLabel::xi5: return "xi5";
        case UniCharLabel::xi6: return "xi6";
        case UniCharLabel::xi7: return "xi7";
        case UniCharLabel::xi8: return "xi8";
        case UniCharLabel::xi9: return "xi9";
        case UniCharLabel::xi10: return "xi10";
    }
    return "?";
}

const char* ext_name(ExtCharLabel c) {
    switch (c) {
        case ExtCharLabel::one: return "1";
        case ExtCharLabel::theta1: return "theta1";
        case ExtCharLabel::theta2: return "theta2";
        case ExtCharLabel::theta5: return "theta5";
        case ExtCharLabel::theta10: return "theta10";
        case ExtCharLabel::theta11: return "theta11";
        case ExtCharLabel::theta12_p: return "theta12[1]";
        case ExtCharLabel::theta12_m: return "theta12[-1]";
    }
    return "?";
}

UniCharLabel uni_from_name(const std::string& s) {
    for (UniCharLabel v : all_uni_labels())
        if (s == uni_name(v)) return v;
    throw std::invalid_argument("unknown unipotent character label '" + s + "'");
}

ExtCharLabel ext_from_name(const std::string& s) {
    for (ExtCharLabel c : all_ext_labels())
        if (s == ext_name(c)) return c;
    throw std::invalid_argument("unknown extension label '" + s + "'");
}

DecompVector negated(const DecompVector& v) {
    DecompVector out = v;
    for (auto& c : out.coeff) c = -c;
    return out;
}

Cyclotomic hermitian(const DecompVector& a, const DecompVector& b) {
    Cyclotomic acc = Cyclotomic::zero();
    for (std::size_t k = 0; k < 8; ++k) acc = acc + a.coeff[k] * conjugate(b.coeff[k]);
    return acc;
}

namespace {

DecompVector basis_vector(UniCharLabel v) {
    DecompVector out;
    out[v] = c_one();
    return out;
}

/* coefficients on (xi5, xi6, xi7, xi8, xi9, xi10), all times scale */
DecompVector block_vector(const Cyclotomic& scale, std::array<Cyclotomic, 6> c) {
    DecompVector out;
    for (int j = 0; j < 6; ++j) out[FourierMatrix::column_label(j)] = scale * c[static_cast<std::size_t>(j)];
    return out;
}

BuiltinData make_builtin() {
    const Cyclotomic i = c_i(), s3 = c_s3(), one = c_one(), zero = Cyclotomic::zero();
    const Cyclotomic two = Cyclotomic::integer(2);
    const Cyclotomic k = s3 * rat(1, 6);  // sqrt3 / 6
    const Cyclotomic h = rat(1, 2);

    BuiltinData d;

    d.fourier.m = {{
        {one, one, one, one, two, two},
        {s3, -s3, s3, -s3, zero, zero},
        {zero, zero, two, two, zero, -two},
        {two, two, zero, zero, -two, zero},
        {one, one, -one, -one, two, -two},
        {s3, -s3, -s3, s3, zero, zero},
    }};
    for (auto& row : d.fourier.m)
        for (auto& e : row) e = k * e;

    d.expected_roots[idx(UniCharLabel::xi1)] = one;
    d.expected_roots[idx(UniCharLabel::xi3)] = one;
    d.expected_roots[idx(UniCharLabel::xi5)] = -i;
    d.expected_roots[idx(UniCharLabel::xi6)] = -i;
    d.expected_roots[idx(UniCharLabel::xi7)] = i;
    d.expected_roots[idx(UniCharLabel::xi8)] = i;
    d.expected_roots[idx(UniCharLabel::xi9)] = (-s3 + i) * h;
    d.expected_roots[idx(UniCharLabel::xi10)] = (-s3 - i) * h;

    d.lambda = {
        {ExtCharLabel::theta1, one},
        {ExtCharLabel::theta2, one},
        {ExtCharLabel::theta10, one},
        {ExtCharLabel::theta11, -one},
        {ExtCharLabel::theta12_p, (-one - s3 * i) * h},
        {ExtCharLabel::theta12_m, (-one + s3 * i) * h},
    };

    d.sh[ExtCharLabel::one] = basis_vector(UniCharLabel::xi1);
    d.sh[ExtCharLabel::theta1] = block_vector(k, {i, i, -i, -i, s3 - i, s3 + i});
    d.sh[ExtCharLabel::theta2] = block_vector(h, {-i, i, i, -i, zero, zero});
    d.sh[ExtCharLabel::theta2].sign_ambiguous = true;
    d.sh[ExtCharLabel::theta5] = basis_vector(UniCharLabel::xi3);
    d.sh[ExtCharLabel::theta10] = block_vector(k, {i, i, i, i, s3 - i, -(i + s3)});
    d.sh[ExtCharLabel::theta11] = block_vector(h, {one, -one, one, -one, zero, zero});
    d.sh[ExtCharLabel::theta12_p] = block_vector(k, {s3 - i, s3 - i, zero, zero, s3 + i, zero});
    d.sh[ExtCharLabel::theta12_m] = block_vector(k, {zero, zero, s3 + i, s3 + i, zero, s3 - i});

    d.almost["1"] = basis_vector(UniCharLabel::xi1);
    d.almost["sgn"] = basis_vector(UniCharLabel::xi3);
    d.almost["2_1"] = block_vector(k, {one, one, one, one, two, two});
    d.almost["2_2"] = block_vector(h, {one, -one, one, -one, zero, zero});

    d.hc_decomposition = {{"1", 1}, {"theta5", 1}, {"theta3", 1}, {"theta4", 1}, {"theta1", 2}, {"theta2", 2}};

    d.extension_conventions = {
        "extensions chi~ are normalized by chi~(F) > 0 where that value is nonzero",
        "theta2~ is the extension with theta2~(eta.h0.F) = sqrt(q)",
        "theta10~ is the extension with theta10~(T.F) = theta^2 sqrt(3) i",
        "corrected character values: theta10~(Y2) = -theta sqrt(3) i, theta10~(Y3) = theta sqrt(3) i",
    };
    return d;
}

}  // namespace

const BuiltinData& builtin_data() {
    static const BuiltinData d = make_builtin();
    return d;
}

namespace {

DecompVector vector_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("decomposition vector must be an object");
    DecompVector out;
    for (const auto& [key, value] : j.items()) {
        if (key == "ambiguous") {
            if (!value.is_boolean()) throw std::invalid_argument("'ambiguous' must be a boolean");
            out.sign_ambiguous = value.get<bool>();
            continue;
        }
        out[uni_from_name(key)] = cyclo_from_json(value);
    }
    return out;
}

}  // namespace

BuiltinData apply_overrides(BuiltinData base, const nlohmann::json& ov) {
    if (!ov.is_object()) throw std::invalid_argument("override file must contain a JSON object");
    for (const auto& [key, value] : ov.items()) {
        if (key == "fourier") {
            if (!value.is_array() || value.size() != 6)
                throw std::invalid_argument("'fourier' must be a 6x6 array");
            for (int r = 0; r < 6; ++r) {
                const auto& row = value[static_cast<std::size_t>(r)];
                if (!row.is_array() || row.size() != 6)
                    throw std::invalid_argument("'fourier' must be a 6x6 array");
                for (int c = 0; c < 6; ++c)
                    base.fourier.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        cyclo_from_json(row[static_cast<std::size_t>(c)]);
            }
        } else if (key == "sh_vectors") {
            if (!value.is_object()) throw std::invalid_argument("'sh_vectors' must be an object");
            for (const auto& [name, vec] : value.items())
                base.sh[ext_from_name(name)] = vector_from_json(vec);
        } else if (key == "almost") {
            if (!value.is_object()) throw std::invalid_argument("'almost' must be an object");
            for (const auto& [name, vec] : value.items()) {
                if (name != "1" && name != "sgn" && name != "2_1" && name != "2_2")
                    throw std::invalid_argument("unknown almost character '" + name + "'");
                base.almost[name] = vector_from_json(vec);
            }
        } else if (key == "expected_roots") {
            if (!value.is_object()) throw std::invalid_argument("'expected_roots' must be an object");
            for (const auto& [name, c] : value.items())
                base.expected_roots[idx(uni_from_name(name))] = cyclo_from_json(c);
        } else if (key == "lambda") {
            if (!value.is_object()) throw std::invalid_argument("'lambda' must be an object");
            for (const auto& [name, c] : value.items())
                base.lambda[ext_from_name(name)] = cyclo_from_json(c);
        } else {
            throw std::invalid_argument("unknown override key '" + key + "'");
        }
    }
    return base;
}

bool fourier_orthogonality_check(const FourierMatrix& M) {
    for (const auto& row : M.m)
        for (const auto& e : row)
            if (!is_real(e)) return false;
    for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) {
            Cyclotomic dot = Cyclotomic::zero();
            for (int j = 0; j < 6; ++j)
                dot = dot + M.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
                                M.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
            if (!(dot == (r == s ? c_one() : Cyclotomic::zero()))) return false;
        }
    return true;
}

bool sh_gram_check(const std::map<ExtCharLabel, DecompVector>& sh) {
    if (sh.size() != 8) return false;
    std::vector<const DecompVector*> vs;
    for (const auto& [label, v] : sh) {
        (void)label;
        vs.push_back(&v);
    }
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a; b < vs.size(); ++b)
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    if (sa < 0 && !vs[a]->sign_ambiguous) continue;
                    if (sb < 0 && !vs[b]->sign_ambiguous) continue;
                    if (a == b && sa != sb) continue;  // one vector, one resolution
                    DecompVector va = sa < 0 ? negated(*vs[a]) : *vs[a];
                    DecompVector vb = sb < 0 ? negated(*vs[b]) : *vs[b];
                    Cyclotomic expect = a == b ? c_one() : Cyclotomic::zero();
                    if (!(hermitian(va, vb) == expect)) return false;
                }
    return true;
}

bool almost_character_row_check(const FourierMatrix& M,
                                const std::map<std::string, DecompVector>& almost) {
    auto it1 = almost.find("1");
    auto itsgn = almost.find("sgn");
    auto it21 = almost.find("2_1");
    auto it22 = almost.find("2_2");
    if (it1 == almost.end() || itsgn == almost.end() || it21 == almost.end() || it22 == almost.end())
        return false;
    if (!(it1->second == basis_vector(UniCharLabel::xi1))) return false;
    if (!(itsgn->second == basis_vector(UniCharLabel::xi3))) return false;
    for (int r = 0; r < 2; ++r) {
        const DecompVector& v = r == 0 ? it21->second : it22->second;
        if (!v[UniCharLabel::xi1].is_zero() || !v[UniCharLabel::xi3].is_zero()) return false;
        for (int j = 0; j < 6; ++j)
            if (!(v[FourierMatrix::column_label(j)] ==
                  M.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]))
                return false;
    }
    return true;
}

LusztigPriors lusztig_priors() {
    const Cyclotomic i = c_i(), s3 = c_s3(), h = rat(1, 2);
    return {{(i - s3) * h, (-i - s3) * h}, {i, -i}, {i, -i}};
}

namespace {

bool pair_matches(const Cyclotomic& a, const Cyclotomic& b, const std::array<Cyclotomic, 2>& set) {
    return (a == set[0] && b == set[1]) || (a == set[1] && b == set[0]);
}

}  // namespace

RootExtraction extract_roots(const std::map<ExtCharLabel, DecompVector>& sh,
                             const std::map<std::string, DecompVector>& almost,
                             const LusztigPriors& priors) {
    if (!(sh.at(ExtCharLabel::one) == basis_vector(UniCharLabel::xi1)))
        throw std::domain_error("descent of the trivial extension is not xi1");
    if (!(sh.at(ExtCharLabel::theta5).coeff == basis_vector(UniCharLabel::xi3).coeff))
        throw std::domain_error("descent of theta5~ is not xi3");

    const DecompVector& sh1 = sh.at(ExtCharLabel::theta1);
    const DecompVector& r21 = almost.at("2_1");
    std::array<Cyclotomic, 8> ratio{};
    for (int j = 0; j < 6; ++j) {
        UniCharLabel v = FourierMatrix::column_label(j);
        ratio[idx(v)] = sh1[v] * inverse(r21[v]);
    }

    // the global sign is the unique one putting omega_{xi9} in the prior set
    int sign = 0;
    for (int s : {1, -1}) {
        Cyclotomic cand = s < 0 ? -ratio[idx(UniCharLabel::xi9)] : ratio[idx(UniCharLabel::xi9)];
        if (cand == priors.omega9_pair[0] || cand == priors.omega9_pair[1]) {
            if (sign != 0) throw std::domain_error("omega9 prior satisfied by both signs");
            sign = s;
        }
    }
    if (sign == 0) throw std::domain_error("omega9 prior satisfied by neither sign");

    RootExtraction out;
    out.sign = sign;
    out.roots[idx(UniCharLabel::xi1)] = c_one();
    out.roots[idx(UniCharLabel::xi3)] = c_one();
    for (int j = 0; j < 6; ++j) {
        UniCharLabel v = FourierMatrix::column_label(j);
        out.roots[idx(v)] = sign < 0 ? -ratio[idx(v)] : ratio[idx(v)];
        if (root_of_unity_index(out.roots[idx(v)]) < 0)
            throw std::domain_error(std::string("extracted omega for ") + uni_name(v) +
                                    " is not a 12th root of unity");
    }

    if (!pair_matches(out.roots[idx(UniCharLabel::xi5)], out.roots[idx(UniCharLabel::xi7)],
                      priors.omega57_pair))
        throw std::domain_error("{omega5, omega7} violates the prior {i, -i}");
    if (!pair_matches(out.roots[idx(UniCharLabel::xi6)], out.roots[idx(UniCharLabel::xi8)],
                      priors.omega68_pair))
        throw std::domain_error("{omega6, omega8} violates the prior {i, -i}");
    if (!pair_matches(out.roots[idx(UniCharLabel::xi9)], out.roots[idx(UniCharLabel::xi10)],
                      priors.omega9_pair))
        throw std::domain_error("{omega9, omega10} violates the prior {(+-i - sqrt3)/2}");
    return out;
}

RootExtraction extract_roots(const std::map<ExtCharLabel, DecompVector>& sh,
                             const std::map<std::string, DecompVector>& almost) {
    return extract_roots(sh, almost, lusztig_priors());
}

namespace {

struct RawSolution {
    int u_index;  // into roots_of_unity_12()
    int row;      // 0..5
    int sign;
};

/* all (u, row, eps) with u*vec = eps*(M_{row,V} omega_V)_V */
std::vector<RawSolution> dm_solutions(const DecompVector& vec, const FourierMatrix& M,
                                      const RootTable& omegas) {
    if (!vec[UniCharLabel::xi1].is_zero() || !vec[UniCharLabel::xi3].is_zero())
        throw std::domain_error("descent vector has support outside the 6-character block");
    const auto& mu = roots_of_unity_12();
    std::vector<RawSolution> found;
    for (int ui = 0; ui < 12; ++ui)
        for (int r = 0; r < 6; ++r)
            for (int sign : {1, -1}) {
                bool ok = true;
                for (int j = 0; j < 6 && ok; ++j) {
                    UniCharLabel v = FourierMatrix::column_label(j);
                    Cyclotomic rhs = M.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
                                     omegas[idx(v)];
                    if (sign < 0) rhs = -rhs;
                    ok = mu[static_cast<std::size_t>(ui)] * vec[v] == rhs;
                }
                if (ok) found.push_back({ui, r, sign});
            }
    return found;
}

/* the canonical member of a verified flip pair: argument of u in [0, pi),
 * i.e. u = zeta^k with k in 0..5; ties break toward sign = +1 */
RawSolution canonical_of_pair(std::vector<RawSolution> pair, const char* label) {
    if (pair.size() != 2) throw std::domain_error(std::string("Digne-Michel solution for ") + label +
                                                  " is not unique up to the flip");
    const RawSolution& a = pair[0];
    const RawSolution& b = pair[1];
    if (a.row != b.row || b.u_index != (a.u_index + 6) % 12 || b.sign != -a.sign)
        throw std::domain_error(std::string("Digne-Michel solutions for ") + label +
                                " do not form a flip pair");
    std::vector<RawSolution> canon;
    for (const RawSolution& s : pair)
        if (s.u_index < 6) canon.push_back(s);
    if (canon.size() > 1) {
        canon.erase(std::remove_if(canon.begin(), canon.end(),
                                   [](const RawSolution& s) { return s.sign < 0; }),
                    canon.end());
    }
    if (canon.size() != 1) throw std::domain_error(std::string("Digne-Michel canonicalization for ") +
                                                   label + " failed");
    return canon[0];
}

}  // namespace

std::map<ExtCharLabel, DMSolution> digne_michel_verify(
    const std::map<ExtCharLabel, DecompVector>& sh, const FourierMatrix& M,
    const RootTable& omegas, const std::map<ExtCharLabel, Cyclotomic>& lambda) {
    const auto& mu = roots_of_unity_12();
    std::map<ExtCharLabel, DMSolution> out;
    for (ExtCharLabel chi : dm_labels()) {
        const DecompVector& vec = sh.at(chi);
        RawSolution main = canonical_of_pair(dm_solutions(vec, M, omegas), ext_name(chi));
        DMSolution sol;
        sol.u = mu[static_cast<std::size_t>(main.u_index)];
        sol.row = main.row + 1;
        sol.sign = main.sign;
        sol.sign_other = main.sign;
        if (vec.sign_ambiguous) {
            RawSolution other = canonical_of_pair(dm_solutions(negated(vec), M, omegas), ext_name(chi));
            if (other.u_index != main.u_index || other.row != main.row)
                throw std::domain_error(std::string("Digne-Michel solutions for the two sign "
                                                    "resolutions of ") +
                                        ext_name(chi) + " disagree");
            sol.sign_other = other.sign;
        }
        sol.lambda = lambda.at(chi);
        if (!(square(sol.u) == sol.lambda))
            throw std::domain_error(std::string("u^2 != lambda for ") + ext_name(chi));
        out[chi] = sol;
    }
    return out;
}

namespace {

FourierMatrix permuted_columns(const FourierMatrix& M, const std::array<int, 6>& perm) {
    FourierMatrix out;
    for (int r = 0; r < 6; ++r)
        for (int j = 0; j < 6; ++j)
            out.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                M.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    return out;
}

bool column_order_valid(const FourierMatrix& M, const BuiltinData& data, const RootTable& omegas) {
    if (!almost_character_row_check(M, data.almost)) return false;
    try {
        digne_michel_verify(data.sh, M, omegas, data.lambda);
    } catch (const std::domain_error&) {
        return false;
    }
    return true;
}

}  // namespace

ColumnResolution resolve_column_order(const FourierMatrix& M, const BuiltinData& data) {
    RootTable omegas = extract_roots(data.sh, data.almost).roots;
    const std::array<int, 6> identity{0, 1, 2, 3, 4, 5};
    std::array<int, 6> perm = identity;
    std::vector<std::array<int, 6>> valid;
    do {
        if (column_order_valid(permuted_columns(M, perm), data, omegas)) valid.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (valid.empty()) throw std::domain_error("no column order validates the matrix");
    // next_permutation enumerates in lexicographic order, so valid[0] is the
    // least valid order; the input order wins when it validates
    std::array<int, 6> chosen = valid[0];
    if (std::find(valid.begin(), valid.end(), identity) != valid.end()) chosen = identity;
    return {permuted_columns(M, chosen), chosen, static_cast<int>(valid.size())};
}

}  // namespace ree2g2
