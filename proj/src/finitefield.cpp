#include "ree2g2/finitefield.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace ree2g2 {

namespace {

/* ---- polynomial helpers over F3 (coefficient vectors, constant first) ---- */

int poly_deg(const std::vector<F3>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<std::size_t>(i)]) return i;
    return -1;
}

void poly_trim(std::vector<F3>& p) { p.resize(static_cast<std::size_t>(poly_deg(p) + 1)); }

std::vector<F3> poly_mul_f3(const std::vector<F3>& a, const std::vector<F3>& b) {
    if (poly_deg(a) < 0 || poly_deg(b) < 0) return {};
    std::vector<unsigned> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
    }
    std::vector<F3> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<F3>(acc[i] % 3);
    poly_trim(out);
    return out;
}

std::vector<F3> poly_mod_f3(std::vector<F3> a, const std::vector<F3>& f) {
    int df = poly_deg(f);
    assert(df >= 0 && f[static_cast<std::size_t>(df)] == 1);  // monic modulus
    int da = poly_deg(a);
    while (da >= df) {
        F3 lead = a[static_cast<std::size_t>(da)];
        for (int i = 0; i <= df; ++i)
            a[static_cast<std::size_t>(da - df + i)] =
                f3_sub(a[static_cast<std::size_t>(da - df + i)], f3_mul(lead, f[static_cast<std::size_t>(i)]));
        da = poly_deg(a);
    }
    a.resize(static_cast<std::size_t>(std::max(da + 1, 1)));
    return a;
}

std::vector<F3> poly_gcd_f3(std::vector<F3> a, std::vector<F3> b) {
    while (poly_deg(b) >= 0) {
        // make b monic so poly_mod_f3 applies
        int db = poly_deg(b);
        F3 lead = b[static_cast<std::size_t>(db)];
        if (lead != 1) {
            F3 li = f3_inv(lead);
            for (auto& c : b) c = f3_mul(c, li);
        }
        auto r = poly_mod_f3(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    poly_trim(a);
    if (!a.empty()) {
        F3 lead = a.back();
        if (lead != 1 && lead != 0) {
            F3 li = f3_inv(lead);
            for (auto& c : a) c = f3_mul(c, li);
        }
    }
    return a;
}

/* x^(3^k) mod f by repeated cubing */
std::vector<F3> frob_power_of_x(const std::vector<F3>& f, int k) {
    std::vector<F3> r = {0, 1};
    r = poly_mod_f3(r, f);
    for (int i = 0; i < k; ++i) {
        auto r2 = poly_mul_f3(r, r);
        r = poly_mod_f3(poly_mul_f3(r2, r), f);
    }
    return r;
}

std::vector<int> prime_divisors(int d) {
    std::vector<int> ps;
    for (int p = 2; p * p <= d; ++p)
        if (d % p == 0) {
            ps.push_back(p);
            while (d % p == 0) d /= p;
        }
    if (d > 1) ps.push_back(d);
    return ps;
}

bool is_irreducible_f3(const std::vector<F3>& f) {
    int d = poly_deg(f);
    if (d < 1) return false;
    // x^(3^d) = x mod f, and x^(3^(d/p)) - x coprime to f for prime p | d
    auto xd = frob_power_of_x(f, d);
    std::vector<F3> x = poly_mod_f3({0, 1}, f);
    if (xd != x) return false;
    for (int p : prime_divisors(d)) {
        auto xe = frob_power_of_x(f, d / p);
        std::vector<F3> diff(std::max(xe.size(), x.size()), 0);
        for (std::size_t i = 0; i < xe.size(); ++i) diff[i] = xe[i];
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = f3_sub(diff[i], x[i]);
        auto g = poly_gcd_f3(f, diff);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

/*
 * Lexicographically smallest monic irreducible of degree d. Candidates are
 * ordered by their coefficient vector (c_0, ..., c_(d-1)), c_0 most
 * significant, so the low-degree-last odometer below visits them in order.
 */
std::vector<F3> smallest_irreducible_f3(int d) {
    std::vector<F3> digits(static_cast<std::size_t>(d), 0);  // digits[i] = c_i
    if (d >= 2) digits[0] = 1;  // constant term 0 forces a factor of x
    while (true) {
        std::vector<F3> f(digits);
        f.push_back(1);
        if (is_irreducible_f3(f)) return f;
        int i = d - 1;
        while (i >= 1 && digits[static_cast<std::size_t>(i)] == 2) digits[static_cast<std::size_t>(i--)] = 0;
        if (i < 1) {
            if (d < 2 || digits[0] == 2) throw std::logic_error("no irreducible polynomial found");
            ++digits[0];
        } else {
            ++digits[static_cast<std::size_t>(i)];
        }
    }
}

}  // namespace

/* ---------------------------------- order --------------------------------- */

bool lex_less(const FqElement& a, const FqElement& b) {
    if (a.level != b.level) throw std::invalid_argument("lex_less: level mismatch");
    return a.c < b.c;  // array comparison is lexicographic with c[0] first
}

/* ------------------------------ solution sets ----------------------------- */

namespace {

F3Vec elt_to_vec(const FqElement& e, int degree) {
    return F3Vec(e.c.begin(), e.c.begin() + degree);
}

FqElement vec_to_elt(const F3Vec& v, Level l) {
    FqElement e;
    e.level = l;
    std::copy(v.begin(), v.end(), e.c.begin());
    return e;
}

}  // namespace

FqElement SolutionSet::lex_min() const {
    if (!solvable) throw std::domain_error("lex_min of an empty solution set");
    std::vector<F3Vec> kv;
    kv.reserve(kernel.size());
    for (const auto& k : kernel) kv.push_back(elt_to_vec(k, degree));
    return vec_to_elt(f3_lex_min_coset(elt_to_vec(particular, degree), std::move(kv)), level);
}

bool SolutionSet::contains(const FqElement& x) const {
    if (!solvable || x.level != level) return false;
    F3Vec diff = elt_to_vec(x, degree);
    F3Vec part = elt_to_vec(particular, degree);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = f3_sub(diff[i], part[i]);
    std::vector<F3Vec> kv;
    kv.reserve(kernel.size());
    for (const auto& k : kernel) kv.push_back(elt_to_vec(k, degree));
    return f3_in_span(kv, diff);
}

std::vector<FqElement> SolutionSet::all(std::size_t max_dim) const {
    if (!solvable) return {};
    if (kernel.size() > max_dim)
        throw std::domain_error("solution set too large to enumerate: 3^" + std::to_string(kernel.size()));
    std::vector<FqElement> out;
    std::vector<F3> digits(kernel.size(), 0);
    while (true) {
        F3Vec v = elt_to_vec(particular, degree);
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            if (!digits[k]) continue;
            for (int i = 0; i < degree; ++i)
                v[static_cast<std::size_t>(i)] = f3_add(
                    v[static_cast<std::size_t>(i)],
                    f3_mul(digits[k], kernel[k].c[static_cast<std::size_t>(i)]));
        }
        out.push_back(vec_to_elt(v, level));
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == 2) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
    }
    return out;
}

/* ------------------------------- field tower ------------------------------ */

FieldTower::FieldTower(int n) : _n(n) {
    if (n < 1 || n > MAX_TOWER_N)
        throw std::invalid_argument("FieldTower: n must be in [1, " + std::to_string(MAX_TOWER_N) + "]");
    _theta = 1;
    for (int i = 0; i < n; ++i) _theta *= 3;
    _q = 3 * _theta * _theta;

    _deg = {1, 2 * n + 1, 3 * (2 * n + 1)};
    _mod[0] = {0, 1};  // F3 = F3[x]/(x)
    _mod[1] = smallest_irreducible_f3(_deg[1]);
    _mod[2] = smallest_irreducible_f3(_deg[2]);

    for (int l = 0; l < 3; ++l) {
        int d = _deg[static_cast<std::size_t>(l)];
        // x^(d+j) mod f for the schoolbook reduction
        _redux[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(std::max(d - 1, 0)));
        std::vector<F3> xp(static_cast<std::size_t>(d) + 1, 0);
        xp[static_cast<std::size_t>(d)] = 1;
        for (int j = 0; j < d - 1; ++j) {
            auto r = poly_mod_f3(xp, _mod[static_cast<std::size_t>(l)]);
            r.resize(static_cast<std::size_t>(d), 0);
            _redux[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = r;
            xp.insert(xp.begin(), 0);  // multiply by x
        }
        // cube map matrix
        F3Mat fr(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            std::vector<F3> xi(static_cast<std::size_t>(i) + 1, 0);
            xi[static_cast<std::size_t>(i)] = 1;
            auto cube = poly_mod_f3(poly_mul_f3(poly_mul_f3(xi, xi), xi), _mod[static_cast<std::size_t>(l)]);
            cube.resize(static_cast<std::size_t>(d), 0);
            for (int r = 0; r < d; ++r)
                fr.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) = cube[static_cast<std::size_t>(r)];
        }
        _frob[static_cast<std::size_t>(l)] = std::move(fr);
    }

    /* middle field inside the top field: locate a root of the middle modulus
       by deterministic trace splitting, then take the lex-smallest conjugate */
    const int d1 = _deg[1], d2 = _deg[2];
    using PolyE = std::vector<FqElement>;
    auto pdeg = [](const PolyE& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (!p[static_cast<std::size_t>(i)].is_zero()) return i;
        return -1;
    };
    auto pmul = [&](const PolyE& a, const PolyE& b) {
        PolyE out(a.size() + b.size() - 1, zero(Level::fq3));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = add(out[i + j], mul(a[i], b[j]));
        }
        return out;
    };
    auto pmod = [&](PolyE a, const PolyE& f) {
        int df = pdeg(f);
        int da = pdeg(a);
        while (da >= df) {
            FqElement lead = mul(a[static_cast<std::size_t>(da)], inv(f[static_cast<std::size_t>(df)]));
            for (int i = 0; i <= df; ++i)
                a[static_cast<std::size_t>(da - df + i)] =
                    sub(a[static_cast<std::size_t>(da - df + i)], mul(lead, f[static_cast<std::size_t>(i)]));
            da = pdeg(a);
        }
        a.resize(static_cast<std::size_t>(std::max(da + 1, 1)), zero(Level::fq3));
        return a;
    };
    auto pgcd = [&](PolyE a, PolyE b) {
        while (pdeg(b) >= 0) {
            auto r = pmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        int da = pdeg(a);
        if (da >= 0) {
            FqElement li = inv(a[static_cast<std::size_t>(da)]);
            for (auto& c : a) c = mul(c, li);
        }
        return a;
    };

    PolyE f;
    for (std::size_t i = 0; i < _mod[1].size(); ++i) f.push_back(from_int(Level::fq3, _mod[1][i]));
    int a_idx = 0;
    while (pdeg(f) > 1) {
        if (a_idx > d2 + 2) throw std::logic_error("FieldTower: root splitting did not terminate");
        FqElement a = pow(gen(Level::fq3), a_idx);
        PolyE r = pmod(PolyE{zero(Level::fq3), a}, f);  // a*x
        PolyE acc = r;
        for (int i = 1; i < d2; ++i) {
            r = pmod(pmul(pmul(r, r), r), f);
            for (std::size_t j = 0; j < acc.size() || j < r.size(); ++j) {
                if (j >= acc.size()) acc.push_back(zero(Level::fq3));
                if (j < r.size()) acc[j] = add(acc[j], r[j]);
            }
        }
        for (int cval = 0; cval < 3; ++cval) {
            PolyE shifted = acc;
            shifted[0] = sub(shifted[0], from_int(Level::fq3, cval));
            PolyE g = pgcd(f, shifted);
            int dg = pdeg(g);
            if (dg > 0 && dg < pdeg(f)) {
                f = std::move(g);
                break;
            }
        }
        ++a_idx;
    }
    FqElement root = neg(f[0]);  // f is monic linear

    // all roots are the Frobenius conjugates; keep the lex-smallest
    std::vector<FqElement> roots;
    FqElement z = root;
    for (int i = 0; i < d1; ++i) {
        roots.push_back(z);
        z = frobenius_pow(z, 1);
    }
    if (z != root) throw std::logic_error("FieldTower: embedding root has wrong conjugate orbit");
    FqElement best = roots[0];
    for (const auto& cand : roots) {
        // evaluate the middle modulus at the candidate (must vanish)
        FqElement acc = zero(Level::fq3);
        for (int i = static_cast<int>(_mod[1].size()) - 1; i >= 0; --i)
            acc = add(mul(acc, cand), from_int(Level::fq3, _mod[1][static_cast<std::size_t>(i)]));
        if (!acc.is_zero()) throw std::logic_error("FieldTower: conjugate is not a root");
        if (lex_less(cand, best)) best = cand;
    }
    _embed_mid = F3Mat(static_cast<std::size_t>(d2), static_cast<std::size_t>(d1));
    FqElement p = one(Level::fq3);
    for (int i = 0; i < d1; ++i) {
        for (int r = 0; r < d2; ++r)
            _embed_mid.at(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) = p.c[static_cast<std::size_t>(r)];
        p = mul(p, best);
    }

    /* alpha0: lex-smallest solution of X^q - X = -1 in the top field */
    auto sols = solve_linearized(
        {{one(Level::fq3), d1}, {neg(one(Level::fq3)), 0}}, neg(one(Level::fq3)));
    if (sols.empty() || sols.kernel_dim() != static_cast<std::size_t>(d1))
        throw std::logic_error("FieldTower: X^q - X + 1 should have exactly q roots in F_q^3");
    _alpha0 = sols.lex_min();
    if (pow(_alpha0, _q) != sub(_alpha0, one(Level::fq3)))
        throw std::logic_error("FieldTower: alpha0^q != alpha0 - 1");

    FqElement xi_top = sub(frobenius_pow(_alpha0, 1), _alpha0);
    if (!in_subfield(xi_top, Level::fq))
        throw std::logic_error("FieldTower: xi does not lie in F_q");
    _xi_mid = project(xi_top, Level::fq);
    if (trace_to_prime(_xi_mid) != 2)  // Tr(xi) = -1
        throw std::logic_error("FieldTower: Tr(xi) != -1");
    // X^3 - X - xi must have no root in F_q (Artin-Schreier irreducibility)
    if (!solve_linearized({{one(Level::fq), 1}, {neg(one(Level::fq)), 0}}, _xi_mid).empty())
        throw std::logic_error("FieldTower: X^3 - X - xi has a root in F_q");
}

void FieldTower::check_level(const FqElement& a, Level l, const char* who) const {
    if (a.level != l)
        throw std::invalid_argument(std::string(who) + ": element level mismatch (use embed)");
}

FqElement FieldTower::zero(Level l) const {
    FqElement e;
    e.level = l;
    return e;
}

FqElement FieldTower::from_int(Level l, long v) const {
    FqElement e;
    e.level = l;
    e.c[0] = f3_from_int(v);
    return e;
}

FqElement FieldTower::from_coeffs(Level l, const std::vector<int>& coeffs) const {
    int d = degree(l);
    if (coeffs.size() > static_cast<std::size_t>(d))
        throw std::invalid_argument("from_coeffs: too many coefficients for level");
    FqElement e;
    e.level = l;
    for (std::size_t i = 0; i < coeffs.size(); ++i) e.c[i] = f3_from_int(coeffs[i]);
    return e;
}

FqElement FieldTower::gen(Level l) const {
    FqElement e;
    e.level = l;
    if (degree(l) > 1) e.c[1] = 1;
    return e;
}

FqElement FieldTower::add(const FqElement& a, const FqElement& b) const {
    if (a.level != b.level) throw std::invalid_argument("add: level mismatch (use embed)");
    FqElement out = a;
    int d = degree(a.level);
    for (int i = 0; i < d; ++i)
        out.c[static_cast<std::size_t>(i)] = f3_add(out.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(i)]);
    return out;
}

FqElement FieldTower::sub(const FqElement& a, const FqElement& b) const {
    if (a.level != b.level) throw std::invalid_argument("sub: level mismatch (use embed)");
    FqElement out = a;
    int d = degree(a.level);
    for (int i = 0; i < d; ++i)
        out.c[static_cast<std::size_t>(i)] = f3_sub(out.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(i)]);
    return out;
}

FqElement FieldTower::neg(const FqElement& a) const {
    FqElement out = a;
    int d = degree(a.level);
    for (int i = 0; i < d; ++i) out.c[static_cast<std::size_t>(i)] = f3_neg(out.c[static_cast<std::size_t>(i)]);
    return out;
}

FqElement FieldTower::reduce_product(Level l, const std::vector<unsigned>& prod) const {
    int d = degree(l);
    std::vector<F3> acc(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)] = static_cast<F3>(prod[static_cast<std::size_t>(i)] % 3);
    const auto& red = _redux[static_cast<int>(l)];
    for (int k = d; k < 2 * d - 1; ++k) {
        F3 v = static_cast<F3>(prod[static_cast<std::size_t>(k)] % 3);
        if (!v) continue;
        const auto& row = red[static_cast<std::size_t>(k - d)];
        for (int i = 0; i < d; ++i)
            acc[static_cast<std::size_t>(i)] = f3_add(acc[static_cast<std::size_t>(i)], f3_mul(v, row[static_cast<std::size_t>(i)]));
    }
    FqElement out;
    out.level = l;
    std::copy(acc.begin(), acc.end(), out.c.begin());
    return out;
}

FqElement FieldTower::mul(const FqElement& a, const FqElement& b) const {
    if (a.level != b.level) throw std::invalid_argument("mul: level mismatch (use embed)");
    int d = degree(a.level);
    if (d == 1) {
        FqElement out;
        out.level = a.level;
        out.c[0] = f3_mul(a.c[0], b.c[0]);
        return out;
    }
    std::vector<unsigned> prod(static_cast<std::size_t>(2 * d - 1), 0);
    for (int i = 0; i < d; ++i) {
        if (!a.c[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < d; ++j)
            prod[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    }
    return reduce_product(a.level, prod);
}

FqElement FieldTower::inv(const FqElement& a) const {
    if (a.is_zero()) throw std::domain_error("inv: division by zero");
    int d = degree(a.level);
    // extended Euclid in F3[x] against the modulus
    std::vector<F3> r0 = _mod[static_cast<int>(a.level)];
    std::vector<F3> r1(a.c.begin(), a.c.begin() + d);
    poly_trim(r1);
    std::vector<F3> s0 = {}, s1 = {1};
    while (poly_deg(r1) > 0) {
        // divide r0 by r1
        std::vector<F3> quo(static_cast<std::size_t>(std::max(poly_deg(r0) - poly_deg(r1) + 1, 1)), 0);
        std::vector<F3> rem = r0;
        int d1v = poly_deg(r1);
        F3 li = f3_inv(r1[static_cast<std::size_t>(d1v)]);
        for (int k = poly_deg(rem); k >= d1v; k = poly_deg(rem)) {
            F3 c = f3_mul(rem[static_cast<std::size_t>(k)], li);
            quo[static_cast<std::size_t>(k - d1v)] = c;
            for (int i = 0; i <= d1v; ++i)
                rem[static_cast<std::size_t>(k - d1v + i)] =
                    f3_sub(rem[static_cast<std::size_t>(k - d1v + i)], f3_mul(c, r1[static_cast<std::size_t>(i)]));
        }
        poly_trim(rem);
        // s_new = s0 - quo * s1
        auto qs = poly_mul_f3(quo, s1);
        std::vector<F3> s_new(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) s_new[i] = s0[i];
        for (std::size_t i = 0; i < qs.size(); ++i) s_new[i] = f3_sub(s_new[i], qs[i]);
        poly_trim(s_new);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_new);
    }
    if (poly_deg(r1) != 0) throw std::logic_error("inv: element not a unit");
    F3 scale = f3_inv(r1[0]);
    FqElement out;
    out.level = a.level;
    auto red = poly_mod_f3(s1, _mod[static_cast<int>(a.level)]);
    for (std::size_t i = 0; i < red.size(); ++i) out.c[i] = f3_mul(red[i], scale);
    return out;
}

FqElement FieldTower::pow(const FqElement& a, std::int64_t e) const {
    if (e < 0) return pow(inv(a), -e);
    FqElement base = a, out = one(a.level);
    while (e) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

FqElement FieldTower::frobenius_pow(const FqElement& a, int k) const {
    if (k < 0) throw std::invalid_argument("frobenius_pow: negative power");
    int d = degree(a.level);
    if (d == 1) return a;
    const F3Mat& fr = _frob[static_cast<int>(a.level)];
    F3Vec v = elt_to_vec(a, d);
    for (int i = 0; i < k; ++i) v = fr.apply(v);
    return vec_to_elt(v, a.level);
}

FqElement FieldTower::embed(const FqElement& a, Level target) const {
    if (a.level == target) return a;
    if (static_cast<int>(a.level) > static_cast<int>(target))
        throw std::invalid_argument("embed: target below the element's level (use project)");
    if (a.level == Level::f3) {
        FqElement out = zero(target);
        out.c[0] = a.c[0];
        return out;
    }
    // fq -> fq3 through the fixed root powers
    F3Vec v = elt_to_vec(a, degree(Level::fq));
    return vec_to_elt(_embed_mid.apply(v), Level::fq3);
}

bool FieldTower::in_subfield(const FqElement& a, Level sub) const {
    if (a.level == sub) return true;
    if (static_cast<int>(a.level) < static_cast<int>(sub)) return false;
    if (sub == Level::f3) {
        for (int i = 1; i < degree(a.level); ++i)
            if (a.c[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    if (a.level != Level::fq3) return false;
    return f3_solve(_embed_mid, elt_to_vec(a, degree(Level::fq3))).solvable;
}

FqElement FieldTower::project(const FqElement& a, Level sub) const {
    if (a.level == sub) return a;
    if (static_cast<int>(a.level) < static_cast<int>(sub))
        throw std::invalid_argument("project: target above the element's level (use embed)");
    if (sub == Level::f3) {
        if (!in_subfield(a, Level::f3)) throw std::domain_error("project: element not in F3");
        FqElement out;
        out.level = Level::f3;
        out.c[0] = a.c[0];
        return out;
    }
    auto sol = f3_solve(_embed_mid, elt_to_vec(a, degree(Level::fq3)));
    if (!sol.solvable) throw std::domain_error("project: element not in the middle field");
    return vec_to_elt(sol.particular, Level::fq);
}

int FieldTower::trace_to_prime(const FqElement& a) const {
    int d = degree(a.level);
    FqElement acc = a, frob_it = a;
    for (int i = 1; i < d; ++i) {
        frob_it = frobenius_pow(frob_it, 1);
        acc = add(acc, frob_it);
    }
    for (int i = 1; i < d; ++i)
        if (acc.c[static_cast<std::size_t>(i)]) throw std::logic_error("trace did not land in F3");
    return acc.c[0];
}

int FieldTower::eta(const FqElement& x_mid) const {
    check_level(x_mid, Level::fq, "eta");
    switch (trace_to_prime(x_mid)) {
        case 0: return 0;
        case 1: return -1;
        default: return 1;  // trace 2 = -1, so eta = 1
    }
}

SolutionSet FieldTower::solve_f3_linear(Level l, const F3Mat& m, const FqElement& rhs) const {
    check_level(rhs, l, "solve_f3_linear");
    int d = degree(l);
    auto lin = f3_solve(m, elt_to_vec(rhs, d));
    SolutionSet out;
    out.level = l;
    out.degree = d;
    out.solvable = lin.solvable;
    if (lin.solvable) {
        out.particular = vec_to_elt(lin.particular, l);
        out.kernel.reserve(lin.kernel.size());
        for (auto& k : lin.kernel) out.kernel.push_back(vec_to_elt(k, l));
    }
    return out;
}

SolutionSet FieldTower::solve_linearized(const std::vector<std::pair<FqElement, int>>& terms,
                                         const FqElement& rhs) const {
    Level l = rhs.level;
    int d = degree(l);
    for (const auto& [coeff, power] : terms) {
        check_level(coeff, l, "solve_linearized");
        if (power < 0) throw std::invalid_argument("solve_linearized: negative Frobenius power");
    }
    F3Mat m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        FqElement e = zero(l);
        e.c[static_cast<std::size_t>(j)] = 1;
        FqElement img = zero(l);
        for (const auto& [coeff, power] : terms)
            img = add(img, mul(coeff, frobenius_pow(e, power)));
        for (int r = 0; r < d; ++r)
            m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = img.c[static_cast<std::size_t>(r)];
    }
    return solve_f3_linear(l, m, rhs);
}

FqElement FieldTower::random_element(Level l, SplitMix64& rng) const {
    FqElement e;
    e.level = l;
    int d = degree(l);
    for (int i = 0; i < d; ++i) e.c[static_cast<std::size_t>(i)] = static_cast<F3>(rng.below(3));
    return e;
}

}  // namespace ree2g2
