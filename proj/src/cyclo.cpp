#include "ree2g2/cyclo.hpp"

#include <stdexcept>

namespace ree2g2 {

Cyclotomic Cyclotomic::integer(long v) {
    Cyclotomic out;
    out.c[0] = v;
    return out;
}

Cyclotomic Cyclotomic::rational(const BigRat& v) {
    Cyclotomic out;
    out.c[0] = v;
    return out;
}

Cyclotomic Cyclotomic::zeta() {
    Cyclotomic out;
    out.c[1] = 1;
    return out;
}

Cyclotomic Cyclotomic::imag_unit() {
    Cyclotomic out;
    out.c[3] = 1;
    return out;
}

Cyclotomic Cyclotomic::sqrt3() {
    Cyclotomic out;
    out.c[1] = 2;
    out.c[3] = -1;
    return out;
}

bool Cyclotomic::is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y) {
    Cyclotomic out;
    for (int k = 0; k < 4; ++k) out.c[static_cast<std::size_t>(k)] = x.c[static_cast<std::size_t>(k)] + y.c[static_cast<std::size_t>(k)];
    return out;
}

Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y) {
    Cyclotomic out;
    for (int k = 0; k < 4; ++k) out.c[static_cast<std::size_t>(k)] = x.c[static_cast<std::size_t>(k)] - y.c[static_cast<std::size_t>(k)];
    return out;
}

Cyclotomic operator-(const Cyclotomic& x) {
    Cyclotomic out;
    for (int k = 0; k < 4; ++k) out.c[static_cast<std::size_t>(k)] = -x.c[static_cast<std::size_t>(k)];
    return out;
}

Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y) {
    // schoolbook product, then reduce by z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
    std::array<BigRat, 7> p{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) p[a + b] += x.c[a] * y.c[b];
    p[0] -= p[6];
    p[3] += p[5];
    p[1] -= p[5];
    p[2] += p[4];
    p[0] -= p[4];
    Cyclotomic out;
    out.c = {p[0], p[1], p[2], p[3]};
    return out;
}

Cyclotomic square(const Cyclotomic& x) { return x * x; }

Cyclotomic galois(const Cyclotomic& x, int k) {
    const auto& c = x.c;
    switch (k) {
        case 1: return x;
        case 5:  // z -> z^5 = z^3 - z, z^2 -> z^10 = 1 - z^2, z^3 -> z^15 = z^3
            return Cyclotomic{{c[0] + c[2], -c[1], -c[2], c[1] + c[3]}};
        case 7:  // z -> z^7 = -z
            return Cyclotomic{{c[0], -c[1], c[2], -c[3]}};
        case 11:  // z -> z^11 = z - z^3, z^2 -> 1 - z^2, z^3 -> -z^3
            return Cyclotomic{{c[0] + c[2], c[1], -c[2], -c[1] - c[3]}};
        default: throw std::invalid_argument("galois: k must be coprime to 12");
    }
}

Cyclotomic conjugate(const Cyclotomic& x) { return galois(x, 11); }

bool is_real(const Cyclotomic& x) { return conjugate(x) == x; }

bool is_rational(const Cyclotomic& x) { return x.c[1] == 0 && x.c[2] == 0 && x.c[3] == 0; }

BigRat field_norm(const Cyclotomic& x) {
    Cyclotomic n = x * galois(x, 5) * galois(x, 7) * galois(x, 11);
    if (!is_rational(n)) throw std::logic_error("field_norm: product of conjugates not rational");
    return n.c[0];
}

Cyclotomic inverse(const Cyclotomic& x) {
    if (x.is_zero()) throw std::domain_error("cyclotomic division by zero");
    Cyclotomic adj = galois(x, 5) * galois(x, 7) * galois(x, 11);
    Cyclotomic n = x * adj;  // the field norm, rational and nonzero
    if (!is_rational(n) || n.c[0] == 0) throw std::logic_error("inverse: norm degenerated");
    Cyclotomic out;
    for (std::size_t k = 0; k < 4; ++k) out.c[k] = adj.c[k] / n.c[0];
    return out;
}

Cyclotomic operator/(const Cyclotomic& x, const Cyclotomic& y) { return x * inverse(y); }

std::array<Cyclotomic, 12> roots_of_unity_12() {
    std::array<Cyclotomic, 12> out;
    out[0] = Cyclotomic::one();
    for (std::size_t k = 1; k < 12; ++k) out[k] = out[k - 1] * Cyclotomic::zeta();
    return out;
}

int root_of_unity_index(const Cyclotomic& x) {
    auto mu = roots_of_unity_12();
    for (int k = 0; k < 12; ++k)
        if (mu[static_cast<std::size_t>(k)] == x) return k;
    return -1;
}

bool is_root_of(const Cyclotomic& x, const std::vector<Cyclotomic>& poly) {
    Cyclotomic acc = Cyclotomic::zero();
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc.is_zero();
}

nlohmann::json cyclo_to_json(const Cyclotomic& x) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : x.c) {
        BigInt num = boost::multiprecision::numerator(v);
        BigInt den = boost::multiprecision::denominator(v);
        j.push_back({num.str(), den.str()});
    }
    return j;
}

Cyclotomic cyclo_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("cyclotomic literal must be an array of 4 pairs");
    Cyclotomic out;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& pair = j[k];
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("cyclotomic coefficient must be a [num, den] pair");
        auto read = [](const nlohmann::json& v) -> BigInt {
            if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
            if (v.is_string()) return BigInt(v.get<std::string>());
            throw std::invalid_argument("cyclotomic coefficient entries must be integers");
        };
        BigInt num = read(pair[0]);
        BigInt den = read(pair[1]);
        if (den == 0) throw std::invalid_argument("cyclotomic coefficient has zero denominator");
        out.c[k] = BigRat(num, den);
    }
    return out;
}

}  // namespace ree2g2
