#pragma once

/* Exact arithmetic in Q(zeta) for zeta a fixed primitive 12th root of unity,
 * the coefficient field of all character-theoretic data (i, sqrt(3), the
 * roots of unity attached to unipotent characters, the lambda eigenvalues).
 *
 * Elements are stored on the power basis {1, z, z^2, z^3} with the reduction
 * z^4 = z^2 - 1 (the 12th cyclotomic polynomial is X^4 - X^2 + 1).  Useful
 * constants in this basis:
 *     i       = z^3
 *     sqrt(3) = z + z^-1 = 2z - z^3
 *     z^6     = -1
 * Complex conjugation sends z to z^-1 = z - z^3; the Galois group is
 * {sigma_k : k in {1,5,7,11}} with sigma_k(z) = z^k.
 */

#include "ree2g2/bigrat.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>

namespace ree2g2 {

struct Cyclotomic {
    std::array<BigRat, 4> c{};  // value = c[0] + c[1] z + c[2] z^2 + c[3] z^3

    static Cyclotomic zero() { return {}; }
    static Cyclotomic one() { return integer(1); }
    static Cyclotomic integer(long v);
    static Cyclotomic rational(const BigRat& v);
    static Cyclotomic zeta();       // z, a primitive 12th root of unity
    static Cyclotomic imag_unit();  // i = z^3
    static Cyclotomic sqrt3();      // 2z - z^3

    bool is_zero() const;
    bool operator==(const Cyclotomic&) const = default;
};

Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y);
Cyclotomic operator-(const Cyclotomic& x);
Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y);
/* throws std::domain_error on division by zero */
Cyclotomic operator/(const Cyclotomic& x, const Cyclotomic& y);

Cyclotomic square(const Cyclotomic& x);
Cyclotomic inverse(const Cyclotomic& x);

/* sigma_k for k in {1,5,7,11}; throws std::invalid_argument otherwise */
Cyclotomic galois(const Cyclotomic& x, int k);
/* sigma_11, the complex conjugation (fixes sqrt3, negates i) */
Cyclotomic conjugate(const Cyclotomic& x);

/* fixed by conjugation, i.e. lies in Q(sqrt3) */
bool is_real(const Cyclotomic& x);
bool is_rational(const Cyclotomic& x);
/* field norm N(x) = prod of all Galois images; rational, 0 iff x = 0 */
BigRat field_norm(const Cyclotomic& x);

/* z^k for k = 0..11: the cyclic group of 12th roots of unity */
std::array<Cyclotomic, 12> roots_of_unity_12();
/* k with x = z^k, or -1 if x is not a 12th root of unity */
int root_of_unity_index(const Cyclotomic& x);

/* p(x) = 0 for p given by coefficients lowest degree first */
bool is_root_of(const Cyclotomic& x, const std::vector<Cyclotomic>& poly);

/* JSON literal [[p0,q0],[p1,q1],[p2,q2],[p3,q3]] of numerator/denominator
 * pairs; parsing is strict (shape, integrality, q != 0) and round-trips
 * bit-exactly through the canonical gcd-reduced, positive-denominator form. */
nlohmann::json cyclo_to_json(const Cyclotomic& x);
Cyclotomic cyclo_from_json(const nlohmann::json& j);

}  // namespace ree2g2
