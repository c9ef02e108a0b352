#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ree2g2 {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline BigInt pow3(unsigned exp) { return big_pow(3, exp); }

/* Exact conversion of an integral rational. */
inline BigInt rat_to_int(const BigRat& r) {
    if (boost::multiprecision::denominator(r) != 1)
        throw std::domain_error("rat_to_int: value is not an integer: " + r.str());
    return boost::multiprecision::numerator(r);
}

inline bool fits_int64(const BigInt& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace ree2g2
