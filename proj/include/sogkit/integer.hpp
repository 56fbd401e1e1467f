#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sogkit {

// All normal-form kernels run on arbitrary-precision integers; intermediate
// coefficient growth rules out fixed-width arithmetic.
using Int = boost::multiprecision::cpp_int;

// Floor division/remainder with r in [0, |b|).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Int pos_mod(const Int& a, const Int& b) {
    Int r = a % b;
    if (r < 0)
        r += abs(b);
    return r;
}

struct ExtGcd {
    Int g;  // gcd(a, b) >= 0
    Int x;  // g == x*a + y*b
    Int y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0)
        return {-a, -x0, -y0};
    return {a, x0, y0};
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd_int(a, b) * b);
}

}  // namespace sogkit
