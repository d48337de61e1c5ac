#pragma once

// Reference implementations the test suites compare everything against.
// Deliberately naive: one byte per coefficient, textbook nested loops,
// nothing shared with the bit-packed arithmetic or the residue algorithms.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "gf2poly.hpp"

namespace gf2rps::oracle {

using Coeffs = std::vector<unsigned char>;

inline Coeffs to_coeffs(const Gf2Poly& p) {
    Coeffs c;
    if (p.is_zero()) return c;
    const std::size_t deg = static_cast<std::size_t>(p.degree());
    c.resize(deg + 1, 0);
    for (std::size_t i = 0; i <= deg; ++i) c[i] = p.coeff(i) ? 1 : 0;
    return c;
}

inline Gf2Poly from_coeffs(const Coeffs& c) {
    Gf2Poly p;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) p.set_coeff(i, true);
    return p;
}

inline void strip(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] ^= static_cast<unsigned char>(a[i] & b[j]);
    strip(r);
    return r;
}

// Returns the remainder, and the quotient through *quotient when asked.
inline Coeffs mod(Coeffs x, const Coeffs& d, Coeffs* quotient = nullptr) {
    if (d.empty()) throw Error(Errc::division_by_zero, "oracle division by zero");
    strip(x);
    if (quotient) quotient->assign(x.size() >= d.size() ? x.size() - d.size() + 1 : 0, 0);
    while (x.size() >= d.size()) {
        const std::size_t shift = x.size() - d.size();
        if (x.back()) {
            for (std::size_t i = 0; i < d.size(); ++i) x[shift + i] ^= d[i];
            if (quotient) (*quotient)[shift] = 1;
        }
        x.pop_back(); // top coefficient is now zero either way
        strip(x);
    }
    if (quotient) strip(*quotient);
    return x;
}

// a * b mod p by school-book multiply followed by long division.
inline Gf2Poly naive_mpm(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& p) {
    return from_coeffs(mod(mul(to_coeffs(a), to_coeffs(b)), to_coeffs(p)));
}

// a^e mod p, square-and-multiply from the low exponent bit up.
inline Gf2Poly naive_mpe(const Gf2Poly& a, unsigned __int128 e, const Gf2Poly& p) {
    const Coeffs pc = to_coeffs(p);
    if (pc.empty()) throw Error(Errc::division_by_zero, "oracle exponentiation modulo zero");
    Coeffs result{1};
    Coeffs base = mod(to_coeffs(a), pc);
    while (e != 0) {
        if (e & 1) result = mod(mul(result, base), pc);
        base = mod(mul(base, base), pc);
        e >>= 1;
    }
    strip(result);
    return from_coeffs(result);
}

} // namespace gf2rps::oracle
