#pragma once

// Factoring u^n - 1 over GF(2) for odd n, and the residue-system
// construction built on it.
//
// The irreducible factors of u^n - 1 correspond one-to-one with the
// cyclotomic cosets of 2 modulo n: picking a primitive n-th root of unity
// w in GF(2^m), m = ord_n(2), the factor for the coset {j, 2j, 4j, ...} is
// prod_t (u - w^(j*2^t)), whose coefficients land back in GF(2). The
// extension field is realized as GF(2)[u] modulo a primitive polynomial of
// degree m, found by searching irreducibles in ascending order and checking
// that u generates the multiplicative group; w is then a power of u.
//
// The headline construction takes N = 2^p - 1 and builds the modulus set
//
//   M(u) = (u^N - 1) * (u^(N+2) - 1) / (u - 1)
//
// whose two blocks are coprime since gcd(N, N+2) = 1 for odd N; the lone
// shared factor u - 1 is kept on the first block only. With G = H = u^N - 1
// the first block is exactly G's index set, every G-side modulus has degree
// <= p, every other degree <= 2p, and the total degree 2N+1 clears the
// multiplier's 2N-2 intermediate bound.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gf2poly.hpp"
#include "irreducibles.hpp"
#include "rps.hpp"

namespace gf2rps {

namespace detail {

// u^e mod m for word-size exponents.
inline Gf2Poly pow_mod(const Gf2Poly& base, std::uint64_t e, const Gf2Poly& m) {
    Gf2Poly acc = Gf2Poly::one() % m;
    Gf2Poly sq = base % m;
    while (e != 0) {
        if (e & 1) acc = (acc * sq) % m;
        sq = (sq * sq) % m;
        e >>= 1;
    }
    return acc;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            primes.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) primes.push_back(v);
    return primes;
}

// Smallest irreducible of degree m in which u generates the multiplicative
// group. Cached per degree; the search is cheap because primitive
// polynomials are dense among irreducibles.
inline const Gf2Poly& primitive_polynomial(unsigned m) {
    static std::vector<Gf2Poly> cache(64);
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (m == 0 || m >= cache.size())
        throw Error(Errc::bad_argument, "extension degree out of range");
    if (!cache[m].is_zero()) return cache[m];

    const std::uint64_t group_order = (std::uint64_t{1} << m) - 1;
    const auto primes = prime_factors(group_order == 0 ? 1 : group_order);
    const std::uint64_t top = std::uint64_t{1} << m;
    for (std::uint64_t low = 1; low < top; low += 2) {
        const Gf2Poly cand = Gf2Poly::from_bits(top | low);
        if (!is_irreducible(cand)) continue;
        bool primitive = true;
        for (std::uint64_t q : primes) {
            if (pow_mod(Gf2Poly::monomial(1), group_order / q, cand).is_one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            cache[m] = cand;
            return cache[m];
        }
    }
    throw Error(Errc::internal, "no primitive polynomial of degree " + std::to_string(m));
}

inline unsigned multiplicative_order_of_two(std::uint64_t n) {
    unsigned order = 1;
    std::uint64_t v = 2 % n;
    while (v != 1) {
        v = (v * 2) % n;
        ++order;
        if (order > 64)
            throw Error(Errc::bad_argument,
                        "order of 2 modulo " + std::to_string(n) + " is impractically large");
    }
    return order;
}

} // namespace detail

struct CosetFactorization {
    unsigned n = 0;
    std::vector<std::vector<unsigned>> cosets; // sorted by smallest member
    std::vector<Gf2Poly> factors;              // factors[i] belongs to cosets[i]
};

inline CosetFactorization factor_xn_minus_1(unsigned n) {
    if (n == 0) throw Error(Errc::bad_argument, "n must be positive");
    if (n % 2 == 0)
        throw Error(Errc::even_n, "u^n - 1 is squarefree only for odd n; got " +
                                      std::to_string(n));
    CosetFactorization out;
    out.n = n;
    if (n == 1) {
        out.cosets = {{0}};
        out.factors = {Gf2Poly::from_bits(0x3)}; // u + 1
        return out;
    }

    std::vector<bool> seen(n, false);
    for (unsigned j = 0; j < n; ++j) {
        if (seen[j]) continue;
        std::vector<unsigned> coset;
        unsigned v = j;
        do {
            seen[v] = true;
            coset.push_back(v);
            v = static_cast<unsigned>((static_cast<std::uint64_t>(v) * 2) % n);
        } while (v != j);
        out.cosets.push_back(std::move(coset));
    }

    const unsigned m = detail::multiplicative_order_of_two(n);
    if (m > 20)
        throw Error(Errc::bad_argument,
                    "factoring u^" + std::to_string(n) + " - 1 needs GF(2^" + std::to_string(m) +
                        "), beyond the supported 2^20");
    const Gf2Poly& field = detail::primitive_polynomial(m);
    const std::uint64_t group_order = (std::uint64_t{1} << m) - 1;
    // w = u^((2^m - 1)/n) has multiplicative order exactly n.
    const Gf2Poly w = detail::pow_mod(Gf2Poly::monomial(1), group_order / n, field);

    for (const auto& coset : out.cosets) {
        // prod over the coset of (x + w^j), coefficients in GF(2^m).
        std::vector<Gf2Poly> poly{Gf2Poly::one()};
        Gf2Poly root = detail::pow_mod(w, coset.front(), field);
        for (std::size_t t = 0; t < coset.size(); ++t) {
            std::vector<Gf2Poly> next(poly.size() + 1);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] += (poly[k] * root) % field;
            }
            poly = std::move(next);
            root = (root * root) % field; // next element of the coset
        }
        Gf2Poly factor;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            if (poly[k].is_zero()) continue;
            if (!poly[k].is_one())
                throw Error(Errc::internal, "minimal polynomial coefficient outside GF(2)");
            factor.set_coeff(k, true);
        }
        out.factors.push_back(std::move(factor));
    }

    // The factors of a squarefree polynomial must multiply back to it.
    Gf2Poly product = Gf2Poly::one();
    for (const auto& f : out.factors) product *= f;
    Gf2Poly target = Gf2Poly::monomial(n);
    target.set_coeff(0, true);
    if (product != target)
        throw Error(Errc::internal, "factor product does not reproduce u^n - 1");
    return out;
}

struct CyclotomicSetup {
    RpsContextPtr rps;
    Gf2Poly g, h; // both u^N - 1
    std::vector<std::size_t> g_indices, h_indices;
    unsigned big_n = 0; // N = 2^p - 1
};

inline CyclotomicSetup build_cyclotomic_setup(unsigned p_exp) {
    // The second block needs GF(2^(2p)), and the field tables stop at 2^20.
    if (p_exp < 2 || p_exp > 10)
        throw Error(Errc::bad_argument, "exponent must be between 2 and 10");
    const unsigned n = (1u << p_exp) - 1;

    const CosetFactorization first = factor_xn_minus_1(n);
    const CosetFactorization second = factor_xn_minus_1(n + 2);
    if (second.factors.empty() || second.factors.front() != Gf2Poly::from_bits(0x3))
        throw Error(Errc::internal, "expected u - 1 to lead the second factor block");

    std::vector<Gf2Poly> moduli = first.factors;
    // Skip the second block's u - 1: it already sits in the first block.
    moduli.insert(moduli.end(), second.factors.begin() + 1, second.factors.end());

    CyclotomicSetup setup;
    setup.big_n = n;
    setup.g = Gf2Poly::monomial(n);
    setup.g.set_coeff(0, true);
    setup.h = setup.g;
    setup.g_indices.resize(first.factors.size());
    for (std::size_t i = 0; i < setup.g_indices.size(); ++i) setup.g_indices[i] = i;
    setup.h_indices = setup.g_indices;
    setup.rps = std::make_shared<const RpsContext>(std::move(moduli));
    return setup;
}

} // namespace gf2rps
