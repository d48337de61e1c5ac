#pragma once

#include <cstdint>
#include <random>

#include <gf2rps/gf2poly.hpp>

namespace testutil {

// Uniform over polynomials of degree strictly below degree_bound.
inline gf2rps::Gf2Poly random_poly_below(std::mt19937_64& rng, std::int64_t degree_bound) {
    gf2rps::Gf2Poly p;
    std::uint64_t bits = 0;
    for (std::int64_t i = 0; i < degree_bound; ++i) {
        if (i % 64 == 0) bits = rng();
        if ((bits >> (i % 64)) & 1u) p.set_coeff(static_cast<std::size_t>(i), true);
    }
    return p;
}

inline gf2rps::Gf2Poly random_poly_of_degree(std::mt19937_64& rng, std::int64_t degree) {
    gf2rps::Gf2Poly p = random_poly_below(rng, degree);
    p.set_coeff(static_cast<std::size_t>(degree), true);
    return p;
}

inline gf2rps::Gf2Poly random_nonzero_below(std::mt19937_64& rng, std::int64_t degree_bound) {
    for (;;) {
        gf2rps::Gf2Poly p = random_poly_below(rng, degree_bound);
        if (!p.is_zero()) return p;
    }
}

} // namespace testutil
