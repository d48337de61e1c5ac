#pragma once

// Enumeration of irreducible polynomials over GF(2) by trial division,
// smallest first. Used as the pad pool when a residue system has to be
// assembled around given divisor polynomials, and by the factor
// construction to pick reduction polynomials for extension fields.

#include <cstdint>
#include <mutex>
#include <vector>

#include "gf2poly.hpp"

namespace gf2rps {

namespace detail {

class IrreducibleTable {
  public:
    IrreducibleTable() {
        polys_.push_back(Gf2Poly::from_bits(0x2)); // u
        polys_.push_back(Gf2Poly::from_bits(0x3)); // u + 1
    }

    std::vector<Gf2Poly> snapshot(std::int64_t max_degree) {
        std::lock_guard<std::mutex> lock(mu_);
        while (complete_up_to_ < max_degree) {
            const std::int64_t d = ++complete_up_to_;
            // Candidates need bit d set and an odd constant term
            // (otherwise u divides them).
            const std::uint64_t base = std::uint64_t{1} << d;
            for (std::uint64_t low = 1; low < base; low += 2) {
                const Gf2Poly cand = Gf2Poly::from_bits(base | low);
                bool composite = false;
                for (const Gf2Poly& f : polys_) {
                    // Any composite of degree d has a factor of degree <= d/2.
                    if (f.degree() * 2 > d) break;
                    if ((cand % f).is_zero()) {
                        composite = true;
                        break;
                    }
                }
                if (!composite) polys_.push_back(cand);
            }
        }
        std::vector<Gf2Poly> out;
        for (const Gf2Poly& p : polys_) {
            if (p.degree() > max_degree) break;
            out.push_back(p);
        }
        return out;
    }

  private:
    std::vector<Gf2Poly> polys_; // ascending degree, then ascending bits
    std::int64_t complete_up_to_ = 1;
    std::mutex mu_;
};

inline IrreducibleTable& irreducible_table() {
    static IrreducibleTable table;
    return table;
}

} // namespace detail

// All irreducibles of degree <= max_degree, ascending.
inline std::vector<Gf2Poly> irreducibles_up_to(std::int64_t max_degree) {
    return detail::irreducible_table().snapshot(max_degree);
}

inline bool is_irreducible(const Gf2Poly& p) {
    const std::int64_t d = p.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    for (const Gf2Poly& f : irreducibles_up_to(d / 2))
        if ((p % f).is_zero()) return false;
    return true;
}

} // namespace gf2rps
