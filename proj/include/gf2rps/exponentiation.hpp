#pragma once

// Modular exponentiation over the residue-vector multiply: binary
// square-and-multiply from the low exponent bit upwards. For an exponent
// with highest set bit k this costs k squarings plus one multiply per set
// bit above bit 0.

#include <cstdint>

#include "barrett.hpp"

namespace gf2rps {

using Uint128 = unsigned __int128;

struct MpeStats {
    std::uint64_t squarings = 0;
    std::uint64_t multiplies = 0;
    OpCounter ops;
};

inline ResidueVector residues_of_one(const RpsContext& ctx) {
    return to_residues(Gf2Poly::one(), ctx);
}

inline ResidueVector ba_mpe(const ResidueVector& a, Uint128 e, const BarrettContext& bc,
                            MpeStats* stats = nullptr, bool parallel = false) {
    if (!bc.has_rps())
        throw Error(Errc::bad_argument, "context has no residue system attached");
    if (a.size() != bc.rps->size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!a.fully_known())
        throw Error(Errc::partial_input, "exponentiation needs every input channel");
    if (stats) *stats = MpeStats{};

    MpmTrace trace;
    ResidueVector acc = (e & 1) ? a : residues_of_one(*bc.rps);
    ResidueVector square = a;
    for (e >>= 1; e != 0; e >>= 1) {
        square = ba_mpm(square, square, bc, stats ? &trace : nullptr, parallel);
        if (stats) {
            ++stats->squarings;
            stats->ops += trace.total;
        }
        if (e & 1) {
            acc = ba_mpm(acc, square, bc, stats ? &trace : nullptr, parallel);
            if (stats) {
                ++stats->multiplies;
                stats->ops += trace.total;
            }
        }
    }
    return acc;
}

} // namespace gf2rps
