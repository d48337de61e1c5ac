#pragma once

#include <cstddef>
#include <vector>

#include "../gf2poly.hpp"
#include "../op_counter.hpp"
#include "../rps.hpp"
#include "parallel.hpp"

namespace gf2rps::detail {

// The subtract-and-divide recurrence shared by the quotient and
// base-extension algorithms. order[0..num_pivots) are pivot positions,
// processed left to right; pass t updates every later position i with
//
//   scratch[i] <- (scratch[i] - scratch[pivot]) * M_pivot^-1  mod M_i
//
// which costs one modular addition and one modular multiplication per
// updated channel. After all passes, scratch at the non-pivot positions
// holds the residues of floor(X / prod(M_pivot)).
inline void pivot_recurrence(const RpsContext& ctx, std::vector<Gf2Poly>& scratch,
                             const std::vector<std::size_t>& order, std::size_t num_pivots,
                             OpCounter& ops, bool parallel) {
    for (std::size_t t = 0; t < num_pivots; ++t) {
        const std::size_t k = order[t];
        const Gf2Poly pivot = scratch[k];
        parallel_for(t + 1, order.size(), parallel, [&](std::size_t j) {
            const std::size_t i = order[j];
            scratch[i] = ctx.mul_mod(i, scratch[i] + pivot, ctx.inverse(k, i));
        });
        ops.madd += order.size() - 1 - t;
        ops.mmult += order.size() - 1 - t;
    }
}

// Validates an index list against a context: sorts, rejects duplicates and
// out-of-range entries. Returns the sorted copy.
inline std::vector<std::size_t> checked_indices(const RpsContext& ctx,
                                                std::vector<std::size_t> indices,
                                                const char* what) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= ctx.size())
            throw Error(Errc::bad_plan, std::string(what) + ": index out of range",
                        static_cast<std::int64_t>(indices[i]));
        if (i > 0 && indices[i] == indices[i - 1])
            throw Error(Errc::bad_plan, std::string(what) + ": duplicate index",
                        static_cast<std::int64_t>(indices[i]));
    }
    return indices;
}

inline std::vector<std::size_t> complement_of(const RpsContext& ctx,
                                              const std::vector<std::size_t>& sorted) {
    std::vector<std::size_t> rest;
    rest.reserve(ctx.size() - sorted.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (pos < sorted.size() && sorted[pos] == i) {
            ++pos;
        } else {
            rest.push_back(i);
        }
    }
    return rest;
}

} // namespace gf2rps::detail
