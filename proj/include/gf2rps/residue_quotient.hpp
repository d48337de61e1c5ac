#pragma once

// Exact quotient by a sub-product of moduli, computed without leaving
// residue form. Given the residues of X (degree < L) and a set I of divisor
// indices, the pivot recurrence yields the residues of floor(X / M_I),
// where M_I is the product of the chosen moduli, on every channel outside I.
// The residues on I itself are consumed by the process; a base-extension
// step can rebuild them if needed.

#include <cstddef>
#include <vector>

#include "detail/recurrence.hpp"
#include "errors.hpp"
#include "gf2poly.hpp"
#include "op_counter.hpp"
#include "rps.hpp"

namespace gf2rps {

struct QuotientPlan {
    const RpsContext* ctx = nullptr;
    std::vector<std::size_t> divisor_indices; // sorted ascending
    std::vector<std::size_t> order;           // divisor indices, then the rest
    OpCounter ops;                            // tallies of the latest invocation
};

inline QuotientPlan make_quotient_plan(const RpsContext& ctx,
                                       std::vector<std::size_t> divisor_indices) {
    QuotientPlan plan;
    plan.ctx = &ctx;
    plan.divisor_indices = detail::checked_indices(ctx, std::move(divisor_indices),
                                                   "quotient plan");
    if (plan.divisor_indices.empty())
        throw Error(Errc::bad_plan, "quotient plan: divisor index set is empty");
    if (plan.divisor_indices.size() >= ctx.size())
        throw Error(Errc::bad_plan, "quotient plan: divisor set must leave at least one channel");
    plan.order = plan.divisor_indices;
    const auto rest = detail::complement_of(ctx, plan.divisor_indices);
    plan.order.insert(plan.order.end(), rest.begin(), rest.end());
    return plan;
}

namespace detail {

// Debug aid: the dense quotients behind the recurrence must shrink by
// degree(M_pivot) per pass. Verifies the whole ledger for one input.
inline bool quotient_degree_ledger_ok(const Gf2Poly& x_dense, const RpsContext& ctx,
                                      const std::vector<std::size_t>& order,
                                      std::size_t num_pivots) {
    std::int64_t remaining = 0;
    for (std::size_t j = num_pivots; j < order.size(); ++j)
        remaining += ctx.channel_degree(order[j]);
    Gf2Poly q = x_dense;
    for (std::size_t t = 0; t < num_pivots; ++t) {
        q = q / ctx.modulus(order[t]);
        std::int64_t bound = remaining;
        for (std::size_t j = t + 1; j < num_pivots; ++j)
            bound += ctx.channel_degree(order[j]);
        if (q.degree() >= bound) return false;
    }
    return true;
}

} // namespace detail

namespace detail {

inline ResidueVector quotient_run(const ResidueVector& x, const QuotientPlan& plan,
                                  OpCounter& ops, bool parallel) {
    const RpsContext& ctx = *plan.ctx;
    if (x.size() != ctx.size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!x.fully_known())
        throw Error(Errc::partial_input, "quotient needs every input channel");

#ifndef NDEBUG
    if (!quotient_degree_ledger_ok(crt_reconstruct(x, ctx), ctx, plan.order,
                                   plan.divisor_indices.size()))
        throw Error(Errc::internal, "quotient degree ledger violated");
#endif

    std::vector<Gf2Poly> scratch = x.values;
    pivot_recurrence(ctx, scratch, plan.order, plan.divisor_indices.size(), ops, parallel);

    ResidueVector out(ctx.size());
    for (std::size_t j = plan.divisor_indices.size(); j < plan.order.size(); ++j) {
        const std::size_t i = plan.order[j];
        out.values[i] = std::move(scratch[i]);
        out.known[i] = true;
    }
    return out;
}

} // namespace detail

// Residues of floor(X / M_I). Output channels: everything outside the
// divisor set. plan.ops is reset on entry and holds this invocation's
// tallies afterwards.
inline ResidueVector quotient_residues(const ResidueVector& x, QuotientPlan& plan,
                                       bool parallel = false) {
    plan.ops = OpCounter{};
    return detail::quotient_run(x, plan, plan.ops, parallel);
}

} // namespace gf2rps
