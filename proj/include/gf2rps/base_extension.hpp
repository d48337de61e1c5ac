#pragma once

// Base extension: recover the residues a polynomial would have on channels
// where they are missing, given its residues on a known set K and the
// promise that degree(X) < sum of the known channel degrees.
//
// bex_extend runs the same pivot recurrence as the quotient algorithm, with
// the unknown channels seeded arbitrarily (zero by default). The recurrence
// turns the seeds into residues of Q = floor(X' / M_K) for the seeded
// polynomial X'; since X itself has degree below deg(M_K), the final
// correction   x_i <- seed_i - Q_i * (M_K mod M_i)   cancels every trace of
// the seed. The result is provably independent of the initialization, and
// the tests drive that with zero, one and random seeds.
//
// bex_crt is the classical alternative: reconstruct over the K-subsystem
// and reduce into each missing channel. Same answer, different cost shape;
// it serves as a cross-check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "detail/recurrence.hpp"
#include "errors.hpp"
#include "gf2poly.hpp"
#include "op_counter.hpp"
#include "rps.hpp"

namespace gf2rps {

struct BexPlan {
    const RpsContext* ctx = nullptr;
    std::vector<std::size_t> known_indices;  // K, sorted ascending
    std::vector<std::size_t> target_indices; // complement of K
    std::vector<std::size_t> order;          // K then targets
    Gf2Poly m_known;                         // product of the known moduli
    std::vector<Gf2Poly> m_known_mod;        // per target: m_known mod M_i
    std::int64_t capacity = 0;               // sum of known channel degrees

    // Tables for bex_crt, built on first use: sub-system CRT weights for K
    // and, per target, the reduced sub-cofactors.
    std::vector<Gf2Poly> sub_weights;
    std::vector<std::vector<Gf2Poly>> sub_cofactor_mod;

    OpCounter ops; // tallies of the latest invocation
};

inline BexPlan make_bex_plan(const RpsContext& ctx, std::vector<std::size_t> known_indices) {
    BexPlan plan;
    plan.ctx = &ctx;
    plan.known_indices = detail::checked_indices(ctx, std::move(known_indices),
                                                 "base-extension plan");
    if (plan.known_indices.empty())
        throw Error(Errc::empty_known_set, "base-extension plan: known index set is empty");
    plan.target_indices = detail::complement_of(ctx, plan.known_indices);
    plan.order = plan.known_indices;
    plan.order.insert(plan.order.end(), plan.target_indices.begin(), plan.target_indices.end());
    plan.m_known = Gf2Poly::one();
    plan.capacity = 0;
    for (std::size_t i : plan.known_indices) {
        plan.m_known *= ctx.modulus(i);
        plan.capacity += ctx.channel_degree(i);
    }
    plan.m_known_mod.reserve(plan.target_indices.size());
    for (std::size_t i : plan.target_indices)
        plan.m_known_mod.push_back(plan.m_known % ctx.modulus(i));
    return plan;
}

namespace detail {

inline void check_bex_input(const ResidueVector& x, const BexPlan& plan,
                            std::int64_t degree_bound) {
    if (x.size() != plan.ctx->size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    for (std::size_t i : plan.known_indices)
        if (!x.known[i])
            throw Error(Errc::partial_input,
                        "channel " + std::to_string(i) + " is required but unknown",
                        static_cast<std::int64_t>(i));
    if (degree_bound > plan.capacity)
        throw Error(Errc::degree_overflow,
                    "declared degree bound " + std::to_string(degree_bound) +
                        " exceeds what the known channels determine (" +
                        std::to_string(plan.capacity) + ")");
}

} // namespace detail

namespace detail {

inline ResidueVector bex_extend_run(const ResidueVector& x, const BexPlan& plan,
                                    const std::vector<Gf2Poly>* unknown_init, OpCounter& ops,
                                    bool parallel) {
    const RpsContext& ctx = *plan.ctx;
    if (unknown_init && unknown_init->size() != plan.target_indices.size())
        throw Error(Errc::bad_argument, "one seed per unknown channel required");

    const std::size_t a = plan.known_indices.size();
    std::vector<Gf2Poly> scratch(ctx.size());
    for (std::size_t i : plan.known_indices) scratch[i] = x.values[i];
    std::vector<Gf2Poly> seed(plan.target_indices.size());
    for (std::size_t t = 0; t < plan.target_indices.size(); ++t) {
        if (unknown_init)
            seed[t] = ctx.reduce(plan.target_indices[t], (*unknown_init)[t]);
        scratch[plan.target_indices[t]] = seed[t];
    }

    pivot_recurrence(ctx, scratch, plan.order, a, ops, parallel);

    ResidueVector out(ctx.size());
    for (std::size_t i : plan.known_indices) {
        out.values[i] = x.values[i];
        out.known[i] = true;
    }
    parallel_for(0, plan.target_indices.size(), parallel, [&](std::size_t t) {
        const std::size_t i = plan.target_indices[t];
        out.values[i] = seed[t] + ctx.mul_mod(i, scratch[i], plan.m_known_mod[t]);
        out.known[i] = true;
    });
    ops.madd += plan.target_indices.size();
    ops.mmult += plan.target_indices.size();
    return out;
}

} // namespace detail

// Recurrence-based extension. unknown_init, when given, supplies one seed
// polynomial per target channel (in target_indices order) in place of the
// zero default; the output must not depend on it. degree_bound declares an
// exclusive bound on degree(X), defaulting to the largest the known
// channels can support.
inline ResidueVector bex_extend(const ResidueVector& x, BexPlan& plan,
                                const std::vector<Gf2Poly>* unknown_init = nullptr,
                                std::int64_t degree_bound = -1, bool parallel = false) {
    if (degree_bound < 0) degree_bound = plan.capacity;
    detail::check_bex_input(x, plan, degree_bound);
    plan.ops = OpCounter{};
    return detail::bex_extend_run(x, plan, unknown_init, plan.ops, parallel);
}

// CRT-based extension over the K-subsystem. Counts one standalone reduction
// per (known, target) pair on top of the multiplies, which is the cost shape
// that makes the recurrence competitive.
inline ResidueVector bex_crt(const ResidueVector& x, BexPlan& plan,
                             std::int64_t degree_bound = -1) {
    const RpsContext& ctx = *plan.ctx;
    if (degree_bound < 0) degree_bound = plan.capacity;
    detail::check_bex_input(x, plan, degree_bound);
    plan.ops = OpCounter{};

    if (plan.sub_weights.empty()) {
        plan.sub_weights.resize(plan.known_indices.size());
        plan.sub_cofactor_mod.assign(plan.target_indices.size(),
                                     std::vector<Gf2Poly>(plan.known_indices.size()));
        for (std::size_t k = 0; k < plan.known_indices.size(); ++k) {
            const std::size_t ki = plan.known_indices[k];
            const Gf2Poly cof = plan.m_known / ctx.modulus(ki);
            plan.sub_weights[k] = inv_mod(cof % ctx.modulus(ki), ctx.modulus(ki));
            for (std::size_t t = 0; t < plan.target_indices.size(); ++t)
                plan.sub_cofactor_mod[t][k] = cof % ctx.modulus(plan.target_indices[t]);
        }
    }

    std::vector<Gf2Poly> s(plan.known_indices.size());
    for (std::size_t k = 0; k < plan.known_indices.size(); ++k) {
        const std::size_t ki = plan.known_indices[k];
        s[k] = ctx.mul_mod(ki, plan.sub_weights[k], x.values[ki]);
    }
    plan.ops.mmult += plan.known_indices.size();

    ResidueVector out(ctx.size());
    for (std::size_t i : plan.known_indices) {
        out.values[i] = x.values[i];
        out.known[i] = true;
    }
    for (std::size_t t = 0; t < plan.target_indices.size(); ++t) {
        const std::size_t i = plan.target_indices[t];
        Gf2Poly acc;
        for (std::size_t k = 0; k < plan.known_indices.size(); ++k)
            acc += ctx.mul_mod(i, ctx.reduce(i, s[k]), plan.sub_cofactor_mod[t][k]);
        out.values[i] = std::move(acc);
        out.known[i] = true;
        plan.ops.mred += plan.known_indices.size();
        plan.ops.mmult += plan.known_indices.size();
        plan.ops.madd += plan.known_indices.size() - 1;
    }
    return out;
}

} // namespace gf2rps
