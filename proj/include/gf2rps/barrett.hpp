#pragma once

// Barrett modular multiplication for GF(2) polynomials, with division
// generalized from powers of u to arbitrary divisor polynomials G and H.
// Writing N = deg(P), alpha = deg(G), beta = deg(H), the multiply of
// A, B (degrees < N) runs:
//
//   precompute  mu = floor(G*H / P)
//   step 1      X = A * B
//   step 2      D = floor(X / G)
//   step 3      E = D * mu
//   step 4      Q = floor(E / H)
//   step 5      C = X - Q * P
//
// Whenever 2N-2 <= alpha+beta and alpha <= N, the computed Q is exactly
// floor(X / P), so C is the true remainder, not an approximation needing
// correction. The point of the generalization: choosing G and H as
// sub-products of a residue system's moduli turns steps 2 and 4 into the
// recurrence-based quotient algorithm, and the whole multiply runs on
// residue vectors without ever leaving them. Division by G consumes the
// channels inside G's index set, so steps 2 and 4 are each followed by a
// base extension that restores the missing channels.
//
// Intermediate degree ledger, used by the capacity validation:
//   deg X <= 2N-2,  deg D <= 2N-alpha-2,  deg E <= N+beta-2,
//   deg Q <= N-2,   deg C <= N-1,         deg mu = alpha+beta-N.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "base_extension.hpp"
#include "errors.hpp"
#include "gf2poly.hpp"
#include "irreducibles.hpp"
#include "op_counter.hpp"
#include "residue_quotient.hpp"
#include "rps.hpp"

namespace gf2rps {

struct BarrettContext {
    Gf2Poly p, g, h, mu;
    std::int64_t n_deg = 0;  // N
    std::int64_t alpha = 0;  // deg G
    std::int64_t beta = 0;   // deg H

    // Residue-system attachment; null for a dense-only context.
    RpsContextPtr rps;
    std::vector<std::size_t> g_indices, h_indices;
    ResidueVector p_res, mu_res;
    QuotientPlan quot_g, quot_h; // divisor sets G and H
    BexPlan ext_g, ext_h;        // known sets: the respective complements

    bool has_rps() const { return static_cast<bool>(rps); }
};

namespace detail {

inline void validate_quotient_exactness(const Gf2Poly& p, const Gf2Poly& g, const Gf2Poly& h,
                                        std::int64_t n, std::int64_t alpha, std::int64_t beta) {
    if (p.is_zero() || n < 1)
        throw Error(Errc::invalid_modulus, "P must have degree at least 1");
    if (g.is_zero() || h.is_zero())
        throw Error(Errc::bad_argument, "divisor polynomials G and H must be nonzero");
    if (2 * n - 2 > alpha + beta || alpha > n)
        throw Error(Errc::condition_violated,
                    "exact quotients need 2*deg(P)-2 <= deg(G)+deg(H) and deg(G) <= deg(P); got "
                    "deg(P)=" + std::to_string(n) + ", deg(G)=" + std::to_string(alpha) +
                    ", deg(H)=" + std::to_string(beta));
}

} // namespace detail

// Context without a residue system: enough for the dense pipeline.
inline BarrettContext make_dense_context(Gf2Poly p, Gf2Poly g, Gf2Poly h) {
    BarrettContext bc;
    bc.n_deg = p.degree();
    bc.alpha = g.degree();
    bc.beta = h.degree();
    detail::validate_quotient_exactness(p, g, h, bc.n_deg, bc.alpha, bc.beta);
    bc.mu = (g * h) / p;
    bc.p = std::move(p);
    bc.g = std::move(g);
    bc.h = std::move(h);
    return bc;
}

// Returns the indices of the moduli dividing `product`; their product must
// equal it exactly.
inline std::vector<std::size_t> find_factor_indices(const RpsContext& ctx,
                                                    const Gf2Poly& product) {
    std::vector<std::size_t> indices;
    Gf2Poly check = Gf2Poly::one();
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if ((product % ctx.modulus(i)).is_zero()) {
            indices.push_back(i);
            check *= ctx.modulus(i);
        }
    }
    if (check != product)
        throw Error(Errc::index_product_mismatch,
                    "no subset of the moduli multiplies to " + to_hex(product) +
                        "; the divisors found give " + to_hex(check));
    return indices;
}

inline BarrettContext build_barrett_context(Gf2Poly p, Gf2Poly g, Gf2Poly h, RpsContextPtr rps,
                                            std::vector<std::size_t> g_indices,
                                            std::vector<std::size_t> h_indices) {
    BarrettContext bc = make_dense_context(std::move(p), std::move(g), std::move(h));
    if (!rps) throw Error(Errc::bad_argument, "null residue context");
    const RpsContext& ctx = *rps;

    bc.g_indices = detail::checked_indices(ctx, std::move(g_indices), "G index set");
    bc.h_indices = detail::checked_indices(ctx, std::move(h_indices), "H index set");
    Gf2Poly gp = Gf2Poly::one(), hp = Gf2Poly::one();
    for (std::size_t i : bc.g_indices) gp *= ctx.modulus(i);
    for (std::size_t i : bc.h_indices) hp *= ctx.modulus(i);
    if (gp != bc.g)
        throw Error(Errc::index_product_mismatch, "G index set multiplies to " + to_hex(gp) +
                                                      ", expected " + to_hex(bc.g));
    if (hp != bc.h)
        throw Error(Errc::index_product_mismatch, "H index set multiplies to " + to_hex(hp) +
                                                      ", expected " + to_hex(bc.h));

    // Everything the pipeline touches must stay below the system capacity:
    // deg X <= 2N-2 and deg E <= N+beta-2 are the two largest entries in
    // the degree ledger.
    const std::int64_t needed = std::max(2 * bc.n_deg - 2, bc.n_deg + bc.beta - 2);
    if (ctx.total_degree() <= needed)
        throw Error(Errc::condition_violated,
                    "system capacity " + std::to_string(ctx.total_degree()) +
                        " cannot hold intermediates of degree " + std::to_string(needed));
    // The quotient channels must be recoverable afterwards.
    if (!gcd(bc.g, ctx.big_modulus() / bc.g).is_one())
        throw Error(Errc::condition_violated, "G shares a factor with the rest of the system");
    if (!gcd(bc.h, ctx.big_modulus() / bc.h).is_one())
        throw Error(Errc::condition_violated, "H shares a factor with the rest of the system");

    bc.p_res = to_residues(bc.p, ctx);
    bc.mu_res = to_residues(bc.mu, ctx);
    bc.quot_g = make_quotient_plan(ctx, bc.g_indices);
    bc.quot_h = make_quotient_plan(ctx, bc.h_indices);
    bc.ext_g = make_bex_plan(ctx, detail::complement_of(ctx, bc.g_indices));
    bc.ext_h = make_bex_plan(ctx, detail::complement_of(ctx, bc.h_indices));
    bc.rps = std::move(rps);
    return bc;
}

// Convenience builder: wraps P, G, H in a fresh residue system. The moduli
// are the coprime parts of G and H (G itself when G = H, otherwise the
// gcd-split pieces) padded with small irreducibles, smallest first, until
// the capacity exceeds every intermediate degree.
inline BarrettContext build_barrett_context(const Gf2Poly& p, const Gf2Poly& g,
                                            const Gf2Poly& h) {
    if (g.is_zero() || g.degree() < 1 || h.is_zero() || h.degree() < 1)
        throw Error(Errc::bad_argument, "G and H must have degree at least 1");
    std::vector<Gf2Poly> parts;
    if (g == h) {
        parts.push_back(g);
    } else {
        const Gf2Poly d = gcd(g, h);
        if (!d.is_one()) parts.push_back(d);
        if (!(g / d).is_one()) parts.push_back(g / d);
        if (!(h / d).is_one()) parts.push_back(h / d);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                if (!gcd(parts[i], parts[j]).is_one())
                    throw Error(Errc::condition_violated,
                                "G and H do not split into coprime factors; supply an explicit "
                                "residue system instead");
    }

    const std::int64_t n = p.degree();
    const std::int64_t needed = std::max(2 * n - 2, n + h.degree() - 2);
    std::vector<Gf2Poly> moduli = parts;
    std::int64_t have = 0;
    for (const auto& m : parts) have += m.degree();
    const Gf2Poly both = g * h;
    std::int64_t pool_degree = 4;
    std::size_t consumed = 0;
    while (have <= needed || moduli.size() < 2) {
        const auto pool = irreducibles_up_to(pool_degree);
        if (consumed == pool.size()) {
            pool_degree += 2;
            continue;
        }
        for (; consumed < pool.size() && (have <= needed || moduli.size() < 2); ++consumed) {
            const Gf2Poly& cand = pool[consumed];
            if ((both % cand).is_zero()) continue; // already inside G or H
            moduli.push_back(cand);
            have += cand.degree();
        }
    }

    auto rps = std::make_shared<const RpsContext>(std::move(moduli));
    auto g_idx = find_factor_indices(*rps, g);
    auto h_idx = find_factor_indices(*rps, h);
    return build_barrett_context(p, g, h, std::move(rps), std::move(g_idx), std::move(h_idx));
}

// --- dense pipeline --------------------------------------------------------

struct DenseReduction {
    Gf2Poly d, e, q, c;
};

struct DenseProduct {
    Gf2Poly c, q;
};

// Steps 2..5 on a dense X of degree <= 2N-2.
inline DenseReduction dense_barrett_reduce(const Gf2Poly& x, const BarrettContext& bc) {
    if (x.degree() > 2 * bc.n_deg - 2)
        throw Error(Errc::degree_too_large,
                    "X must have degree at most " + std::to_string(2 * bc.n_deg - 2));
    DenseReduction r;
    r.d = x / bc.g;
    // Two sufficient conditions stated alongside the degree one; both are
    // implied by it, so seeing either fire would be reportable news.
    if (r.d.degree() > bc.beta)
        throw Error(Errc::condition_violated, "floor(X/G) exceeds deg(H)");
    if (bc.mu.degree() > bc.beta)
        throw Error(Errc::condition_violated, "mu exceeds deg(H)");
    r.e = r.d * bc.mu;
    r.q = r.e / bc.h;
    r.c = x + r.q * bc.p;
    return r;
}

inline DenseProduct dense_barrett_mpm(const Gf2Poly& a, const Gf2Poly& b,
                                      const BarrettContext& bc) {
    if (a.degree() >= bc.n_deg || b.degree() >= bc.n_deg)
        throw Error(Errc::degree_too_large, "operands must have degree below deg(P)");
    const DenseReduction r = dense_barrett_reduce(a * b, bc);
    return {r.c, r.q};
}

// The classical special case G = u^g_power, H = u^h_power: the divisions
// collapse to shifts. Kept as an independently coded baseline.
inline DenseProduct classic_barrett_mpm(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& p,
                                        std::int64_t g_power, std::int64_t h_power) {
    const std::int64_t n = p.degree();
    if (p.is_zero() || n < 1)
        throw Error(Errc::invalid_modulus, "P must have degree at least 1");
    if (g_power < 0 || h_power < 0 || 2 * n - 2 > g_power + h_power || g_power > n)
        throw Error(Errc::condition_violated,
                    "exact quotients need 2*deg(P)-2 <= g_power+h_power and g_power <= deg(P)");
    if (a.degree() >= n || b.degree() >= n)
        throw Error(Errc::degree_too_large, "operands must have degree below deg(P)");
    const Gf2Poly mu =
        Gf2Poly::monomial(static_cast<std::size_t>(g_power + h_power)) / p;
    const Gf2Poly x = a * b;
    const Gf2Poly d = x >> static_cast<std::size_t>(g_power);
    const Gf2Poly e = d * mu;
    const Gf2Poly q = e >> static_cast<std::size_t>(h_power);
    return {x + q * p, q};
}

// --- residue pipeline ------------------------------------------------------

struct MpmStep {
    std::string label;
    OpCounter ops;
};

struct MpmTrace {
    std::vector<MpmStep> steps;
    OpCounter total;
    // Residues of Q: full for the standard order, known only outside the H
    // index set when the last two steps are swapped.
    ResidueVector quotient;
};

namespace detail {

inline void trace_step(MpmTrace* trace, OpCounter& total, const char* label,
                       const OpCounter& ops) {
    total += ops;
    if (trace) trace->steps.push_back({label, ops});
}

// Steps 2..5 (or the swapped 2..4a,5,6) on residues of X.
inline ResidueVector ba_mpm_core(const ResidueVector& x, const BarrettContext& bc, bool swapped,
                                 MpmTrace* trace, bool parallel) {
    const RpsContext& ctx = *bc.rps;
    OpCounter total;
    if (trace && !trace->steps.empty()) total = trace->total;

    OpCounter ops;
    ResidueVector d = quotient_run(x, bc.quot_g, ops, parallel);
    trace_step(trace, total, "2a", ops);

    ops = OpCounter{};
    d = bex_extend_run(d, bc.ext_g, nullptr, ops, parallel);
    trace_step(trace, total, "2b", ops);

    ops = OpCounter{};
    ResidueVector e(ctx.size());
    parallel_for(0, ctx.size(), parallel, [&](std::size_t i) {
        e.values[i] = ctx.mul_mod(i, d.values[i], bc.mu_res.values[i]);
        e.known[i] = true;
    });
    ops.mmult += ctx.size();
    trace_step(trace, total, "3", ops);

    ops = OpCounter{};
    ResidueVector q = quotient_run(e, bc.quot_h, ops, parallel);
    trace_step(trace, total, "4a", ops);

    ResidueVector c(ctx.size());
    if (!swapped) {
        ops = OpCounter{};
        q = bex_extend_run(q, bc.ext_h, nullptr, ops, parallel);
        trace_step(trace, total, "4b", ops);

        ops = OpCounter{};
        parallel_for(0, ctx.size(), parallel, [&](std::size_t i) {
            c.values[i] = x.values[i] + ctx.mul_mod(i, q.values[i], bc.p_res.values[i]);
            c.known[i] = true;
        });
        ops.mmult += ctx.size();
        ops.madd += ctx.size();
        trace_step(trace, total, "5", ops);
    } else {
        // Remainder first on the channels where Q is already known, then
        // one base extension for C instead of one for Q. Valid whenever
        // deg(C) <= N-1 fits in those channels; saves |H| of each op.
        ops = OpCounter{};
        const auto& live = bc.ext_h.known_indices; // complement of the H set
        parallel_for(0, live.size(), parallel, [&](std::size_t t) {
            const std::size_t i = live[t];
            c.values[i] = x.values[i] + ctx.mul_mod(i, q.values[i], bc.p_res.values[i]);
            c.known[i] = true;
        });
        ops.mmult += live.size();
        ops.madd += live.size();
        trace_step(trace, total, "5", ops);

        ops = OpCounter{};
        c = bex_extend_run(c, bc.ext_h, nullptr, ops, parallel);
        trace_step(trace, total, "6", ops);
    }

    if (trace) {
        trace->total = total;
        trace->quotient = std::move(q);
    }
    return c;
}

inline ResidueVector ba_mpm_impl(const ResidueVector& a, const ResidueVector& b,
                                 const BarrettContext& bc, bool swapped, MpmTrace* trace,
                                 bool parallel) {
    if (!bc.has_rps())
        throw Error(Errc::bad_argument, "context has no residue system attached");
    const RpsContext& ctx = *bc.rps;
    if (a.size() != ctx.size() || b.size() != ctx.size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!a.fully_known() || !b.fully_known())
        throw Error(Errc::partial_input, "multiplication needs every input channel");
    if (swapped && ctx.total_degree() - bc.beta <= bc.n_deg - 1)
        throw Error(Errc::swap_condition_violated,
                    "swapping the last two steps needs the remainder to fit outside the H "
                    "channels: capacity - deg(H) must exceed deg(P) - 1");
    if (trace) *trace = MpmTrace{};

    OpCounter ops;
    ResidueVector x(ctx.size());
    parallel_for(0, ctx.size(), parallel, [&](std::size_t i) {
        x.values[i] = ctx.mul_mod(i, a.values[i], b.values[i]);
        x.known[i] = true;
    });
    ops.mmult += ctx.size();
    OpCounter total;
    trace_step(trace, total, "1", ops);
    if (trace) trace->total = total;

    return ba_mpm_core(x, bc, swapped, trace, parallel);
}

} // namespace detail

// C = A*B mod P computed entirely on residue vectors.
inline ResidueVector ba_mpm(const ResidueVector& a, const ResidueVector& b,
                            const BarrettContext& bc, MpmTrace* trace = nullptr,
                            bool parallel = false) {
    return detail::ba_mpm_impl(a, b, bc, false, trace, parallel);
}

// Same result, with the final remainder and base-extension steps swapped.
inline ResidueVector ba_mpm_swapped(const ResidueVector& a, const ResidueVector& b,
                                    const BarrettContext& bc, MpmTrace* trace = nullptr,
                                    bool parallel = false) {
    return detail::ba_mpm_impl(a, b, bc, true, trace, parallel);
}

// Entry point for callers that already hold the residues of X = A*B.
inline ResidueVector ba_mpm_reduce(const ResidueVector& x, const BarrettContext& bc,
                                   MpmTrace* trace = nullptr, bool parallel = false) {
    if (!bc.has_rps())
        throw Error(Errc::bad_argument, "context has no residue system attached");
    if (x.size() != bc.rps->size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!x.fully_known())
        throw Error(Errc::partial_input, "reduction needs every input channel");
    if (trace) *trace = MpmTrace{};
    return detail::ba_mpm_core(x, bc, false, trace, parallel);
}

// G = H built from P by flipping coefficients in the low half, so that
// G*G = P*P + R with deg(R) < deg(P) and therefore floor(G*G / P) = P.
// choices selects which of the floor((N-1)/2)+1 low coefficients to flip.
inline Gf2Poly suggest_gh_from_p(const Gf2Poly& p, const std::vector<bool>& choices) {
    const std::int64_t n = p.degree();
    if (p.is_zero() || n < 1)
        throw Error(Errc::invalid_modulus, "P must have degree at least 1");
    const std::size_t slots = static_cast<std::size_t>((n - 1) / 2) + 1;
    if (choices.size() != slots)
        throw Error(Errc::bad_argument,
                    "expected " + std::to_string(slots) + " flip choices, got " +
                        std::to_string(choices.size()));
    Gf2Poly g = p;
    for (std::size_t i = 0; i < slots; ++i)
        if (choices[i]) g.set_coeff(i, !g.coeff(i));
    return g;
}

} // namespace gf2rps
