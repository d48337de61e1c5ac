#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <gf2rps/base_extension.hpp>

#include "test_util.hpp"

using namespace gf2rps;
using testutil::random_poly_below;

namespace {

RpsContextPtr example_system() {
    return build_context_ptr({from_hex("0x5"), from_hex("0x15"), from_hex("0x2"),
                              from_hex("0xb"), from_hex("0xd")});
}

ResidueVector known_only(const Gf2Poly& x, const RpsContext& ctx,
                         const std::vector<std::size_t>& known) {
    ResidueVector v(ctx.size());
    for (std::size_t i : known) {
        v.values[i] = ctx.reduce(i, x);
        v.known[i] = true;
    }
    return v;
}

} // namespace

TEST_CASE("plan construction", "[bex]") {
    const auto ctx = example_system();
    CHECK_THROWS_MATCHES(make_bex_plan(*ctx, {}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::empty_known_set;
                         }));
    CHECK_THROWS_AS(make_bex_plan(*ctx, {0, 0}), Error);
    CHECK_THROWS_AS(make_bex_plan(*ctx, {9}), Error);

    const BexPlan plan = make_bex_plan(*ctx, {0, 1});
    CHECK(plan.capacity == 6);
    CHECK(plan.m_known == from_hex("0x5") * from_hex("0x15"));
    CHECK(plan.target_indices == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("extension of constants", "[bex]") {
    const auto ctx = example_system();
    BexPlan plan = make_bex_plan(*ctx, {1, 3});

    const ResidueVector zero = bex_extend(known_only(Gf2Poly::zero(), *ctx, {1, 3}), plan);
    REQUIRE(zero.fully_known());
    for (std::size_t i = 0; i < ctx->size(); ++i) CHECK(zero.values[i].is_zero());

    const ResidueVector one = bex_extend(known_only(Gf2Poly::one(), *ctx, {1, 3}), plan);
    for (std::size_t i = 0; i < ctx->size(); ++i) CHECK(one.values[i] == ctx->reduce(i, Gf2Poly::one()));
}

TEST_CASE("output does not depend on the unknown channel seeds", "[bex]") {
    const auto ctx = example_system();
    std::mt19937_64 rng(31);

    for (int t = 0; t < 200; ++t) {
        std::vector<std::size_t> known;
        for (std::size_t i = 0; i < ctx->size(); ++i)
            if (rng() % 2) known.push_back(i);
        if (known.empty()) known.push_back(rng() % ctx->size());
        if (known.size() == ctx->size()) known.pop_back();

        BexPlan plan = make_bex_plan(*ctx, known);
        const Gf2Poly x = random_poly_below(rng, plan.capacity);
        const ResidueVector in = known_only(x, *ctx, known);

        const ResidueVector with_zeros = bex_extend(in, plan);
        const OpCounter ops = plan.ops;

        std::vector<Gf2Poly> ones(plan.target_indices.size(), Gf2Poly::one());
        const ResidueVector with_ones = bex_extend(in, plan, &ones);

        std::vector<Gf2Poly> noise;
        for (std::size_t i = 0; i < plan.target_indices.size(); ++i)
            noise.push_back(random_poly_below(rng, 40)); // oversized on purpose
        const ResidueVector with_noise = bex_extend(in, plan, &noise);

        CHECK(with_zeros == with_ones);
        CHECK(with_zeros == with_noise);
        CHECK(with_zeros == to_residues(x, *ctx));

        const std::size_t a = known.size();
        const std::size_t n = ctx->size();
        CHECK(ops.madd == a * n - a * (a + 1) / 2 + (n - a));
        CHECK(ops.mmult == ops.madd);

        const ResidueVector via_crt = bex_crt(in, plan);
        CHECK(via_crt == with_zeros);
        CHECK(plan.ops.mred == a * (n - a));
    }
}

TEST_CASE("extension leaves known channels untouched and is idempotent", "[bex]") {
    const auto ctx = example_system();
    std::mt19937_64 rng(32);
    BexPlan plan = make_bex_plan(*ctx, {0, 4});
    const Gf2Poly x = random_poly_below(rng, plan.capacity);
    const ResidueVector in = known_only(x, *ctx, {0, 4});

    const ResidueVector once = bex_extend(in, plan);
    CHECK(once.values[0] == in.values[0]);
    CHECK(once.values[4] == in.values[4]);
    CHECK(bex_extend(once, plan) == once);
}

TEST_CASE("declared degree bound is validated", "[bex]") {
    const auto ctx = example_system();
    BexPlan plan = make_bex_plan(*ctx, {0, 1}); // capacity 6
    const ResidueVector in = known_only(from_hex("0x3f"), *ctx, {0, 1});

    CHECK_NOTHROW(bex_extend(in, plan, nullptr, 6));
    CHECK_THROWS_MATCHES(bex_extend(in, plan, nullptr, 7), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::degree_overflow;
                         }));
    CHECK_THROWS_AS(bex_crt(in, plan, 7), Error);
}

TEST_CASE("required channels must be known", "[bex]") {
    const auto ctx = example_system();
    BexPlan plan = make_bex_plan(*ctx, {0, 1});
    ResidueVector in = known_only(from_hex("0x3f"), *ctx, {0, 1});
    in.known[1] = false;
    CHECK_THROWS_MATCHES(bex_extend(in, plan), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::partial_input && e.index_a() == 1;
                         }));
    CHECK_THROWS_AS(bex_extend(ResidueVector(2), plan), Error);
}

TEST_CASE("parallel extension is bit identical", "[bex]") {
    const auto ctx = example_system();
    std::mt19937_64 rng(33);
    BexPlan plan = make_bex_plan(*ctx, {2, 3, 4});
    for (int t = 0; t < 20; ++t) {
        const ResidueVector in =
            known_only(random_poly_below(rng, plan.capacity), *ctx, {2, 3, 4});
        const ResidueVector seq = bex_extend(in, plan);
        const ResidueVector par = bex_extend(in, plan, nullptr, -1, true);
        CHECK(seq == par);
    }
}
