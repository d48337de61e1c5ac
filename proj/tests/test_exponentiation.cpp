#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <gf2rps/exponentiation.hpp>
#include <gf2rps/modulus_factory.hpp>
#include <gf2rps/oracle.hpp>

#include "test_util.hpp"

using namespace gf2rps;
using testutil::random_poly_below;

namespace {

BarrettContext cyclotomic_context(unsigned p_exp, const Gf2Poly& p) {
    const CyclotomicSetup setup = build_cyclotomic_setup(p_exp);
    return build_barrett_context(p, setup.g, setup.h, setup.rps, setup.g_indices,
                                 setup.h_indices);
}

} // namespace

TEST_CASE("exponent edge cases", "[mpe]") {
    const BarrettContext bc = cyclotomic_context(3, from_hex("0x83"));
    const ResidueVector a = to_residues(from_hex("0x6f"), *bc.rps);

    MpeStats stats;
    const ResidueVector e0 = ba_mpe(a, 0, bc, &stats);
    CHECK(crt_reconstruct(e0, *bc.rps).is_one());
    CHECK(stats.squarings == 0);
    CHECK(stats.multiplies == 0);

    const ResidueVector e1 = ba_mpe(a, 1, bc, &stats);
    CHECK(crt_reconstruct(e1, *bc.rps) == from_hex("0x6f"));
    CHECK(stats.squarings == 0);
    CHECK(stats.multiplies == 0);
}

TEST_CASE("binary decomposition cost", "[mpe]") {
    const BarrettContext bc = cyclotomic_context(3, from_hex("0x83"));
    const ResidueVector a = to_residues(from_hex("0x6f"), *bc.rps);

    MpeStats stats;
    ba_mpe(a, 5, bc, &stats); // 101b: square twice, multiply once
    CHECK(stats.squarings == 2);
    CHECK(stats.multiplies == 1);
    CHECK(stats.ops.mmult > 0);

    ba_mpe(a, 8, bc, &stats); // 1000b: square three times, fold once
    CHECK(stats.squarings == 3);
    CHECK(stats.multiplies == 1);
}

TEST_CASE("matches the reference exponentiation", "[mpe]") {
    const BarrettContext bc = cyclotomic_context(3, from_hex("0x83"));
    std::mt19937_64 rng(51);
    for (int t = 0; t < 60; ++t) {
        const Gf2Poly a = random_poly_below(rng, 7);
        const Uint128 e = rng() % (1u << 16);
        const ResidueVector got = ba_mpe(to_residues(a, *bc.rps), e, bc);
        CHECK(crt_reconstruct(got, *bc.rps) == oracle::naive_mpe(a, e, from_hex("0x83")));
    }
}

TEST_CASE("wide exponents", "[mpe]") {
    const BarrettContext bc = cyclotomic_context(2, from_hex("0xb"));
    const Gf2Poly a = from_hex("0x6");
    const Uint128 e = (Uint128(1) << 64) | 1; // needs more than 64 bits

    MpeStats stats;
    const ResidueVector got = ba_mpe(to_residues(a, *bc.rps), e, bc, &stats);
    CHECK(stats.squarings == 64);
    CHECK(crt_reconstruct(got, *bc.rps) == oracle::naive_mpe(a, e, from_hex("0xb")));
}

TEST_CASE("exponent law", "[mpe]") {
    const BarrettContext bc = cyclotomic_context(3, from_hex("0x9d"));
    std::mt19937_64 rng(52);
    for (int t = 0; t < 30; ++t) {
        const Gf2Poly a = random_poly_below(rng, 7);
        const Uint128 e1 = rng() % 4096;
        const Uint128 e2 = rng() % 4096;
        const ResidueVector ra = to_residues(a, *bc.rps);
        const ResidueVector left = ba_mpe(ra, e1 + e2, bc);
        const ResidueVector right = ba_mpm(ba_mpe(ra, e1, bc), ba_mpe(ra, e2, bc), bc);
        CHECK(left == right);
    }
}

TEST_CASE("input validation", "[mpe]") {
    const BarrettContext dense = make_dense_context(from_hex("0x43"), from_hex("0x41"),
                                                    from_hex("0x41"));
    CHECK_THROWS_MATCHES(ba_mpe(ResidueVector(5), 3, dense), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::bad_argument;
                         }));

    const BarrettContext bc = cyclotomic_context(2, from_hex("0xb"));
    ResidueVector partial = to_residues(from_hex("0x6"), *bc.rps);
    partial.known[0] = false;
    CHECK_THROWS_MATCHES(ba_mpe(partial, 3, bc), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::partial_input;
                         }));
}
