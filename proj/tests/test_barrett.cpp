#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <gf2rps/barrett.hpp>
#include <gf2rps/modulus_factory.hpp>
#include <gf2rps/oracle.hpp>

#include "test_util.hpp"

using namespace gf2rps;
using testutil::random_poly_below;
using testutil::random_poly_of_degree;

namespace {

RpsContextPtr example_system() {
    return build_context_ptr({from_hex("0x5"), from_hex("0x15"), from_hex("0x2"),
                              from_hex("0xb"), from_hex("0xd")});
}

BarrettContext example_residue_context() {
    return build_barrett_context(from_hex("0x43"), from_hex("0x41"), from_hex("0x41"),
                                 example_system(), {0, 1}, {0, 1});
}

OpCounter step_ops(const MpmTrace& trace, const std::string& label) {
    for (const auto& s : trace.steps)
        if (s.label == label) return s.ops;
    FAIL("no step labeled " + label);
    return {};
}

} // namespace

TEST_CASE("exactness precondition", "[barrett]") {
    const Gf2Poly p = from_hex("0x43"); // degree 6

    // boundary: deg G + deg H = 2 deg P - 2 exactly (4 + 6 = 10)
    CHECK_NOTHROW(make_dense_context(p, from_hex("0x13"), from_hex("0x63")));
    // one below the boundary (4 + 5 = 9)
    CHECK_THROWS_MATCHES(make_dense_context(p, from_hex("0x13"), from_hex("0x2b")), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::condition_violated;
                         }));
    // deg G above deg P is out even when the sum is comfortable
    CHECK_THROWS_AS(make_dense_context(p, from_hex("0x83"), from_hex("0x143")), Error);
    CHECK_THROWS_AS(make_dense_context(p, Gf2Poly::zero(), from_hex("0x143")), Error);
}

TEST_CASE("precomputed ratio", "[barrett]") {
    const BarrettContext bc = make_dense_context(from_hex("0x43"), from_hex("0x41"),
                                                 from_hex("0x41"));
    CHECK(bc.mu == from_hex("0x43"));
    CHECK_FALSE(bc.has_rps());

    // G = H = P collapses the ratio to P itself
    const Gf2Poly p = from_hex("0x43");
    CHECK(make_dense_context(p, p, p).mu == p);
}

TEST_CASE("dense pipeline on the frozen instance", "[barrett]") {
    const BarrettContext bc = make_dense_context(from_hex("0x43"), from_hex("0x41"),
                                                 from_hex("0x41"));
    const DenseReduction r = dense_barrett_reduce(from_hex("0x715"), bc);
    CHECK(r.d == from_hex("0x1c"));
    CHECK(r.e == from_hex("0x724"));
    CHECK(r.q == from_hex("0x1c"));
    CHECK(r.c == from_hex("0x31"));

    CHECK_THROWS_MATCHES(dense_barrett_reduce(Gf2Poly::monomial(11), bc), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::degree_too_large;
                         }));
}

TEST_CASE("dense pipeline equals the reference on random instances", "[barrett]") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 500; ++t) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 40);
        std::int64_t alpha = n - static_cast<std::int64_t>(rng() % 3);
        if (alpha < 1) alpha = 1;
        std::int64_t beta = 2 * n - 2 - alpha + static_cast<std::int64_t>(rng() % 3);
        if (beta < 1) beta = 1;

        const Gf2Poly p = random_poly_of_degree(rng, n);
        const Gf2Poly g = random_poly_of_degree(rng, alpha);
        const Gf2Poly h = random_poly_of_degree(rng, beta);
        const Gf2Poly a = random_poly_below(rng, n);
        const Gf2Poly b = random_poly_below(rng, n);

        const BarrettContext bc = make_dense_context(p, g, h);
        const DenseProduct got = dense_barrett_mpm(a, b, bc);
        oracle::Coeffs qc;
        const oracle::Coeffs rc =
            oracle::mod(oracle::mul(oracle::to_coeffs(a), oracle::to_coeffs(b)),
                        oracle::to_coeffs(p), &qc);
        CHECK(got.c == oracle::from_coeffs(rc));
        CHECK(got.q == oracle::from_coeffs(qc));
    }
}

TEST_CASE("power of u divisors reproduce the classical special case", "[barrett]") {
    CHECK(classic_barrett_mpm(Gf2Poly::one(), Gf2Poly::one(), from_hex("0x43"), 6, 6).c ==
          Gf2Poly::one());
    CHECK(classic_barrett_mpm(Gf2Poly::one(), Gf2Poly::one(), from_hex("0x43"), 6, 6).q ==
          Gf2Poly::zero());

    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 30);
        const Gf2Poly p = random_poly_of_degree(rng, n);
        const Gf2Poly a = random_poly_below(rng, n);
        const Gf2Poly b = random_poly_below(rng, n);

        const DenseProduct classic = classic_barrett_mpm(a, b, p, n, n);
        CHECK(classic.c == oracle::naive_mpm(a, b, p));

        const BarrettContext bc = make_dense_context(p, Gf2Poly::monomial(n),
                                                     Gf2Poly::monomial(n));
        const DenseProduct general = dense_barrett_mpm(a, b, bc);
        CHECK(general.c == classic.c);
        CHECK(general.q == classic.q);
    }
}

TEST_CASE("residue pipeline on the frozen instance", "[barrett]") {
    const BarrettContext bc = example_residue_context();
    REQUIRE(bc.has_rps());
    CHECK(crt_reconstruct(bc.mu_res, *bc.rps) == from_hex("0x43"));

    MpmTrace trace;
    const ResidueVector c =
        ba_mpm_reduce(to_residues(from_hex("0x715"), *bc.rps), bc, &trace);
    CHECK(crt_reconstruct(c, *bc.rps) == from_hex("0x31"));
    CHECK(crt_reconstruct(trace.quotient, *bc.rps) == from_hex("0x1c"));

    CHECK(trace.total.madd == 41);
    CHECK(trace.total.mmult == 46);

    CHECK(step_ops(trace, "2a").madd == 7);
    CHECK(step_ops(trace, "2b").madd == 11);
    CHECK(step_ops(trace, "3").madd == 0);
    CHECK(step_ops(trace, "3").mmult == 5);
    CHECK(step_ops(trace, "4a").madd == 7);
    CHECK(step_ops(trace, "4b").madd == 11);
    CHECK(step_ops(trace, "5").madd == 5);
    CHECK(step_ops(trace, "5").mmult == 5);
}

TEST_CASE("residue pipeline equals the dense pipeline", "[barrett]") {
    const BarrettContext bc = example_residue_context();
    std::mt19937_64 rng(43);
    for (int t = 0; t < 300; ++t) {
        const Gf2Poly a = random_poly_below(rng, 6);
        const Gf2Poly b = random_poly_below(rng, 6);
        const ResidueVector c = ba_mpm(to_residues(a, *bc.rps), to_residues(b, *bc.rps), bc);
        CHECK(crt_reconstruct(c, *bc.rps) == oracle::naive_mpm(a, b, from_hex("0x43")));
    }

    const ResidueVector zero =
        ba_mpm(to_residues(Gf2Poly::zero(), *bc.rps), to_residues(Gf2Poly::zero(), *bc.rps), bc);
    CHECK(crt_reconstruct(zero, *bc.rps).is_zero());
}

TEST_CASE("context assembly validates the factor sets", "[barrett]") {
    const auto ctx = example_system();
    CHECK_THROWS_MATCHES(find_factor_indices(*ctx, from_hex("0x43")), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::index_product_mismatch;
                         }));
    CHECK(find_factor_indices(*ctx, from_hex("0x41")) == std::vector<std::size_t>{0, 1});

    // a system too small for the degree ledger is rejected outright
    CHECK_THROWS_AS(
        build_barrett_context(from_hex("0x43"), from_hex("0x41"), from_hex("0x41"),
                              build_context_ptr({from_hex("0x5"), from_hex("0x15")}), {0, 1},
                              {0, 1}),
        Error);
}

TEST_CASE("swapped tail variant", "[barrett]") {
    const CyclotomicSetup setup = build_cyclotomic_setup(3);
    const BarrettContext bc = build_barrett_context(
        from_hex("0x83"), setup.g, setup.h, setup.rps, setup.g_indices, setup.h_indices);

    std::mt19937_64 rng(44);
    for (int t = 0; t < 100; ++t) {
        const Gf2Poly a = random_poly_below(rng, 7);
        const Gf2Poly b = random_poly_below(rng, 7);
        const ResidueVector ra = to_residues(a, *bc.rps);
        const ResidueVector rb = to_residues(b, *bc.rps);

        MpmTrace normal, swapped;
        const ResidueVector c0 = ba_mpm(ra, rb, bc, &normal);
        const ResidueVector c1 = ba_mpm_swapped(ra, rb, bc, &swapped);
        CHECK(c0 == c1);

        const std::size_t b_count = bc.h_indices.size();
        CHECK(normal.total.madd - swapped.total.madd == b_count);
        CHECK(normal.total.mmult - swapped.total.mmult == b_count);
    }
}

TEST_CASE("swapped tail needs spare system degree", "[barrett]") {
    // total degree 11 exactly matches the ledger floor, leaving no headroom
    const auto tight = build_context_ptr(
        {from_hex("0x5"), from_hex("0x15"), from_hex("0x25")});
    const BarrettContext bc = build_barrett_context(from_hex("0x43"), from_hex("0x41"),
                                                    from_hex("0x41"), tight, {0, 1}, {0, 1});
    const ResidueVector ra = to_residues(from_hex("0x2f"), *bc.rps);
    const ResidueVector rb = to_residues(from_hex("0x2e"), *bc.rps);
    CHECK(crt_reconstruct(ba_mpm(ra, rb, bc), *bc.rps) ==
          oracle::naive_mpm(from_hex("0x2f"), from_hex("0x2e"), from_hex("0x43")));
    CHECK_THROWS_MATCHES(ba_mpm_swapped(ra, rb, bc), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::swap_condition_violated;
                         }));
}

TEST_CASE("parallel channel evaluation is bit identical", "[barrett]") {
    const BarrettContext bc = example_residue_context();
    std::mt19937_64 rng(45);
    for (int t = 0; t < 20; ++t) {
        const ResidueVector ra = to_residues(random_poly_below(rng, 6), *bc.rps);
        const ResidueVector rb = to_residues(random_poly_below(rng, 6), *bc.rps);
        CHECK(ba_mpm(ra, rb, bc) == ba_mpm(ra, rb, bc, nullptr, true));
    }
}

TEST_CASE("self assembled residue system", "[barrett]") {
    const BarrettContext bc =
        build_barrett_context(from_hex("0x43"), from_hex("0x41"), from_hex("0x41"));
    REQUIRE(bc.has_rps());
    CHECK(bc.rps->total_degree() > 10);

    std::mt19937_64 rng(46);
    for (int t = 0; t < 100; ++t) {
        const Gf2Poly a = random_poly_below(rng, 6);
        const Gf2Poly b = random_poly_below(rng, 6);
        const ResidueVector c = ba_mpm(to_residues(a, *bc.rps), to_residues(b, *bc.rps), bc);
        CHECK(crt_reconstruct(c, *bc.rps) == oracle::naive_mpm(a, b, from_hex("0x43")));
    }
}

TEST_CASE("derived divisor keeps the ratio equal to the modulus", "[barrett]") {
    const Gf2Poly p = from_hex("0x43"); // degree 6, so 3 flip slots
    const std::vector<bool> keep(3, false);
    CHECK(suggest_gh_from_p(p, keep) == p);

    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 24);
        const Gf2Poly pp = random_poly_of_degree(rng, n);
        std::vector<bool> choices(static_cast<std::size_t>((n - 1) / 2) + 1);
        for (auto&& c : choices) c = rng() % 2;
        const Gf2Poly g = suggest_gh_from_p(pp, choices);
        CHECK((g * g) / pp == pp);
    }

    CHECK_THROWS_AS(suggest_gh_from_p(p, std::vector<bool>(4, false)), Error);
    CHECK_THROWS_AS(suggest_gh_from_p(Gf2Poly::one(), {}), Error);
}
