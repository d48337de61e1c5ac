#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include <gf2rps/irreducibles.hpp>
#include <gf2rps/modulus_factory.hpp>

using namespace gf2rps;

namespace {

Gf2Poly xn_plus_1(unsigned n) { return Gf2Poly::monomial(n) + Gf2Poly::one(); }

std::vector<std::int64_t> sorted_degrees(const std::vector<Gf2Poly>& v) {
    std::vector<std::int64_t> d;
    for (const auto& f : v) d.push_back(f.degree());
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("factorization of u^7 + 1", "[factory]") {
    const CosetFactorization f = factor_xn_minus_1(7);
    REQUIRE(f.factors.size() == 3);

    std::vector<Gf2Poly> sorted = f.factors;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] == from_hex("0x3"));
    CHECK(sorted[1] == from_hex("0xb"));
    CHECK(sorted[2] == from_hex("0xd"));
}

TEST_CASE("factorization edge cases", "[factory]") {
    CHECK(factor_xn_minus_1(1).factors == std::vector<Gf2Poly>{from_hex("0x3")});

    CHECK_THROWS_MATCHES(factor_xn_minus_1(4), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::even_n;
                         }));
    CHECK_THROWS_AS(factor_xn_minus_1(0), Error);

    // order of 2 modulo 47 is 23, past the supported field sizes
    CHECK_THROWS_MATCHES(factor_xn_minus_1(47), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::bad_argument;
                         }));
}

TEST_CASE("factor degrees follow the cosets of 2", "[factory]") {
    const CosetFactorization f = factor_xn_minus_1(15);
    CHECK(sorted_degrees(f.factors) == std::vector<std::int64_t>{1, 2, 4, 4, 4});

    Gf2Poly prod = Gf2Poly::one();
    for (const auto& factor : f.factors) {
        CHECK(is_irreducible(factor));
        prod *= factor;
    }
    CHECK(prod == xn_plus_1(15));
}

TEST_CASE("every factorization multiplies back", "[factory]") {
    // odd n with ord_n(2) <= 20; 29 and 37 exceed the supported field sizes
    for (unsigned n : {1u, 3u, 5u, 7u, 9u, 11u, 13u, 15u, 17u, 19u, 21u, 23u, 25u, 27u,
                       31u, 33u, 35u, 39u, 41u}) {
        const CosetFactorization f = factor_xn_minus_1(n);
        Gf2Poly prod = Gf2Poly::one();
        for (const auto& factor : f.factors) prod *= factor;
        CHECK(prod == xn_plus_1(n));
    }
}

TEST_CASE("primitive polynomials", "[factory]") {
    for (unsigned m = 1; m <= 10; ++m) {
        const Gf2Poly& p = detail::primitive_polynomial(m);
        CHECK(p.degree() == static_cast<std::int64_t>(m));
        CHECK(is_irreducible(p));
    }
    CHECK(detail::primitive_polynomial(1) == from_hex("0x3"));
}

TEST_CASE("two block setup at the smallest size", "[factory]") {
    const CyclotomicSetup s = build_cyclotomic_setup(2);
    CHECK(s.big_n == 3);
    CHECK(s.g == xn_plus_1(3));
    CHECK(s.h == s.g);

    REQUIRE(s.rps);
    CHECK(sorted_degrees(s.rps->moduli()) == std::vector<std::int64_t>{1, 2, 4});
    CHECK(s.g_indices == std::vector<std::size_t>{0, 1});
    CHECK(s.rps->big_modulus() * from_hex("0x3") == xn_plus_1(3) * xn_plus_1(5));
}

TEST_CASE("two block setup keeps both degree families small", "[factory]") {
    const CyclotomicSetup s = build_cyclotomic_setup(4);
    CHECK(s.big_n == 15);

    Gf2Poly gprod = Gf2Poly::one();
    for (std::size_t i : s.g_indices) {
        CHECK(s.rps->channel_degree(i) <= 4);
        gprod *= s.rps->modulus(i);
    }
    CHECK(gprod == xn_plus_1(15));

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < s.rps->size(); ++i)
        if (std::find(s.g_indices.begin(), s.g_indices.end(), i) == s.g_indices.end())
            rest.push_back(i);
    CHECK_FALSE(rest.empty());
    for (std::size_t i : rest) CHECK(s.rps->channel_degree(i) <= 8);

    CHECK(s.rps->big_modulus() * from_hex("0x3") == xn_plus_1(15) * xn_plus_1(17));

    // roomy enough for the full pipeline ledger
    CHECK(s.rps->total_degree() > 2 * s.big_n - 2);
}

TEST_CASE("setup range", "[factory]") {
    CHECK_THROWS_AS(build_cyclotomic_setup(1), Error);
    CHECK_THROWS_AS(build_cyclotomic_setup(11), Error);
}

TEST_CASE("irreducibility scan", "[factory]") {
    CHECK(is_irreducible(from_hex("0x3")));
    CHECK(is_irreducible(from_hex("0x7")));
    CHECK(is_irreducible(from_hex("0xb")));
    CHECK_FALSE(is_irreducible(from_hex("0x9")));  // (u+1)(u^2+u+1)
    CHECK_FALSE(is_irreducible(from_hex("0x5")));  // (u+1)^2
    CHECK_FALSE(is_irreducible(Gf2Poly::one()));
    CHECK_FALSE(is_irreducible(Gf2Poly::zero()));

    const auto table = irreducibles_up_to(4);
    CHECK(table.size() == 2 + 1 + 2 + 3);
    for (const auto& p : table) CHECK(is_irreducible(p));
}
