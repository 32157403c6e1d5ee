#include <catch2/catch_amalgamated.hpp>

#include "cyclodesign/cyclotomic.hpp"

using namespace cyclo;

TEST_CASE("power basis reduction") {
    // 1 + zeta + zeta^2 = 0 for p = 3
    CycInt s = CycInt::from_integer(3, 1) + CycInt::zeta_power(3, 1) + CycInt::zeta_power(3, 2);
    CHECK(s.is_zero());
    // zeta * zeta^2 = 1
    CHECK(CycInt::zeta_power(3, 1) * CycInt::zeta_power(3, 2) == CycInt::from_integer(3, 1));
    // rational embedding
    CHECK(CycInt::from_integer(5, -7).is_rational());
    CHECK(CycInt::from_integer(5, -7).rational_value() == -7);
}

TEST_CASE("ring identities") {
    const CycInt one = CycInt::from_integer(7, 1);
    const CycInt z = CycInt::zeta_power(7, 3);
    CHECK(one * z == z);
    CHECK(z * 0 == CycInt(7));
    CHECK((z - z).is_zero());
    // zeta^7 = 1
    CycInt acc = CycInt::from_integer(7, 1);
    for (int i = 0; i < 7; ++i) acc = acc * CycInt::zeta_power(7, 1);
    CHECK(acc == one);
}

TEST_CASE("mixed moduli are rejected") {
    CHECK_THROWS_AS(CycInt::from_integer(3, 1) + CycInt::from_integer(5, 1), MixedModulusError);
    CHECK_THROWS_AS(CycInt::zeta_power(3, 1) * CycInt::zeta_power(7, 1), MixedModulusError);
}

TEST_CASE("gauss sum for p = 3") {
    // zeta - zeta^2 = 1 + 2 zeta in the reduced basis
    const CycInt g = gauss_sum(3);
    CHECK(g.coeffs() == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("gauss sum squares to p*") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const CycInt g = gauss_sum(p);
        const std::int64_t pstar =
            (((p - 1) / 2) % 2 == 0) ? static_cast<std::int64_t>(p) : -static_cast<std::int64_t>(p);
        CHECK(g * g == CycInt::from_integer(p, pstar));
        // |G|^2 = p
        CHECK(g.norm_squared() == CycInt::from_integer(p, p));
    }
}

TEST_CASE("galois twist") {
    const CycInt g = gauss_sum(5);
    // conjugation fixes |.|^2 and twists permute nothing rational
    CHECK(g.conjugate().conjugate() == g);
    CHECK(CycInt::from_integer(5, 42).galois(2) == CycInt::from_integer(5, 42));
    // twist by a square (4 = 2^2 mod 5) fixes the Gauss sum; 2 is a nonsquare
    CHECK(g.galois(4) == g);
    CHECK(g.galois(2) == g * -1);
    CHECK_THROWS_AS(g.galois(5), ConfigError);
}
