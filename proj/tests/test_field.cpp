#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cyclodesign/field.hpp"

using namespace cyclo;

TEST_CASE("field sizes and table invariants") {
    const FieldCtx f9 = build_field(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.n() == 8);
    const FieldCtx f81 = build_field(3, 4);
    CHECK(f81.q() == 81);
    CHECK(f81.n() == 80);

    CHECK(f81.exp_table(0) == 1);
    for (Elem e = 1; e < f81.q(); ++e)
        CHECK(f81.exp_table(f81.log_table(e)) == e);
}

TEST_CASE("field construction rejects bad input") {
    CHECK_THROWS_AS(build_field(4, 2), NotPrimeError);
    CHECK_THROWS_AS(build_field(9, 1), NotPrimeError);
    CHECK_THROWS_AS(build_field(2, 5), EvenCharacteristicError);
    // x^2 + 1 over F_3: its root has order 4, not 8
    CHECK_THROWS_AS(build_field(3, 2, std::vector<std::uint8_t>{1, 0}), NotPrimitivePolynomialError);
    CHECK_THROWS_AS(build_field(3, 17), FieldTooLargeError);
}

TEST_CASE("modulus selection is deterministic and accepts explicit monic form") {
    const FieldCtx a = build_field(3, 4);
    const FieldCtx b = build_field(3, 4);
    CHECK(a.modulus() == b.modulus());
    const FieldCtx c = build_field(3, 4, a.modulus()); // m+1 coefficients, monic
    CHECK(c.modulus() == a.modulus());
    CHECK(c.exp_table(17) == a.exp_table(17));
}

TEST_CASE("multiplication identities") {
    const FieldCtx f = build_field(3, 4);
    for (Elem e = 0; e < f.q(); ++e) {
        CHECK(f.mul(1, e) == e);
        CHECK(f.mul(e, 0) == 0);
    }
    const Elem alpha = f.exp_table(1);
    CHECK(f.pow(alpha, f.n()) == 1);

    // primitivity: alpha^(n/r) != 1 for every prime r | n
    std::uint32_t n = f.n();
    for (std::uint32_t r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (prime) CHECK(f.pow(alpha, f.n() / r) != 1);
    }

    // pow agrees with iterated multiplication
    Elem acc = 1;
    for (std::uint32_t k = 0; k < 30; ++k) {
        CHECK(f.pow(alpha, k) == acc);
        acc = f.mul(acc, alpha);
    }
}

TEST_CASE("frobenius") {
    const FieldCtx f = build_field(3, 4);
    for (Elem x = 0; x < f.q(); ++x) {
        CHECK(f.frobenius(x, 0) == x);
        CHECK(f.frobenius(f.frobenius(x, 2), 2) == x); // order m
        Elem cube = f.mul(x, f.mul(x, x));
        CHECK(f.frobenius(x, 1) == cube);
    }
    CHECK(f.frobenius(0, 2) == 0);
}

TEST_CASE("trace is linear, balanced and Frobenius-invariant") {
    const FieldCtx f9 = build_field(3, 2);
    CHECK(f9.trace(0) == 0);
    for (Elem x = 0; x < 9; ++x)
        for (Elem y = 0; y < 9; ++y)
            CHECK(f9.trace(f9.add(x, y)) == (f9.trace(x) + f9.trace(y)) % 3);

    const FieldCtx f = build_field(3, 4);
    std::uint32_t counts[3] = {0, 0, 0};
    for (Elem x = 0; x < f.q(); ++x) {
        ++counts[f.trace(x)];
        CHECK(f.trace(f.frobenius(x, 1)) == f.trace(x));
    }
    CHECK(counts[0] == 27);
    CHECK(counts[1] == 27);
    CHECK(counts[2] == 27);
}

TEST_CASE("quadratic character") {
    const FieldCtx f = build_field(3, 4);
    CHECK(f.quadratic_character(0) == 0);
    int squares = 0;
    for (Elem e = 1; e < f.q(); ++e) {
        CHECK(f.quadratic_character(f.mul(e, e)) == 1);
        if (f.quadratic_character(e) == 1) ++squares;
    }
    CHECK(squares == 40);

    // multiplicativity
    for (Elem x = 1; x < f.q(); ++x)
        for (Elem y = 1; y < f.q(); y += 7)
            CHECK(f.quadratic_character(f.mul(x, y)) ==
                  f.quadratic_character(x) * f.quadratic_character(y));
}

TEST_CASE("restriction of the quadratic character to prime-field units") {
    // eta on F_p^*: trivial for even m, matches eta' for odd m
    const FieldCtx feven = build_field(3, 4);
    for (Elem c = 1; c < 3; ++c) CHECK(feven.quadratic_character(c) == 1);

    const FieldCtx fodd = build_field(3, 3);
    CHECK(fodd.quadratic_character(1) == 1);  // eta'(1) = 1
    CHECK(fodd.quadratic_character(2) == -1); // eta'(2) = -1 (2 is not a square mod 3)

    const FieldCtx f5 = build_field(5, 3);
    for (Elem c = 1; c < 5; ++c) {
        const int etap = (c == 1 || c == 4) ? 1 : -1; // squares mod 5: 1, 4
        CHECK(f5.quadratic_character(c) == etap);
    }
}

TEST_CASE("subfield membership") {
    const FieldCtx f = build_field(3, 4);
    // GF(9) inside GF(81): exponents divisible by 10
    std::set<Elem> sub;
    sub.insert(0);
    for (int k = 0; k < 8; ++k) sub.insert(f.pow(f.exp_table(10), k));
    CHECK(sub.size() == 9);
    for (Elem e = 0; e < f.q(); ++e)
        CHECK(f.in_subfield(e, 2) == (sub.count(e) > 0));
}

TEST_CASE("digit round trip") {
    const FieldCtx f = build_field(3, 4);
    for (Elem e = 0; e < f.q(); e += 5) CHECK(f.from_digits(f.digits(e)) == e);
}
