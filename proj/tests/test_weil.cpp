#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "cyclodesign/rng.hpp"
#include "cyclodesign/weil.hpp"

using namespace cyclo;

namespace {

// test-only oracle: solve f(x) = -b^{p^l} by trying every field element
SolveResult solve_exhaustive(const FieldCtx& f, std::uint32_t l, Elem a, Elem b) {
    const Elem apl = f.frobenius(a, l);
    const Elem rhs = f.neg(f.frobenius(b, l));
    SolveResult r;
    for (Elem x = 0; x < f.q(); ++x) {
        const Elem fx = f.add(f.mul(apl, f.frobenius(x, (2 * l) % f.m())), f.mul(a, x));
        if (fx == rhs) {
            if (!r.solvable) r.representative = x;
            r.solvable = true;
            ++r.solution_count;
        }
    }
    return r;
}

} // namespace

TEST_CASE("trivial weil sums") {
    const FieldCtx f = build_field(3, 4);
    CHECK(weil_sum_bruteforce(f, 2, 0, 0) == CycInt::from_integer(3, 81));
    for (Elem b = 1; b < f.q(); b += 11)
        CHECK(weil_sum_bruteforce(f, 2, 0, b).is_zero());
    CHECK_THROWS_AS(weil_sum_closed(f, 2, 0, 1), ZeroCoefficientError);
    CHECK_THROWS_AS(weil_sum_bruteforce(f, 0, 1, 1), BadExponentError);
    CHECK_THROWS_AS(weil_sum_bruteforce(f, 4, 1, 1), BadExponentError);
}

TEST_CASE("closed form equals brute force exhaustively") {
    struct Case {
        std::uint32_t p, m, l;
    };
    // covers every parity class of (m, m/d): d=1 m/d=2, d=1 m/d=3 (odd m),
    // d=2 m/d=2, d=1 m/d=4
    for (const Case c : {Case{3, 2, 1}, Case{3, 3, 1}, Case{3, 3, 2}, Case{3, 4, 2},
                         Case{3, 4, 1}, Case{5, 2, 1}}) {
        const FieldCtx f = build_field(c.p, c.m);
        for (Elem a = 1; a < f.q(); ++a)
            for (Elem b = 0; b < f.q(); ++b) {
                INFO("p=" << c.p << " m=" << c.m << " l=" << c.l << " a=" << a << " b=" << b);
                REQUIRE(weil_sum_closed(f, c.l, a, b) == weil_sum_bruteforce(f, c.l, a, b));
            }
    }
}

TEST_CASE("closed form equals brute force on sampled pairs in GF(3^6)") {
    const FieldCtx f = build_field(3, 6);
    SplitRng rng(2024);
    for (std::uint32_t l : {2u, 3u, 4u}) {
        for (int t = 0; t < 400; ++t) {
            const Elem a = f.exp_table(rng.bounded(f.n()));
            const Elem b = static_cast<Elem>(rng.bounded(f.q()));
            INFO("l=" << l << " a=" << a << " b=" << b);
            REQUIRE(weil_sum_closed(f, l, a, b) == weil_sum_bruteforce(f, l, a, b));
        }
    }
}

TEST_CASE("kernel condition matches exhaustive kernel enumeration") {
    const FieldCtx f = build_field(3, 4);
    const std::uint32_t l = 2;
    std::uint32_t satisfied = 0;
    for (Elem a = 1; a < f.q(); ++a) {
        const bool cond = kernel_condition(f, l, a);
        if (cond) ++satisfied;
        const SolveResult ker = solve_exhaustive(f, l, a, 0);
        // nontrivial kernel iff the condition holds
        CHECK((ker.solution_count > 1) == cond);
        if (cond) CHECK(ker.solution_count == 81); // p^{2d}
    }
    CHECK(satisfied == 8); // (q-1)/(p^d+1)
}

TEST_CASE("kernel condition requires even m/d") {
    const FieldCtx f = build_field(3, 3);
    CHECK_THROWS_AS(kernel_condition(f, 1, 1), OddQuotientError);
}

TEST_CASE("solve_linearized") {
    const FieldCtx f = build_field(3, 4);
    const std::uint32_t l = 2;
    CHECK_THROWS_AS(solve_linearized(f, l, 0, 1), ZeroCoefficientError);

    for (Elem a = 1; a < f.q(); a += 5) {
        // b = 0 is always solvable with representative in the kernel
        const SolveResult zero = solve_linearized(f, l, a, 0);
        CHECK(zero.solvable);

        const bool cond = kernel_condition(f, l, a);
        for (Elem b = 0; b < f.q(); b += 7) {
            const SolveResult got = solve_linearized(f, l, a, b);
            const SolveResult want = solve_exhaustive(f, l, a, b);
            CHECK(got.solvable == want.solvable);
            CHECK(got.solution_count == want.solution_count);
            if (!cond) CHECK(got.solution_count == 1);
            if (got.solvable) {
                // representative must actually solve the equation
                const Elem apl = f.frobenius(a, l);
                const Elem fx = f.add(f.mul(apl, f.frobenius(got.representative, (2 * l) % f.m())),
                                      f.mul(a, got.representative));
                CHECK(fx == f.neg(f.frobenius(b, l)));
            }
        }
    }
}

TEST_CASE("S(a, 0) takes the two displayed values in GF(3^4), l = 2") {
    const FieldCtx f = build_field(3, 4);
    for (Elem a = 1; a < f.q(); ++a) {
        const CycInt s = weil_sum_closed(f, 2, a, 0);
        REQUIRE(s.is_rational());
        if (kernel_condition(f, 2, a))
            CHECK(s.rational_value() == 81); // -(-1)^{m/2d} p^{m/2+d}
        else
            CHECK(s.rational_value() == -9); // (-1)^{m/2d} p^{m/2}
    }
}

TEST_CASE("squared magnitude lands in {p^m, p^{m+2d}, 0}") {
    const FieldCtx f = build_field(3, 4);
    SplitRng rng(99);
    for (int t = 0; t < 300; ++t) {
        const Elem a = f.exp_table(rng.bounded(f.n()));
        const Elem b = static_cast<Elem>(rng.bounded(f.q()));
        const CycInt s = weil_sum_bruteforce(f, 2, a, b);
        const CycInt mag = s.norm_squared();
        REQUIRE(mag.is_rational());
        const std::int64_t v = mag.rational_value();
        CHECK((v == 81 || v == 6561 || v == 0));
    }
}

TEST_CASE("galois twist permutes the scalar multiples of a sum") {
    // replacing zeta by zeta^c permutes { S(a y, b y) : y in F_p^* }
    const FieldCtx f = build_field(3, 4);
    SplitRng rng(7);
    for (int t = 0; t < 50; ++t) {
        const Elem a = f.exp_table(rng.bounded(f.n()));
        const Elem b = static_cast<Elem>(rng.bounded(f.q()));
        std::vector<std::vector<std::int64_t>> orbit, twisted;
        for (Elem y = 1; y < 3; ++y) {
            const CycInt s = weil_sum_bruteforce(f, 2, f.mul(a, y), f.mul(b, y));
            orbit.push_back(s.coeffs());
            twisted.push_back(s.galois(2).coeffs());
        }
        std::sort(orbit.begin(), orbit.end());
        std::sort(twisted.begin(), twisted.end());
        CHECK(orbit == twisted);
    }
}
