#pragma once

#include <cstdint>
#include <numeric>

#include "cyclodesign/cyclotomic.hpp"
#include "cyclodesign/errors.hpp"
#include "cyclodesign/field.hpp"
#include "cyclodesign/fp_linalg.hpp"

namespace cyclo {

/// Outcome of solving the linearized equation f(x) = -b^{p^l} with
/// f(x) = a^{p^l} x^{p^{2l}} + a x. When f is a bijection the solution is
/// unique; otherwise there are either no solutions or exactly p^{2d} of
/// them, d = gcd(m, l).
struct SolveResult {
    bool solvable = false;
    Elem representative = 0;
    std::uint64_t solution_count = 0;
};

namespace detail {

inline void check_weil_exponent(const FieldCtx& f, std::uint32_t l) {
    if (l < 1 || l >= f.m())
        throw BadExponentError("exponent l must satisfy 1 <= l <= m-1");
}

inline std::int64_t ipow(std::int64_t base, std::uint32_t e) {
    std::int64_t r = 1;
    while (e--) r *= base;
    return r;
}

} // namespace detail

/// F_p-matrix of x -> a^{p^l} x^{p^{2l}} + a x in the monomial basis.
inline FpMatrix linearized_matrix(const FieldCtx& f, std::uint32_t l, Elem a) {
    const std::uint32_t m = f.m(), p = f.p();
    const Elem apl = f.frobenius(a, l);
    FpMatrix mat(p, m, m);
    for (std::uint32_t j = 0; j < m; ++j) {
        const Elem xj = f.exp_table(j); // x^j
        const Elem img = f.add(f.mul(apl, f.frobenius(xj, 2 * l)), f.mul(a, xj));
        Elem v = img;
        for (std::uint32_t i = 0; i < m; ++i) {
            mat.at(i, j) = static_cast<std::uint8_t>(v % p);
            v /= p;
        }
    }
    return mat;
}

inline SolveResult solve_linearized(const FieldCtx& f, std::uint32_t l, Elem a, Elem b) {
    if (a == 0) throw ZeroCoefficientError("solve_linearized requires a != 0");
    detail::check_weil_exponent(f, l);
    const std::uint32_t m = f.m(), p = f.p();

    const Elem rhs_elem = f.neg(f.frobenius(b, l));
    std::vector<std::uint8_t> rhs(m);
    Elem v = rhs_elem;
    for (std::uint32_t i = 0; i < m; ++i) {
        rhs[i] = static_cast<std::uint8_t>(v % p);
        v /= p;
    }

    const FpMatrix mat = linearized_matrix(f, l, a);
    const FpSolution s = solve_fp(mat, rhs);
    SolveResult r;
    if (!s.solvable) return r;
    r.solvable = true;
    std::vector<std::uint8_t> d(s.particular.begin(), s.particular.end());
    r.representative = f.from_digits(d);
    r.solution_count = 1;
    for (std::size_t i = 0; i < m - s.rank; ++i) r.solution_count *= p;
    return r;
}

/// Whether f(x) = a^{p^l} x^{p^{2l}} + a x has a nontrivial kernel, decided
/// by the power criterion a^{(q-1)/(p^d+1)} = (-1)^{m/2d}. Only defined for
/// m/d even; for m/d odd the map is always a bijection.
inline bool kernel_condition(const FieldCtx& f, std::uint32_t l, Elem a) {
    if (a == 0) throw ZeroCoefficientError("kernel_condition requires a != 0");
    detail::check_weil_exponent(f, l);
    const std::uint32_t d = std::gcd(f.m(), l);
    const std::uint32_t md = f.m() / d;
    if (md % 2 != 0)
        throw OddQuotientError("kernel condition undefined for odd m/d (map is a bijection)");
    std::uint64_t pd = 1;
    for (std::uint32_t i = 0; i < d; ++i) pd *= f.p();
    const std::uint64_t e = f.n() / (pd + 1);
    const Elem lhs = f.pow(a, e);
    const Elem rhs = (md / 2) % 2 == 0 ? Elem{1} : f.neg(1);
    return lhs == rhs;
}

/// S(a, b) = sum over x in F_q of zeta^{Tr(a x^{p^l+1} + b x)}, computed
/// exactly by histogramming trace values over the multiplicative group.
inline CycInt weil_sum_bruteforce(const FieldCtx& f, std::uint32_t l, Elem a, Elem b) {
    detail::check_weil_exponent(f, l);
    const std::uint32_t p = f.p(), n = f.n();
    std::vector<std::uint64_t> hist(p, 0);
    hist[0] += 1; // x = 0
    const auto& exp = f.exp_all();
    const auto& tr = f.trace_all();
    std::uint64_t step = 1;
    for (std::uint32_t i = 0; i < l; ++i) step = step * p % n;
    step = (step + 1) % n; // (p^l + 1) mod n

    std::uint32_t iu = 0;
    if (a != 0 && b != 0) {
        const std::uint32_t la = f.log_table(a), lb = f.log_table(b);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t ka = la + iu;
            if (ka >= n) ka -= n;
            std::uint32_t kb = lb + j;
            if (kb >= n) kb -= n;
            std::uint32_t t = tr[exp[ka]] + tr[exp[kb]];
            if (t >= p) t -= p;
            ++hist[t];
            iu += static_cast<std::uint32_t>(step);
            if (iu >= n) iu -= n;
        }
    } else if (a != 0) {
        const std::uint32_t la = f.log_table(a);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t ka = la + iu;
            if (ka >= n) ka -= n;
            ++hist[tr[exp[ka]]];
            iu += static_cast<std::uint32_t>(step);
            if (iu >= n) iu -= n;
        }
    } else if (b != 0) {
        const std::uint32_t lb = f.log_table(b);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t kb = lb + j;
            if (kb >= n) kb -= n;
            ++hist[tr[exp[kb]]];
        }
    } else {
        hist[0] += n;
    }

    CycInt s(p);
    for (std::uint32_t t = 0; t < p; ++t)
        s += CycInt::zeta_power(p, t) * static_cast<std::int64_t>(hist[t]);
    return s;
}

/// Closed-form S(a, b) for a != 0, assembled exactly in Z[zeta_p].
///
/// With d = gcd(m, l) and x0 any solution of f(x) = -b^{p^l}:
///   m/d odd:   S = (-1)^{m-1} G^m eta(a) zeta^{-Tr(a x0^{p^l+1})}
///              where G is the quadratic Gauss sum of F_p, so G^m is
///              (p*)^{m/2} for even m and (p*)^{(m-1)/2} G for odd m;
///   m/d even, no kernel:  S = (-1)^{m/2d} p^{m/2} zeta^{-Tr(a x0^{p^l+1})};
///   m/d even, kernel:     S = 0 if unsolvable, else
///                          -(-1)^{m/2d} p^{m/2+d} zeta^{-Tr(a x0^{p^l+1})}.
inline CycInt weil_sum_closed(const FieldCtx& f, std::uint32_t l, Elem a, Elem b) {
    if (a == 0) throw ZeroCoefficientError("weil_sum_closed requires a != 0");
    detail::check_weil_exponent(f, l);
    const std::uint32_t p = f.p(), m = f.m();
    const std::uint32_t d = std::gcd(m, l);
    const std::uint32_t md = m / d;

    std::uint64_t plp1 = 1; // p^l + 1
    for (std::uint32_t i = 0; i < l; ++i) plp1 *= p;
    plp1 += 1;

    const SolveResult sr = solve_linearized(f, l, a, b);

    if (md % 2 == 1) {
        const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
        const std::int64_t pstar = (((p - 1) / 2) % 2 == 0) ? static_cast<std::int64_t>(p)
                                                            : -static_cast<std::int64_t>(p);
        CycInt base(p);
        if (m % 2 == 0) {
            // (-1)^{m-1} = -1 here
            base = CycInt::from_integer(p, -detail::ipow(pstar, m / 2));
        } else {
            base = gauss_sum(p) * detail::ipow(pstar, (m - 1) / 2);
        }
        const int eta_a = f.quadratic_character(a);
        return base * eta_a * CycInt::zeta_power(p, -static_cast<std::int64_t>(t0));
    }

    const std::int64_t eps = (md / 2) % 2 == 0 ? 1 : -1;
    if (!kernel_condition(f, l, a)) {
        const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
        return CycInt::zeta_power(p, -static_cast<std::int64_t>(t0)) *
               (eps * detail::ipow(p, m / 2));
    }
    if (!sr.solvable) return CycInt(p);
    const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
    return CycInt::zeta_power(p, -static_cast<std::int64_t>(t0)) *
           (-eps * detail::ipow(p, m / 2 + d));
}

} // namespace cyclo
