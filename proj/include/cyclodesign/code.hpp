#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "cyclodesign/errors.hpp"
#include "cyclodesign/field.hpp"
#include "cyclodesign/parallel.hpp"
#include "cyclodesign/weil.hpp"

namespace cyclo {

/// Parity class of (m, d = gcd(m, l)) selecting which closed-form weight
/// table applies. unit_gcd (d = 1) admits brute-force work only.
enum class Regime { odd_odd, even_odd, even_quotient, half, unit_gcd };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::odd_odd: return "odd_odd";
        case Regime::even_odd: return "even_odd";
        case Regime::even_quotient: return "even_quotient";
        case Regime::half: return "half";
        case Regime::unit_gcd: return "unit_gcd";
    }
    return "?";
}

/// The trace code over GF(p) of length q = p^m whose codewords are
///   x |-> Tr(a x^{p^l+1} + b x) + h,   b in F_q, h in F_p,
/// with a ranging over F_q, except that for l = m/2 the exponent map lands
/// in the half-degree subfield and a is restricted to it (otherwise
/// distinct a would repeat codewords).
struct CodeSpec {
    const FieldCtx* field = nullptr;
    std::uint32_t l = 0;
    std::uint32_t d = 0;            // gcd(m, l)
    Regime regime = Regime::unit_gcd;
    bool subfield_a = false;        // true exactly when m == 2l
    std::uint32_t a_step = 1;       // exponent stride of nonzero a-domain elements
    std::uint64_t a_count = 0;      // |a-domain| including 0
    std::uint64_t id_count = 0;     // a_count * q * p
    std::uint32_t dimension = 0;    // log_p(id_count)

    const FieldCtx& ctx() const { return *field; }
};

/// Index (a, b, h) of one codeword; the map id -> codeword is injective
/// and F_p-linear in (a, b, h).
struct CodewordId {
    Elem a = 0;
    Elem b = 0;
    std::uint32_t h = 0;

    friend bool operator==(const CodewordId&, const CodewordId&) = default;
};

/// weight -> multiplicity A_i, plus length p^m and dimension log_p(#ids).
struct WeightDistribution {
    std::map<std::uint64_t, std::uint64_t> entries;
    std::uint64_t length = 0;
    std::uint32_t dimension = 0;

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto& [w, c] : entries) s += c;
        return s;
    }
};

enum class Method { brute, analytic };

inline constexpr std::uint64_t kDefaultBudget = 387420489; // 3^18 ids

inline CodeSpec make_spec(const FieldCtx& f, std::uint32_t l) {
    if (l < 1 || l >= f.m())
        throw BadExponentError("spec requires 1 <= l <= m-1");
    CodeSpec s;
    s.field = &f;
    s.l = l;
    s.d = std::gcd(f.m(), l);
    const std::uint32_t m = f.m();
    if (s.d == 1)
        s.regime = Regime::unit_gcd;
    else if (m % 2 == 1)
        s.regime = Regime::odd_odd;
    else if ((m / s.d) % 2 == 1)
        s.regime = Regime::even_odd;
    else if (m == 2 * s.d)
        s.regime = Regime::half;
    else
        s.regime = Regime::even_quotient;

    s.subfield_a = (m == 2 * l);
    if (s.subfield_a) {
        std::uint32_t sub_q = 1;
        for (std::uint32_t i = 0; i < m / 2; ++i) sub_q *= f.p();
        s.a_step = f.n() / (sub_q - 1); // = p^{m/2} + 1
        s.a_count = sub_q;
        s.dimension = m + m / 2 + 1;
    } else {
        s.a_step = 1;
        s.a_count = f.q();
        s.dimension = 2 * m + 1;
    }
    s.id_count = s.a_count * f.q() * f.p();
    return s;
}

/// The a-domain in canonical order: 0 first, then alpha^{k * a_step}.
inline std::vector<Elem> a_domain_elements(const CodeSpec& s) {
    const FieldCtx& f = s.ctx();
    std::vector<Elem> out;
    out.reserve(s.a_count);
    out.push_back(0);
    for (std::uint64_t k = 0; k + 1 < s.a_count; ++k)
        out.push_back(f.exp_table(k * s.a_step));
    return out;
}

inline void validate_id(const CodeSpec& s, const CodewordId& id) {
    const FieldCtx& f = s.ctx();
    if (id.a >= f.q() || id.b >= f.q() || id.h >= f.p())
        throw DomainViolationError("codeword id out of range");
    if (s.subfield_a && !f.in_subfield(id.a, f.m() / 2))
        throw DomainViolationError("a lies outside the subfield a-domain");
}

namespace detail {

/// Shared tables for the enumeration kernels: doubled trace-of-power table
/// (so sums of two exponent indices need no reduction) and the exponent map
/// j -> j*(p^l+1) mod n.
struct EnumTables {
    std::vector<std::uint8_t> tau2;  // trace(alpha^(k mod n)) for k in [0, 2n)
    std::vector<std::uint32_t> uidx; // (j * (p^l+1)) mod n

    EnumTables(const FieldCtx& f, std::uint32_t l) {
        const std::uint32_t n = f.n();
        tau2.resize(2 * n);
        const auto& exp = f.exp_all();
        const auto& tr = f.trace_all();
        for (std::uint32_t k = 0; k < n; ++k) {
            tau2[k] = tr[exp[k]];
            tau2[k + n] = tau2[k];
        }
        std::uint64_t step = 1;
        for (std::uint32_t i = 0; i < l; ++i) step = step * f.p() % n;
        step = (step + 1) % n;
        uidx.resize(n);
        std::uint32_t iu = 0;
        for (std::uint32_t j = 0; j < n; ++j) {
            uidx[j] = iu;
            iu += static_cast<std::uint32_t>(step);
            if (iu >= n) iu -= n;
        }
    }
};

/// Count, for one (a, b) pair, how many x give each trace value
/// Tr(a x^{p^l+1} + b x); out[p] receives the counts. The x = 0 term is
/// included.
inline void pair_trace_histogram(const FieldCtx& f, const EnumTables& t, Elem a, Elem b,
                                 std::uint64_t* out) {
    const std::uint32_t p = f.p(), n = f.n();
    for (std::uint32_t i = 0; i < p; ++i) out[i] = 0;
    out[0] = 1; // x = 0
    const std::uint8_t* tau2 = t.tau2.data();
    const std::uint32_t* uidx = t.uidx.data();
    if (a != 0 && b != 0) {
        const std::uint32_t la = f.log_table(a), lb = f.log_table(b);
        std::uint32_t cnt[64] = {0}; // 2p-1 <= 64 for p <= 32; p is small here
        if (2 * p - 1 <= 64) {
            for (std::uint32_t j = 0; j < n; ++j)
                ++cnt[tau2[la + uidx[j]] + tau2[lb + j]];
            for (std::uint32_t s = 0; s < 2 * p - 1; ++s) out[s % p] += cnt[s];
        } else {
            for (std::uint32_t j = 0; j < n; ++j) {
                std::uint32_t s = tau2[la + uidx[j]] + tau2[lb + j];
                if (s >= p) s -= p;
                ++out[s];
            }
        }
    } else if (a != 0) {
        const std::uint32_t la = f.log_table(a);
        for (std::uint32_t j = 0; j < n; ++j) ++out[tau2[la + uidx[j]]];
    } else if (b != 0) {
        const std::uint32_t lb = f.log_table(b);
        for (std::uint32_t j = 0; j < n; ++j) ++out[tau2[lb + j]];
    } else {
        out[0] += n;
    }
}

/// Closed-form weights of the p codewords (a, b, 0..p-1); out[h] = weight.
/// One linear solve per call. Requires regime != unit_gcd semantics
/// (i.e. the closed forms apply for every d >= 1, but callers gate on the
/// spec's regime).
inline void analytic_pair_weights(const CodeSpec& s, Elem a, Elem b, std::uint64_t* out) {
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p(), m = f.m();
    const std::uint64_t q = f.q();
    const std::uint64_t pm1 = q / p; // p^{m-1}

    if (a == 0 && b == 0) {
        out[0] = 0;
        for (std::uint32_t h = 1; h < p; ++h) out[h] = q;
        return;
    }
    if (a == 0) {
        for (std::uint32_t h = 0; h < p; ++h) out[h] = q - pm1;
        return;
    }

    std::uint64_t plp1 = 1;
    for (std::uint32_t i = 0; i < s.l; ++i) plp1 *= p;
    plp1 += 1;

    const std::uint32_t md = m / s.d;
    const SolveResult sr = solve_linearized(f, s.l, a, b);

    auto ipw = [](std::int64_t base, std::uint32_t e) {
        std::int64_t r = 1;
        while (e--) r *= base;
        return r;
    };

    if (md % 2 == 1) {
        const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
        const int eta_a = f.quadratic_character(a);
        if (m % 2 == 1) {
            // T = p^{m-1} + sigma p^{(m-1)/2} eta(a) eta'(h - t0) for h != t0
            const int sigma = ((((p - 1) / 2) * ((m + 1) / 2)) % 2 == 0) ? 1 : -1;
            const std::int64_t amp = ipw(p, (m - 1) / 2);
            for (std::uint32_t h = 0; h < p; ++h) {
                if (h == t0) {
                    out[h] = q - pm1;
                } else {
                    const int chi = prime_quadratic_character(p, static_cast<std::int64_t>(h) - t0);
                    out[h] = q - (pm1 + sigma * amp * eta_a * chi);
                }
            }
        } else {
            // T = p^{m-1} + eps1 eta(a) p^{m/2-1} ((p-1) if h == t0 else -1)
            const int eps1 = ((((p - 1) / 2) * (m / 2) + (m - 1)) % 2 == 0) ? 1 : -1;
            const std::int64_t amp = ipw(p, m / 2 - 1);
            for (std::uint32_t h = 0; h < p; ++h) {
                const std::int64_t mult = (h == t0) ? static_cast<std::int64_t>(p - 1) : -1;
                out[h] = q - (pm1 + eps1 * eta_a * amp * mult);
            }
        }
        return;
    }

    const int eps = (md / 2) % 2 == 0 ? 1 : -1;
    if (!kernel_condition(f, s.l, a)) {
        const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
        const std::int64_t amp = ipw(p, m / 2 - 1);
        for (std::uint32_t h = 0; h < p; ++h) {
            const std::int64_t mult = (h == t0) ? static_cast<std::int64_t>(p - 1) : -1;
            out[h] = q - (pm1 + eps * amp * mult);
        }
        return;
    }
    if (!sr.solvable) {
        for (std::uint32_t h = 0; h < p; ++h) out[h] = q - pm1;
        return;
    }
    const std::uint32_t t0 = f.trace(f.mul(a, f.pow(sr.representative, plp1)));
    const std::int64_t amp = ipw(p, m / 2 + s.d - 1);
    for (std::uint32_t h = 0; h < p; ++h) {
        const std::int64_t mult = (h == t0) ? static_cast<std::int64_t>(p - 1) : -1;
        out[h] = q - (pm1 - eps * amp * mult);
    }
}

} // namespace detail

/// The codeword as a vector over F_p, coordinate 0 at the field element 0
/// and coordinate 1+k at alpha^k.
inline std::vector<std::uint8_t> codeword_vector(const CodeSpec& s, const CodewordId& id) {
    validate_id(s, id);
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p(), n = f.n();
    detail::EnumTables t(f, s.l);
    std::vector<std::uint8_t> v(f.q());
    v[0] = static_cast<std::uint8_t>(id.h);
    const bool ha = id.a != 0, hb = id.b != 0;
    const std::uint32_t la = ha ? f.log_table(id.a) : 0;
    const std::uint32_t lb = hb ? f.log_table(id.b) : 0;
    for (std::uint32_t j = 0; j < n; ++j) {
        std::uint32_t c = id.h;
        if (ha) c += t.tau2[la + t.uidx[j]];
        if (hb) c += t.tau2[lb + j];
        v[1 + j] = static_cast<std::uint8_t>(c % p);
    }
    return v;
}

/// Hamming weight by zero-counting: p^m minus the number of x with
/// Tr(a x^{p^l+1} + b x) = -h. Streams over the field, no vector is built.
inline std::uint64_t weight_bruteforce(const CodeSpec& s, const CodewordId& id) {
    validate_id(s, id);
    const FieldCtx& f = s.ctx();
    detail::EnumTables t(f, s.l);
    std::uint64_t hist[64];
    detail::pair_trace_histogram(f, t, id.a, id.b, hist);
    return f.q() - hist[(f.p() - id.h) % f.p()];
}

/// Same weight via the closed-form evaluation (one linear solve).
inline std::uint64_t weight_analytic(const CodeSpec& s, const CodewordId& id) {
    if (s.regime == Regime::unit_gcd)
        throw UnsupportedRegimeError("no closed form for gcd(m, l) = 1");
    validate_id(s, id);
    std::uint64_t w[64];
    detail::analytic_pair_weights(s, id.a, id.b, w);
    return w[id.h];
}

/// Exact weight distribution by enumerating all ids. Per (a, b) pair one
/// trace histogram (brute) or one linear solve (analytic) yields all p
/// values of h at once. Enumeration refuses to start past `budget` ids.
inline WeightDistribution weight_distribution(const CodeSpec& s, Method method,
                                              std::uint64_t budget = kDefaultBudget,
                                              std::uint32_t threads = 1) {
    const FieldCtx& f = s.ctx();
    if (s.id_count > budget)
        throw BudgetExceededError("enumeration of " + std::to_string(s.id_count) +
                                  " ids exceeds budget " + std::to_string(budget));
    if (method == Method::analytic && s.regime == Regime::unit_gcd)
        throw UnsupportedRegimeError("no closed form for gcd(m, l) = 1");

    const std::vector<Elem> domain = a_domain_elements(s);
    const detail::EnumTables tables(f, s.l);
    const std::uint32_t p = f.p();
    const std::uint64_t q = f.q();

    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(
        std::min<std::uint64_t>(threads ? threads : 1, domain.size()));

    parallel_chunks(domain.size(), threads, [&](std::size_t chunk, std::uint64_t lo, std::uint64_t hi) {
        auto& local = partial[chunk];
        std::uint64_t hist[64];
        std::uint64_t w[64];
        for (std::uint64_t ai = lo; ai < hi; ++ai) {
            const Elem a = domain[ai];
            for (std::uint64_t b = 0; b < q; ++b) {
                if (method == Method::brute) {
                    detail::pair_trace_histogram(f, tables, a, static_cast<Elem>(b), hist);
                    for (std::uint32_t h = 0; h < p; ++h)
                        ++local[q - hist[(p - h) % p]];
                } else {
                    detail::analytic_pair_weights(s, a, static_cast<Elem>(b), w);
                    for (std::uint32_t h = 0; h < p; ++h) ++local[w[h]];
                }
            }
        }
    });

    WeightDistribution out;
    out.length = q;
    out.dimension = s.dimension;
    for (auto& part : partial)
        for (auto& [w, c] : part) out.entries[w] += c;
    return out;
}

/// The closed-form weight distribution, emitted directly from the
/// per-regime multiplicity formulas without enumeration.
inline WeightDistribution analytic_distribution_table(const CodeSpec& s) {
    if (s.regime == Regime::unit_gcd)
        throw UnsupportedRegimeError("no closed-form table for gcd(m, l) = 1");
    const FieldCtx& f = s.ctx();
    const std::uint64_t p = f.p(), q = f.q();
    const std::uint32_t m = f.m(), d = s.d;
    const std::uint64_t w0 = q / p * (p - 1); // p^{m-1}(p-1)

    auto pw = [&](std::uint32_t e) {
        std::uint64_t r = 1;
        while (e--) r *= p;
        return r;
    };

    WeightDistribution out;
    out.length = q;
    out.dimension = s.dimension;
    auto& e = out.entries;
    e[0] = 1;
    e[q] = p - 1;
    switch (s.regime) {
        case Regime::odd_odd: {
            e[w0] += p * (pw(m - 1) + 1) * (q - 1);
            e[w0 + pw((m - 1) / 2)] += q * (p - 1) * (q - 1) / 2;
            e[w0 - pw((m - 1) / 2)] += q * (p - 1) * (q - 1) / 2;
            break;
        }
        case Regime::even_odd: {
            e[w0] += p * (q - 1);
            e[w0 + pw(m / 2 - 1)] += q * (p - 1) * (q - 1) / 2;
            e[w0 - pw(m / 2 - 1)] += q * (p - 1) * (q - 1) / 2;
            e[w0 + pw(m / 2 - 1) * (p - 1)] += q * (q - 1) / 2;
            e[w0 - pw(m / 2 - 1) * (p - 1)] += q * (q - 1) / 2;
            break;
        }
        case Regime::even_quotient: {
            const bool plus = ((m / d) / 2) % 2 == 0; // sign of (-1)^{m/2d}
            const std::uint64_t pd1 = pw(d) + 1;
            const std::uint64_t small = pw(m / 2 - 1), big = pw(m / 2 + d - 1);
            const std::uint64_t cosets = (q - 1) / pd1; // (p^d+1) | (p^m-1) for even m/d
            e[w0] += p * (pw(m - d) - pw(m - 2 * d) + 1) * (q - 1);
            e[plus ? w0 - small * (p - 1) : w0 + small * (p - 1)] += pw(m + d) * cosets;
            e[plus ? w0 + small : w0 - small] += pw(m + d) * (p - 1) * cosets;
            e[plus ? w0 + big * (p - 1) : w0 - big * (p - 1)] += pw(m - 2 * d) * cosets;
            e[plus ? w0 - big : w0 + big] += pw(m - 2 * d) * (p - 1) * cosets;
            break;
        }
        case Regime::half: {
            const std::uint64_t sq = pw(m / 2);
            e[w0] += p * (q - 1);
            e[w0 - pw(m / 2 - 1)] += q * (sq - 1) * (p - 1);
            e[w0 + pw(m / 2 - 1) * (p - 1)] += q * (sq - 1);
            break;
        }
        case Regime::unit_gcd:
            break;
    }
    return out;
}

} // namespace cyclo
