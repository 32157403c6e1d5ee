#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclodesign/errors.hpp"

namespace cyclo {

/// A field element of GF(p^m), encoded as the base-p digit string of its
/// coefficient vector: rep = sum_i c_i p^i with c_i the coefficient of x^i
/// modulo the field polynomial. rep = 0 is the additive identity, rep = 1
/// the multiplicative identity, and prime-field elements are exactly the
/// reps 0..p-1.
using Elem = std::uint32_t;

/// Immutable description of GF(p^m) with a distinguished primitive element
/// alpha (the class of x). Construction builds full exponential/discrete-log
/// tables plus a trace table, so all arithmetic afterwards is table lookups;
/// the instance is safe to share across threads.
///
/// Fields are capped at q <= 2^26 elements (table memory).
class FieldCtx {
public:
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t n() const { return n_; } // q - 1, the multiplicative order

    /// Monic field polynomial, low-degree-first, length m+1, last entry 1.
    const std::vector<std::uint8_t>& modulus() const { return modulus_; }

    /// alpha^k for 0 <= k < n; exp_table(0) == 1.
    Elem exp_table(std::uint64_t k) const { return exp_[k]; }
    /// Discrete log base alpha of a nonzero element.
    std::uint32_t log_table(Elem e) const { return log_[e]; }

    const std::vector<Elem>& exp_all() const { return exp_; }
    const std::vector<std::uint8_t>& trace_all() const { return trace_; }

    Elem add(Elem a, Elem b) const {
        Elem r = 0;
        for (std::uint32_t pw = 1; a || b; pw *= p_) {
            std::uint32_t da = a % p_, db = b % p_;
            std::uint32_t s = da + db;
            if (s >= p_) s -= p_;
            r += s * pw;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    Elem neg(Elem a) const {
        Elem r = 0;
        for (std::uint32_t pw = 1; a; pw *= p_) {
            std::uint32_t d = a % p_;
            if (d) r += (p_ - d) * pw;
            a /= p_;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t k = log_[a] + log_[b];
        if (k >= n_) k -= n_;
        return exp_[k];
    }

    /// Scale by a prime-field scalar c in [0, p).
    Elem scale(Elem a, std::uint32_t c) const {
        if (a == 0 || c == 0) return 0;
        return mul(a, static_cast<Elem>(c % p_));
    }

    Elem inverse(Elem a) const { return exp_[(n_ - log_[a]) % n_]; }

    /// a^k for arbitrary k >= 0 (0^0 = 1).
    Elem pow(Elem a, std::uint64_t k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * (k % n_)) % n_;
        return exp_[e];
    }

    /// x^{p^l}; the exponent l is taken modulo m.
    Elem frobenius(Elem x, std::uint32_t l) const {
        if (x == 0) return 0;
        return exp_[(static_cast<std::uint64_t>(log_[x]) * frob_exp_[l % m_]) % n_];
    }

    /// Trace onto the prime field, a value in [0, p).
    std::uint32_t trace(Elem x) const { return trace_[x]; }

    /// Quadratic character: 1 on nonzero squares, -1 on nonsquares, 0 at 0.
    int quadratic_character(Elem x) const {
        if (x == 0) return 0;
        return (log_[x] & 1u) ? -1 : 1;
    }

    /// Membership in the subfield GF(p^k); k must divide m.
    bool in_subfield(Elem x, std::uint32_t k) const {
        if (x == 0) return true;
        std::uint32_t sub_n = 1;
        for (std::uint32_t i = 0; i < k; ++i) sub_n *= p_;
        sub_n -= 1;
        return log_[x] % (n_ / sub_n) == 0;
    }

    /// The p-adic digits of an element's rep, length m.
    std::vector<std::uint8_t> digits(Elem e) const {
        std::vector<std::uint8_t> d(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            d[i] = static_cast<std::uint8_t>(e % p_);
            e /= p_;
        }
        return d;
    }

    Elem from_digits(const std::vector<std::uint8_t>& d) const {
        Elem e = 0;
        for (std::uint32_t i = m_; i-- > 0;) e = e * p_ + d[i] % p_;
        return e;
    }

    friend FieldCtx build_field(std::uint32_t p, std::uint32_t m,
                                std::optional<std::vector<std::uint8_t>> modulus);

private:
    FieldCtx() = default;

    // Walks powers of the class of x under `mod`; returns false unless the
    // walk has period exactly n (i.e. the polynomial is primitive). On
    // success exp_/log_ are left filled.
    bool try_build_tables(const std::vector<std::uint8_t>& mod) {
        exp_.assign(n_, 0);
        log_.assign(q_, 0);
        std::vector<std::uint8_t> cur(m_, 0);
        cur[0] = 1;
        Elem e = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (i > 0 && e == 1) return false; // early return to 1: not primitive
            if (e != 1 && log_[e] != 0) return false; // repeated element
            exp_[i] = e;
            log_[e] = i;
            // multiply by x modulo mod
            std::uint8_t lead = cur[m_ - 1];
            for (std::uint32_t j = m_; j-- > 1;) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (lead) {
                for (std::uint32_t j = 0; j < m_; ++j) {
                    std::uint32_t s = (static_cast<std::uint32_t>(lead) * mod[j]) % p_;
                    cur[j] = static_cast<std::uint8_t>((cur[j] + p_ - s) % p_);
                }
            }
            e = 0;
            for (std::uint32_t j = m_; j-- > 0;) e = e * p_ + cur[j];
        }
        return e == 1; // full period
    }

    void build_trace_table() {
        // traces of the monomial basis x^j via Frobenius orbits
        std::vector<std::uint32_t> basis_trace(m_, 0);
        for (std::uint32_t j = 0; j < m_; ++j) {
            Elem acc = 0;
            Elem xj = exp_[j]; // x^j for j < m
            for (std::uint32_t i = 0; i < m_; ++i) acc = add(acc, frobenius(xj, i));
            basis_trace[j] = acc; // lands in the prime field
        }
        trace_.assign(q_, 0);
        for (Elem e = 0; e < q_; ++e) {
            std::uint32_t t = 0;
            Elem v = e;
            for (std::uint32_t j = 0; j < m_; ++j) {
                t += (v % p_) * basis_trace[j];
                v /= p_;
            }
            trace_[e] = static_cast<std::uint8_t>(t % p_);
        }
    }

    std::uint32_t p_ = 0, m_ = 0, q_ = 0, n_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint8_t> trace_;
    std::vector<std::uint32_t> frob_exp_; // p^l mod n for l in [0, m)
};

namespace detail {

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

} // namespace detail

/// Construct GF(p^m). When no modulus is supplied the lexicographically
/// smallest primitive polynomial (coefficients compared low-degree-first)
/// is selected, so element encodings are reproducible across runs.
/// The modulus may be given as its m non-leading coefficients or as all
/// m+1 coefficients of a monic polynomial, low-degree-first either way.
inline FieldCtx build_field(std::uint32_t p, std::uint32_t m,
                            std::optional<std::vector<std::uint8_t>> modulus = std::nullopt) {
    if (!detail::is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw EvenCharacteristicError("characteristic 2 is not supported");
    if (m < 1) throw BadExponentError("extension degree must be >= 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > (1ULL << 26))
            throw FieldTooLargeError("p^m exceeds the 2^26 table cap");
    }

    FieldCtx f;
    f.p_ = p;
    f.m_ = m;
    f.q_ = static_cast<std::uint32_t>(q);
    f.n_ = f.q_ - 1;
    f.frob_exp_.resize(m);
    for (std::uint32_t l = 0; l < m; ++l) {
        std::uint64_t e = 1;
        for (std::uint32_t i = 0; i < l; ++i) e = (e * p) % f.n_;
        f.frob_exp_[l] = static_cast<std::uint32_t>(e);
    }

    if (modulus) {
        std::vector<std::uint8_t> mod = *modulus;
        if (mod.size() == m + 1) {
            if (mod.back() % p != 1)
                throw NotPrimitivePolynomialError("modulus is not monic");
            mod.pop_back();
        }
        if (mod.size() != m)
            throw NotPrimitivePolynomialError("modulus must have degree m");
        for (auto& c : mod) c = static_cast<std::uint8_t>(c % p);
        if (!f.try_build_tables(mod))
            throw NotPrimitivePolynomialError("supplied modulus is not primitive over F_p");
        f.modulus_ = std::move(mod);
    } else {
        // lexicographic scan, c_0 most significant in the comparison
        std::vector<std::uint8_t> mod(m, 0);
        bool found = false, exhausted = false;
        while (!exhausted) {
            if (mod[0] != 0 && f.try_build_tables(mod)) { // x | poly is never primitive
                found = true;
                break;
            }
            exhausted = true;
            for (std::uint32_t i = m; i-- > 0;) {
                if (++mod[i] < p) { exhausted = false; break; }
                mod[i] = 0;
            }
        }
        if (!found) throw NotPrimitivePolynomialError("no primitive polynomial found");
        f.modulus_ = mod;
    }
    f.modulus_.push_back(1);
    f.build_trace_table();
    return f;
}

} // namespace cyclo
