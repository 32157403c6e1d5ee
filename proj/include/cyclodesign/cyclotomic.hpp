#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "cyclodesign/errors.hpp"

namespace cyclo {

/// Exact element of Z[zeta_p], zeta_p a primitive p-th root of unity, held
/// in the power basis {zeta^0, ..., zeta^{p-2}} under the reduction
/// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}). The basis is a free Z-basis,
/// so the coefficient vector is canonical and equality is coefficient-wise.
/// All character sums in this library are carried exactly in this ring;
/// no floating-point complex arithmetic is ever used.
class CycInt {
public:
    CycInt() : p_(0) {}

    explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1, 0) {}

    static CycInt from_integer(std::uint32_t p, std::int64_t v) {
        CycInt r(p);
        r.c_[0] = v;
        return r;
    }

    /// zeta^k (k taken mod p).
    static CycInt zeta_power(std::uint32_t p, std::int64_t k) {
        CycInt r(p);
        std::int64_t kk = k % static_cast<std::int64_t>(p);
        if (kk < 0) kk += p;
        if (kk < p - 1) {
            r.c_[kk] = 1;
        } else {
            for (auto& x : r.c_) x = -1;
        }
        return r;
    }

    std::uint32_t prime() const { return p_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto x : c_)
            if (x) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    std::int64_t rational_value() const {
        if (!is_rational()) throw CheckError("CycInt is not a rational integer");
        return c_[0];
    }

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

    CycInt& operator+=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    CycInt& operator-=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    CycInt& operator*=(std::int64_t s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, std::int64_t s) { return a *= s; }
    friend CycInt operator*(std::int64_t s, CycInt a) { return a *= s; }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        std::uint32_t p = a.p_;
        // convolve exponents mod p, then reduce zeta^{p-1}
        std::vector<std::int64_t> acc(p, 0);
        for (std::uint32_t i = 0; i < p - 1; ++i) {
            if (!a.c_[i]) continue;
            for (std::uint32_t j = 0; j < p - 1; ++j) {
                if (!b.c_[j]) continue;
                acc[(i + j) % p] += a.c_[i] * b.c_[j];
            }
        }
        CycInt r(p);
        for (std::uint32_t k = 0; k < p - 1; ++k) r.c_[k] = acc[k] - acc[p - 1];
        return r;
    }

    /// Galois twist zeta -> zeta^s for s coprime to p; s = p-1 is complex
    /// conjugation.
    CycInt galois(std::uint32_t s) const {
        if (s % p_ == 0) throw ConfigError("galois exponent must be a unit mod p");
        std::vector<std::int64_t> acc(p_, 0);
        for (std::uint32_t i = 0; i < p_ - 1; ++i)
            acc[(static_cast<std::uint64_t>(i) * s) % p_] += c_[i];
        CycInt r(p_);
        for (std::uint32_t k = 0; k < p_ - 1; ++k) r.c_[k] = acc[k] - acc[p_ - 1];
        return r;
    }

    CycInt conjugate() const { return galois(p_ - 1); }

    /// |z|^2 = z * conj(z); rational for the sums arising here.
    CycInt norm_squared() const { return *this * conjugate(); }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(c_[i]);
        }
        return s + "]";
    }

    friend std::ostream& operator<<(std::ostream& os, const CycInt& z) {
        return os << z.to_string();
    }

private:
    void check_same(const CycInt& o) const {
        if (p_ != o.p_)
            throw MixedModulusError("mixing Z[zeta_" + std::to_string(p_) + "] with Z[zeta_" +
                                    std::to_string(o.p_) + "]");
    }

    std::uint32_t p_;
    std::vector<std::int64_t> c_;
};

/// Quadratic residue character of the prime field, eta'(0) = 0.
inline int prime_quadratic_character(std::uint32_t p, std::int64_t v) {
    std::int64_t r = v % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    // Euler criterion by repeated squaring
    std::uint64_t base = static_cast<std::uint64_t>(r), acc = 1, e = (p - 1) / 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

/// The quadratic Gauss sum sum_{v in F_p^*} eta'(v) zeta^v. Its square is
/// p* = (-1)^{(p-1)/2} p.
inline CycInt gauss_sum(std::uint32_t p) {
    CycInt g(p);
    for (std::uint32_t v = 1; v < p; ++v)
        g += CycInt::zeta_power(p, v) * prime_quadratic_character(p, v);
    return g;
}

} // namespace cyclo
