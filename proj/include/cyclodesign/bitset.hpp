#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace cyclo {

/// Fixed-width bitset sized at runtime; the block/support representation.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(std::uint64_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::uint64_t size_bits() const { return nbits_; }

    void set(std::uint64_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
    bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

    template <class Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t x = w_[wi];
            while (x) {
                fn(static_cast<std::uint64_t>(wi) * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

    std::uint64_t intersection_count(const DynBitset& o) const {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    friend bool operator==(const DynBitset&, const DynBitset&) = default;

    /// Order matching lexicographic comparison of the ascending index
    /// lists: the set holding the smallest non-shared index comes first.
    static bool lex_less(const DynBitset& a, const DynBitset& b) {
        for (std::size_t i = 0; i < a.w_.size(); ++i) {
            const std::uint64_t diff = a.w_[i] ^ b.w_[i];
            if (diff) {
                const std::uint64_t low = diff & (~diff + 1);
                return (a.w_[i] & low) != 0;
            }
        }
        return false;
    }

    std::size_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ nbits_;
        for (auto x : w_) {
            h ^= x;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }

private:
    std::uint64_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

struct DynBitsetHash {
    std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

} // namespace cyclo
