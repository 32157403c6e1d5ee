#pragma once

#include <cstdint>
#include <string_view>

namespace cyclo {

/// Deterministic splittable generator (splitmix64 core). Every random
/// choice in the library flows from one user seed through named child
/// streams, so results are reproducible across platforms and thread
/// counts; std engines/distributions are avoided because their output
/// is implementation-defined.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Child stream independent of this one; `label` names the purpose.
    SplitRng split(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        SplitRng base(state_ ^ h);
        return SplitRng(base.next());
    }

    /// Numbered child stream (per-thread / per-chunk splitting).
    SplitRng split(std::uint64_t index) const {
        SplitRng base(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return SplitRng(base.next());
    }

    /// Uniform value in [0, bound); bound > 0. Rejection-free Lemire
    /// reduction with a debiasing retry loop.
    std::uint64_t bounded(std::uint64_t bound) {
        for (;;) {
            std::uint64_t x = next();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (0ULL - bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace cyclo
