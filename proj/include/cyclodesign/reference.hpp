#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclodesign/code.hpp"

namespace cyclo {

/// Published parameters for specific small codes, kept as known-answer
/// data. Reports compare computed results against these and surface any
/// disagreement, rather than silently trusting either side.
struct ReferenceCode {
    std::uint32_t p, l, m;
    std::uint32_t published_dimension;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> enumerator; // nonzero weights
    std::vector<std::pair<std::uint64_t, std::uint64_t>> design_pairs; // (weight, lambda)
};

inline const std::vector<ReferenceCode>& reference_codes() {
    static const std::vector<ReferenceCode> codes = {
        {3, 2, 4, 7,
         {{51, 1296}, {54, 240}, {60, 648}, {81, 2}},
         {{51, 255}, {54, 53}, {60, 177}}},
        {3, 3, 6, 10,
         {{477, 37908}, {486, 2184}, {504, 18954}, {729, 2}},
         {}},
        {3, 2, 6, 10,
         {{468, 265356}, {477, 530712}, {486, 2184}, {495, 530712}, {504, 265356}, {729, 2}},
         {}},
    };
    return codes;
}

inline const ReferenceCode* find_reference(std::uint32_t p, std::uint32_t l, std::uint32_t m) {
    for (const auto& rc : reference_codes())
        if (rc.p == p && rc.l == l && rc.m == m) return &rc;
    return nullptr;
}

struct ReferenceDiscrepancy {
    std::string kind;    // e.g. "dimension"
    std::string detail;
};

/// Compare a computed distribution against the published record, if any.
inline std::vector<ReferenceDiscrepancy> compare_with_reference(std::uint32_t p, std::uint32_t l,
                                                                std::uint32_t m,
                                                                const WeightDistribution& dist) {
    std::vector<ReferenceDiscrepancy> out;
    const ReferenceCode* rc = find_reference(p, l, m);
    if (!rc) return out;

    if (dist.dimension != rc->published_dimension) {
        out.push_back({"dimension",
                       "computed dimension " + std::to_string(dist.dimension) +
                           " (from the multiplicity sum) differs from the published value " +
                           std::to_string(rc->published_dimension)});
    }
    for (const auto& [w, mult] : rc->enumerator) {
        auto it = dist.entries.find(w);
        const std::uint64_t got = it == dist.entries.end() ? 0 : it->second;
        if (got != mult)
            out.push_back({"multiplicity",
                           "weight " + std::to_string(w) + ": computed multiplicity " +
                               std::to_string(got) + " differs from the published value " +
                               std::to_string(mult)});
    }
    return out;
}

} // namespace cyclo
