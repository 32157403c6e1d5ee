#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclodesign/bitset.hpp"
#include "cyclodesign/code.hpp"
#include "cyclodesign/errors.hpp"
#include "cyclodesign/parallel.hpp"
#include "cyclodesign/rng.hpp"

namespace cyclo {

/// Deduplicated supports of fixed-weight codewords over v = p^m points.
struct BlockSet {
    std::uint64_t v = 0;
    std::uint64_t k = 0;
    std::vector<DynBitset> blocks;          // pairwise distinct, lex-sorted
    bool multiplicity_checked = false;      // each support arose from exactly p-1 codewords
};

/// Certified parameters of a 2-(v, k, lambda) design with b blocks.
struct DesignParams {
    std::uint32_t t = 2;
    std::uint64_t v = 0, k = 0, lambda = 0, b = 0;
};

enum class VerifyMode { full, sampled, automatic };

struct PairWitness {
    std::uint64_t point_i = 0, point_j = 0;
    std::uint64_t coverage = 0, expected = 0;
};

struct DesignCheck {
    bool ok = false;
    bool sampled = false;
    std::uint64_t pairs_checked = 0;
    DesignParams params;
    std::vector<PairWitness> witnesses;
    std::string note;
};

/// Largest weight w for which equal supports force proportional codewords:
/// the biggest w with w - floor((w+p-2)/(p-1)) < min_weight. The returned
/// value may exceed n; callers compare their weights (all <= n) against it.
inline std::uint64_t support_multiplicity_bound(std::uint64_t min_weight, std::uint64_t n,
                                                std::uint32_t p) {
    if (min_weight < 1) throw ConfigError("minimum weight must be positive");
    (void)n; // weights compared against the bound are at most n, but the bound itself may exceed it
    auto gap = [&](std::uint64_t w) { return w - (w + p - 2) / (p - 1); };
    // gap is nondecreasing and unbounded, so scan to the first violation
    std::uint64_t w = 1;
    while (gap(w + 1) < min_weight) ++w;
    return w;
}

/// lambda = b k (k-1) / (v (v-1)); throws if the division is not exact
/// (then no 2-design with these counts can exist).
inline std::uint64_t lambda_from_counts(std::uint64_t v, std::uint64_t k, std::uint64_t b) {
    if (v <= k || k < 2) throw ConfigError("need v > k >= 2");
    const unsigned __int128 num = static_cast<unsigned __int128>(b) * k * (k - 1);
    const unsigned __int128 den = static_cast<unsigned __int128>(v) * (v - 1);
    if (num % den != 0)
        throw NonIntegralLambdaError("b k(k-1) / (v(v-1)) is not an integer for b = " +
                                     std::to_string(b) + ", k = " + std::to_string(k) +
                                     ", v = " + std::to_string(v));
    return static_cast<std::uint64_t>(num / den);
}

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool is_integral() const { return den == 1; }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// lambda_i = lambda * C(v-i, t-i) / C(k-i, t-i): the level-i parameter of
/// a t-design, as a reduced rational (integral for genuine designs).
inline Rational reduce_design_level(std::uint32_t t, std::uint64_t v, std::uint64_t k,
                                    std::uint64_t lambda, std::uint32_t i) {
    if (i > t || t > k || k > v) throw BadLevelError("need 0 <= i <= t <= k <= v");
    auto binom = [](std::uint64_t x, std::uint32_t y) {
        unsigned __int128 r = 1;
        for (std::uint32_t j = 1; j <= y; ++j) r = r * (x - y + j) / j;
        return r;
    };
    unsigned __int128 num = static_cast<unsigned __int128>(lambda) * binom(v - i, t - i);
    unsigned __int128 den = binom(k - i, t - i);
    unsigned __int128 a = num, b = den;
    while (b) {
        auto r = a % b;
        a = b;
        b = r;
    }
    num /= a;
    den /= a;
    if (num > static_cast<unsigned __int128>(INT64_MAX) ||
        den > static_cast<unsigned __int128>(INT64_MAX))
        throw CheckError("design level parameter overflows");
    return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

/// All codeword ids of the given weight, in deterministic order. Uses one
/// full enumeration pass when the id space fits the budget; otherwise the
/// closed-form case analysis narrows the scan to qualifying strata, and the
/// weight class itself must fit the budget.
inline std::vector<CodewordId> ids_with_weight(const CodeSpec& s, std::uint64_t weight,
                                               std::uint64_t budget = kDefaultBudget,
                                               std::uint32_t threads = 1) {
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p();
    const std::uint64_t q = f.q();
    const std::vector<Elem> domain = a_domain_elements(s);

    // A full pass is exact and cheap for small id spaces; past this size the
    // stratified scan below costs roughly #found instead of #ids.
    const bool full_scan = s.id_count <= budget &&
                           (s.id_count <= (1ULL << 22) || s.regime == Regime::unit_gcd);

    if (full_scan) {
        // full enumeration
        const detail::EnumTables tables(f, s.l);
        std::vector<std::vector<CodewordId>> partial(
            std::min<std::uint64_t>(threads ? threads : 1, domain.size()));
        parallel_chunks(domain.size(), threads,
                        [&](std::size_t chunk, std::uint64_t lo, std::uint64_t hi) {
                            auto& local = partial[chunk];
                            std::uint64_t hist[64];
                            for (std::uint64_t ai = lo; ai < hi; ++ai) {
                                const Elem a = domain[ai];
                                for (std::uint64_t b = 0; b < q; ++b) {
                                    detail::pair_trace_histogram(f, tables, a,
                                                                 static_cast<Elem>(b), hist);
                                    for (std::uint32_t h = 0; h < p; ++h)
                                        if (q - hist[(p - h) % p] == weight)
                                            local.push_back({a, static_cast<Elem>(b), h});
                                }
                            }
                        });
        std::vector<CodewordId> out;
        for (auto& part : partial)
            out.insert(out.end(), part.begin(), part.end());
        return out;
    }

    if (s.regime == Regime::unit_gcd)
        throw BudgetExceededError("id space exceeds budget and no closed form narrows it");

    const WeightDistribution table = analytic_distribution_table(s);
    const auto it = table.entries.find(weight);
    if (it == table.entries.end())
        throw WeightAbsentError("no codewords of weight " + std::to_string(weight));
    if (it->second > budget)
        throw BudgetExceededError("weight class holds " + std::to_string(it->second) +
                                  " codewords, over budget " + std::to_string(budget));
    const std::uint64_t expected = it->second;

    std::vector<CodewordId> out;
    out.reserve(expected);

    // a = 0 strata
    if (weight == 0) out.push_back({0, 0, 0});
    if (weight == q)
        for (std::uint32_t h = 1; h < p; ++h) out.push_back({0, 0, h});
    const std::uint64_t w0 = q - q / p;
    if (weight == w0) {
        for (std::uint64_t b = 1; b < q; ++b)
            for (std::uint32_t h = 0; h < p; ++h)
                out.push_back({0, static_cast<Elem>(b), h});
    }

    const std::uint32_t m = f.m(), md = m / s.d;
    auto pw = [&](std::uint32_t e) {
        std::uint64_t r = 1;
        while (e--) r *= p;
        return r;
    };

    // per-a prefilter: can this a reach the target weight at all?
    std::uint64_t weights_buf[64];
    for (std::uint64_t ai = 1; ai < domain.size(); ++ai) {
        const Elem a = domain[ai];
        bool qualifies = false;
        bool restrict_solvable_b = false;
        if (md % 2 == 1) {
            if (m % 2 == 1) {
                const std::uint64_t amp = pw((m - 1) / 2);
                qualifies = weight == w0 || weight == w0 + amp || weight == w0 - amp;
            } else {
                const int eps1 = ((((p - 1) / 2) * (m / 2) + (m - 1)) % 2 == 0) ? 1 : -1;
                const std::int64_t sgn = eps1 * f.quadratic_character(a);
                const std::int64_t amp = static_cast<std::int64_t>(pw(m / 2 - 1));
                const std::uint64_t weq = w0 - sgn * amp * (p - 1);
                const std::uint64_t wneq = w0 + sgn * amp;
                qualifies = weight == weq || weight == wneq;
            }
        } else {
            const int eps = (md / 2) % 2 == 0 ? 1 : -1;
            if (!kernel_condition(f, s.l, a)) {
                const std::int64_t amp = static_cast<std::int64_t>(pw(m / 2 - 1));
                const std::uint64_t weq = w0 - eps * amp * (p - 1);
                const std::uint64_t wneq = w0 + eps * amp;
                qualifies = weight == weq || weight == wneq;
            } else {
                const std::int64_t amp = static_cast<std::int64_t>(pw(m / 2 + s.d - 1));
                const std::uint64_t weq = w0 + eps * amp * (p - 1);
                const std::uint64_t wneq = w0 - eps * amp;
                if (weight == weq || weight == wneq) {
                    qualifies = true;
                    restrict_solvable_b = true;
                } else if (weight == w0) {
                    qualifies = true; // unsolvable-b rows
                }
            }
        }
        if (!qualifies) continue;

        if (restrict_solvable_b) {
            // b is admissible iff -b^{p^l} lies in the image of the
            // linearized map; walk that subspace directly.
            FpMatrix mat = linearized_matrix(f, s.l, a);
            FpMatrix rows(p, m, m); // transpose: images as rows
            for (std::uint32_t r = 0; r < m; ++r)
                for (std::uint32_t c = 0; c < m; ++c) rows.at(r, c) = mat.at(c, r);
            const auto pivots = row_reduce(rows);
            std::vector<Elem> basis;
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                std::vector<std::uint8_t> digs(m);
                for (std::uint32_t c = 0; c < m; ++c) digs[c] = rows.at(r, c);
                basis.push_back(f.from_digits(digs));
            }
            std::vector<std::uint32_t> odo(basis.size(), 0);
            for (;;) {
                Elem y = 0;
                for (std::size_t i = 0; i < basis.size(); ++i)
                    y = f.add(y, f.scale(basis[i], odo[i]));
                const Elem b = f.frobenius(f.neg(y), m - s.l);
                detail::analytic_pair_weights(s, a, b, weights_buf);
                for (std::uint32_t h = 0; h < p; ++h)
                    if (weights_buf[h] == weight) out.push_back({a, b, h});
                std::size_t i = 0;
                while (i < basis.size() && odo[i] == p - 1) odo[i++] = 0;
                if (i == basis.size()) break;
                ++odo[i];
            }
        } else {
            for (std::uint64_t b = 0; b < q; ++b) {
                detail::analytic_pair_weights(s, a, static_cast<Elem>(b), weights_buf);
                for (std::uint32_t h = 0; h < p; ++h)
                    if (weights_buf[h] == weight) out.push_back({a, static_cast<Elem>(b), h});
            }
        }
        if (out.size() > expected)
            throw CheckError("stratified enumeration emitted more ids than the table predicts");
    }

    if (out.size() != expected)
        throw CheckError("stratified enumeration found " + std::to_string(out.size()) +
                         " ids of weight " + std::to_string(weight) + ", table predicts " +
                         std::to_string(expected));
    return out;
}

/// Supports of every codeword of the given weight, deduplicated, with the
/// scalar-multiple multiplicity certified: each distinct support must arise
/// from exactly p-1 codewords that are proportional to one another.
inline BlockSet extract_blocks(const CodeSpec& s, std::uint64_t weight,
                               std::uint64_t budget = kDefaultBudget,
                               std::uint32_t threads = 1) {
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p();
    const std::uint64_t q = f.q();
    if (weight < 1 || weight > q)
        throw WeightAbsentError("weight must lie in [1, p^m]");

    if (s.regime != Regime::unit_gcd) {
        // bound block storage before enumerating anything
        const auto table = analytic_distribution_table(s);
        if (auto it = table.entries.find(weight); it != table.entries.end()) {
            const std::uint64_t nblocks = it->second / (p - 1);
            if (nblocks * ((q + 7) / 8) > (1ULL << 31))
                throw BudgetExceededError("block set for weight " + std::to_string(weight) +
                                          " would need more than 2 GiB");
        }
    }

    const std::vector<CodewordId> ids = ids_with_weight(s, weight, budget, threads);
    if (ids.empty()) throw WeightAbsentError("no codewords of weight " + std::to_string(weight));

    // scalar-multiple guarantee only holds up to the bound derived from the
    // minimum distance
    std::uint64_t dmin = 0;
    const WeightDistribution dist = s.regime != Regime::unit_gcd
                                        ? analytic_distribution_table(s)
                                        : weight_distribution(s, Method::brute, budget, threads);
    for (const auto& entry : dist.entries)
        if (entry.first > 0) {
            dmin = entry.first;
            break;
        }
    if (weight > support_multiplicity_bound(dmin, q, p))
        throw ConfigError("weight exceeds the scalar-multiple support bound");

    struct Seen {
        std::uint32_t count;
        CodewordId first;
    };
    using SupportMap = std::unordered_map<DynBitset, Seen, DynBitsetHash>;

    const detail::EnumTables tables(f, s.l);
    auto support_of = [&](const CodewordId& id) {
        DynBitset bs(q);
        if (id.h != 0) bs.set(0);
        const bool ha = id.a != 0, hb = id.b != 0;
        const std::uint32_t la = ha ? f.log_table(id.a) : 0;
        const std::uint32_t lb = hb ? f.log_table(id.b) : 0;
        for (std::uint32_t j = 0; j < f.n(); ++j) {
            std::uint32_t c = id.h;
            if (ha) c += tables.tau2[la + tables.uidx[j]];
            if (hb) c += tables.tau2[lb + j];
            if (c % p != 0) bs.set(1 + j);
        }
        return bs;
    };
    auto scalar_related = [&](const CodewordId& x, const CodewordId& y) {
        for (std::uint32_t c = 1; c < p; ++c)
            if (f.scale(x.a, c) == y.a && f.scale(x.b, c) == y.b && (x.h * c) % p == y.h)
                return true;
        return false;
    };

    std::vector<SupportMap> partial(std::min<std::uint64_t>(threads ? threads : 1, ids.size()));
    parallel_chunks(ids.size(), threads, [&](std::size_t chunk, std::uint64_t lo, std::uint64_t hi) {
        auto& local = partial[chunk];
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto sup = support_of(ids[i]);
            auto [it, fresh] = local.try_emplace(std::move(sup), Seen{1, ids[i]});
            if (!fresh) {
                if (!scalar_related(it->second.first, ids[i]))
                    throw MultiplicityViolationError("equal supports from non-proportional codewords");
                ++it->second.count;
            }
        }
    });

    SupportMap merged = std::move(partial[0]);
    for (std::size_t c = 1; c < partial.size(); ++c) {
        for (auto& [sup, seen] : partial[c]) {
            auto [it, fresh] = merged.try_emplace(sup, seen);
            if (!fresh) {
                if (!scalar_related(it->second.first, seen.first))
                    throw MultiplicityViolationError("equal supports from non-proportional codewords");
                it->second.count += seen.count;
            }
        }
        partial[c].clear();
    }

    BlockSet out;
    out.v = q;
    out.k = weight;
    out.blocks.reserve(merged.size());
    for (auto& [sup, seen] : merged) {
        if (seen.count != p - 1)
            throw MultiplicityViolationError("support arose from " + std::to_string(seen.count) +
                                             " codewords, expected " + std::to_string(p - 1));
        if (sup.count() != weight) throw CheckError("support size differs from weight");
        out.blocks.push_back(sup);
    }
    std::sort(out.blocks.begin(), out.blocks.end(), DynBitset::lex_less);
    out.multiplicity_checked = true;
    return out;
}

/// Blocks containing each point.
inline std::vector<std::uint64_t> point_incidence(const BlockSet& bs) {
    std::vector<std::uint64_t> deg(bs.v, 0);
    for (const auto& blk : bs.blocks)
        blk.for_each_set([&](std::uint64_t i) { ++deg[i]; });
    return deg;
}

/// Checks the 2-design property of a block set. Full mode counts the
/// covering blocks of every unordered point pair; sampled mode checks
/// uniformly drawn pairs against the double-counting value of lambda plus
/// the exact point-incidence (1-design) invariant. automatic picks full
/// when b * C(k,2) <= 1e8.
inline DesignCheck verify_2design(const BlockSet& bs, VerifyMode mode,
                                  std::uint64_t samples = 100000, std::uint64_t seed = 0,
                                  std::uint32_t threads = 1) {
    if (bs.blocks.empty()) throw ConfigError("empty block set");
    const std::uint64_t v = bs.v, k = bs.k, b = bs.blocks.size();

    DesignCheck res;
    res.params = DesignParams{2, v, k, 0, b};

    if (mode == VerifyMode::automatic) {
        const unsigned __int128 work =
            static_cast<unsigned __int128>(b) * (k * (k - 1) / 2);
        mode = work <= 100000000 ? VerifyMode::full : VerifyMode::sampled;
    }

    if (mode == VerifyMode::full) {
        const std::uint64_t npairs = v * (v - 1) / 2;
        const std::size_t nchunks =
            std::min<std::uint64_t>(threads ? threads : 1, bs.blocks.size());
        std::vector<std::vector<std::uint32_t>> acc(nchunks);
        parallel_chunks(bs.blocks.size(), threads,
                        [&](std::size_t chunk, std::uint64_t lo, std::uint64_t hi) {
                            auto& local = acc[chunk];
                            local.assign(npairs, 0);
                            std::vector<std::uint64_t> pts;
                            for (std::uint64_t bi = lo; bi < hi; ++bi) {
                                pts.clear();
                                bs.blocks[bi].for_each_set(
                                    [&](std::uint64_t i) { pts.push_back(i); });
                                for (std::size_t x = 0; x < pts.size(); ++x) {
                                    const std::uint64_t i = pts[x];
                                    const std::uint64_t base = i * (2 * v - i - 1) / 2;
                                    for (std::size_t y = x + 1; y < pts.size(); ++y)
                                        ++local[base + (pts[y] - i - 1)];
                                }
                            }
                        });
        for (std::size_t c = 1; c < nchunks; ++c)
            for (std::uint64_t i = 0; i < npairs; ++i) acc[0][i] += acc[c][i];

        const auto& counts = acc[0];
        const std::uint64_t lambda = counts[0];
        res.pairs_checked = npairs;
        res.ok = true;
        for (std::uint64_t idx = 0; idx < npairs; ++idx) {
            if (counts[idx] != lambda) {
                res.ok = false;
                if (res.witnesses.size() < 8) {
                    // decode the triangular index
                    std::uint64_t i = 0, rowlen = v - 1, off = idx;
                    while (off >= rowlen) {
                        off -= rowlen;
                        --rowlen;
                        ++i;
                    }
                    res.witnesses.push_back({i, i + 1 + off, counts[idx], lambda});
                }
            }
        }
        if (res.ok) {
            res.params.lambda = lambda;
            if (lambda != lambda_from_counts(v, k, b))
                throw CheckError("pair coverage contradicts the double-counting identity");
        } else {
            res.note = "pair coverage is not constant";
        }
        return res;
    }

    // sampled
    if (samples == 0) throw SampleBudgetZeroError("sample count must be positive");
    res.sampled = true;
    std::uint64_t lambda;
    try {
        lambda = lambda_from_counts(v, k, b);
    } catch (const NonIntegralLambdaError& e) {
        res.ok = false;
        res.note = e.what();
        return res;
    }
    res.params.lambda = lambda;

    // exact 1-design invariant first: every point in b*k/v blocks
    if ((b * k) % v != 0) {
        res.ok = false;
        res.note = "point incidence b*k/v is not an integer";
        return res;
    }
    const std::uint64_t lambda1 = b * k / v;
    const auto deg = point_incidence(bs);
    for (std::uint64_t i = 0; i < v; ++i) {
        if (deg[i] != lambda1) {
            res.ok = false;
            res.note = "point " + std::to_string(i) + " lies in " + std::to_string(deg[i]) +
                       " blocks, expected " + std::to_string(lambda1);
            return res;
        }
    }

    // transpose to point -> blocks bitmasks for fast pair coverage
    std::vector<DynBitset> rows(v, DynBitset(b));
    for (std::uint64_t bi = 0; bi < b; ++bi)
        bs.blocks[bi].for_each_set([&](std::uint64_t i) { rows[i].set(bi); });

    SplitRng rng = SplitRng(seed).split("pair-coverage");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(samples);
    for (std::uint64_t t = 0; t < samples; ++t) {
        std::uint64_t i = rng.bounded(v), j = rng.bounded(v);
        while (j == i) j = rng.bounded(v);
        if (i > j) std::swap(i, j);
        pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }

    const std::size_t nchunks = std::min<std::uint64_t>(threads ? threads : 1, pairs.size());
    std::vector<std::vector<PairWitness>> bad(nchunks);
    parallel_chunks(pairs.size(), threads, [&](std::size_t chunk, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            const auto [i, j] = pairs[t];
            const std::uint64_t cov = rows[i].intersection_count(rows[j]);
            if (cov != lambda && bad[chunk].size() < 8)
                bad[chunk].push_back({i, j, cov, lambda});
        }
    });
    res.pairs_checked = pairs.size();
    res.ok = true;
    for (auto& chunk : bad)
        for (auto& w : chunk) {
            res.ok = false;
            if (res.witnesses.size() < 8) res.witnesses.push_back(w);
        }
    if (!res.ok) res.note = "sampled pair coverage deviates from lambda";
    return res;
}

/// One row of the predicted design table: weight, block count A_i/(p-1),
/// and lambda certified two ways (the closed multiplicity-derived value,
/// cross-checked against the per-regime lambda expressions).
struct PredictedDesign {
    std::uint64_t weight = 0;
    std::uint64_t blocks = 0;
    std::uint64_t lambda = 0;
};

namespace detail {

struct Frac128 {
    __int128 num = 0;
    __int128 den = 1;
};

/// The closed lambda expressions per regime, keyed by weight.
inline std::vector<std::pair<std::uint64_t, Frac128>> design_lambda_formulas(const CodeSpec& s) {
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p(), m = f.m(), d = s.d;
    const std::uint64_t q = f.q();
    auto pw = [&](std::uint32_t e) {
        __int128 r = 1;
        while (e--) r *= p;
        return r;
    };
    const __int128 w0 = static_cast<__int128>(q) - q / p;

    std::vector<std::pair<std::uint64_t, Frac128>> out;
    auto emit = [&](__int128 weight, __int128 num, __int128 den) {
        out.emplace_back(static_cast<std::uint64_t>(weight), Frac128{num, den});
    };

    switch (s.regime) {
        case Regime::odd_odd: {
            const __int128 P = pw((m - 1) / 2);
            emit(w0, (w0 - 1) * (pw(m - 1) + 1), 1);
            emit(w0 + P, P * (pw((m + 1) / 2) - pw((m - 1) / 2) + 1) * (w0 + P - 1), 2);
            emit(w0 - P, P * (pw((m + 1) / 2) - pw((m - 1) / 2) - 1) * (w0 - P - 1), 2);
            break;
        }
        case Regime::even_odd: {
            const __int128 S = pw(m / 2 - 1);
            emit(w0, w0 - 1, 1);
            emit(w0 + S, S * (pw(m / 2 + 1) - pw(m / 2) + 1) * (w0 + S - 1), 2);
            emit(w0 - S, S * (pw(m / 2 + 1) - pw(m / 2) - 1) * (w0 - S - 1), 2);
            emit(w0 + S * (p - 1), S * (pw(m / 2) + 1) * (w0 + pw(m / 2) - S - 1), 2);
            emit(w0 - S * (p - 1), S * (pw(m / 2) - 1) * (w0 - pw(m / 2) + S - 1), 2);
            break;
        }
        case Regime::even_quotient: {
            const int e = ((m / d) / 2) % 2 == 0 ? 1 : -1;
            const __int128 S = pw(m / 2 - 1), B = pw(m / 2 + d - 1), D = pw(d) + 1;
            emit(w0, (w0 - 1) * (pw(m - d) - pw(m - 2 * d) + 1), 1);
            emit(w0 + e * S, B * (pw(m / 2 + 1) - pw(m / 2) + e) * (w0 + e * S - 1), D);
            emit(w0 - e * S * (p - 1),
                 B * (pw(m / 2) - e) * (w0 - e * pw(m / 2) + e * S - 1), D);
            emit(w0 + e * B * (p - 1),
                 pw(m / 2 - d - 1) * (pw(m / 2 - d) + e) *
                     (w0 + e * pw(m / 2 + d) - e * B - 1),
                 D);
            emit(w0 - e * B,
                 pw(m / 2 - d - 1) * (pw(m / 2 - d + 1) - pw(m / 2 - d) - e) * (w0 - e * B - 1),
                 D);
            break;
        }
        case Regime::half: {
            const __int128 S = pw(m / 2 - 1);
            emit(w0, w0 - 1, 1);
            emit(w0 - S, S * (pw(m / 2 + 1) - pw(m / 2) - 1) * (w0 - S - 1), pw(m / 2) + 1);
            emit(w0 + pw(m / 2) - S, S * (w0 + pw(m / 2) - S - 1), 1);
            break;
        }
        case Regime::unit_gcd:
            throw UnsupportedRegimeError("no closed design parameters for gcd(m, l) = 1");
    }
    return out;
}

} // namespace detail

/// The (weight, lambda, block-count) table the code's designs must have.
/// lambda is computed from the multiplicity table via double counting AND
/// from the closed per-regime expressions; disagreement throws, flagging a
/// transcription error in one of the two routes.
inline std::vector<PredictedDesign> predicted_design_parameters(const CodeSpec& s) {
    if (s.regime == Regime::unit_gcd)
        throw UnsupportedRegimeError("no closed design parameters for gcd(m, l) = 1");
    const FieldCtx& f = s.ctx();
    const std::uint32_t p = f.p();
    const std::uint64_t q = f.q();

    const WeightDistribution table = analytic_distribution_table(s);
    const auto formulas = detail::design_lambda_formulas(s);

    std::vector<PredictedDesign> out;
    for (const auto& [w, mult] : table.entries) {
        if (w == 0 || w == q) continue; // empty and full supports are degenerate
        if (mult % (p - 1) != 0)
            throw CheckError("multiplicity not divisible by p-1 at weight " + std::to_string(w));
        const std::uint64_t blocks = mult / (p - 1);
        const std::uint64_t lam = lambda_from_counts(q, w, blocks);

        bool matched = false;
        for (const auto& [fw, frac] : formulas) {
            if (fw != w) continue;
            matched = true;
            if (frac.num != static_cast<__int128>(lam) * frac.den)
                throw FormulaMismatchError(
                    "closed lambda expression disagrees with the multiplicity-derived value at "
                    "weight " +
                    std::to_string(w) + " (derived " + std::to_string(lam) + ")");
        }
        if (!matched)
            throw FormulaMismatchError("no closed lambda expression covers weight " +
                                       std::to_string(w));
        out.push_back({w, blocks, lam});
    }
    return out;
}

} // namespace cyclo
