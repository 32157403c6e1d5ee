#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "cyclodesign/code.hpp"
#include "cyclodesign/errors.hpp"
#include "cyclodesign/field.hpp"
#include "cyclodesign/fp_linalg.hpp"
#include "cyclodesign/rng.hpp"

namespace cyclo {

/// Orbit of j under multiplication by p modulo n, sorted ascending.
inline std::vector<std::uint64_t> cyclotomic_coset(std::uint64_t n, std::uint32_t p,
                                                   std::uint64_t j) {
    if (n == 0 || std::gcd<std::uint64_t>(n, p) != 1)
        throw BadModulusError("coset modulus must be nonzero and coprime to p");
    if (j >= n) throw BadModulusError("coset representative must lie in [0, n)");
    std::vector<std::uint64_t> orbit;
    std::uint64_t cur = j;
    do {
        orbit.push_back(cur);
        cur = cur * p % n;
    } while (cur != j);
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

/// Digit-wise comparison of base-p expansions with m digits: r <= s in
/// every digit.
inline bool p_adic_leq(std::uint64_t r, std::uint64_t s, std::uint32_t p, std::uint32_t m) {
    for (std::uint32_t i = 0; i < m; ++i) {
        if (r % p > s % p) return false;
        r /= p;
        s /= p;
    }
    return r == 0 && s == 0;
}

/// Union of cyclotomic cosets (plus the extension position 0) indexing the
/// prescribed zeros of an extended cyclic code.
struct DefiningSet {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> residues; // sorted, includes 0
    bool includes_zero = true;
};

/// Defining set of the extended code behind a spec: {0} united with the
/// cosets of 1 and p^l + 1 modulo n.
inline DefiningSet build_defining_set(const CodeSpec& s) {
    const FieldCtx& f = s.ctx();
    const std::uint64_t n = f.n();
    std::uint64_t plp1 = 1;
    for (std::uint32_t i = 0; i < s.l; ++i) plp1 *= f.p();
    plp1 = (plp1 + 1) % n;

    DefiningSet ds;
    ds.n = n;
    std::vector<std::uint64_t> acc{0};
    for (auto v : cyclotomic_coset(n, f.p(), 1)) acc.push_back(v);
    for (auto v : cyclotomic_coset(n, f.p(), plp1)) acc.push_back(v);
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    ds.residues = std::move(acc);
    ds.includes_zero = true;
    return ds;
}

/// Downset-closure criterion for affine invariance: for every s in the set
/// and every r with r digit-wise <= s, r must also belong to the set. The
/// downset of each s is enumerated directly by a digit odometer.
inline bool check_affine_invariant(const DefiningSet& ds, std::uint32_t p, std::uint32_t m) {
    std::uint64_t pm = 1;
    for (std::uint32_t i = 0; i < m; ++i) pm *= p;
    if (ds.n != pm - 1)
        throw BadModulusError("defining set modulus does not match p^m - 1");

    std::unordered_set<std::uint64_t> members(ds.residues.begin(), ds.residues.end());
    members.insert(0);

    std::vector<std::uint32_t> sd(m), rd(m);
    std::vector<std::uint64_t> pw(m);
    pw[0] = 1;
    for (std::uint32_t i = 1; i < m; ++i) pw[i] = pw[i - 1] * p;

    for (std::uint64_t s : members) {
        std::uint64_t v = s;
        for (std::uint32_t i = 0; i < m; ++i) {
            sd[i] = v % p;
            v /= p;
        }
        std::fill(rd.begin(), rd.end(), 0);
        for (;;) {
            std::uint64_t r = 0;
            for (std::uint32_t i = 0; i < m; ++i) r += rd[i] * pw[i];
            if (!members.count(r)) return false;
            std::uint32_t i = 0;
            while (i < m && rd[i] == sd[i]) rd[i++] = 0;
            if (i == m) break;
            ++rd[i];
        }
    }
    return true;
}

/// Decides membership of a vector in the code of a spec by solving for its
/// (a, b, h) coordinates against a row-reduced generator basis, then
/// re-evaluating the candidate codeword and comparing everywhere.
class CodeMembership {
public:
    explicit CodeMembership(const CodeSpec& spec) : spec_(&spec) {
        const FieldCtx& f = spec.ctx();
        const std::uint32_t m = f.m(), p = f.p();

        if (spec.subfield_a) {
            // power basis of the half-degree subfield over F_p
            const Elem g = f.exp_table(spec.a_step);
            Elem cur = 1;
            for (std::uint32_t j = 0; j < m / 2; ++j) {
                a_basis_.push_back(cur);
                cur = f.mul(cur, g);
            }
        } else {
            for (std::uint32_t j = 0; j < m; ++j) a_basis_.push_back(f.exp_table(j));
        }
        for (std::uint32_t j = 0; j < m; ++j) b_basis_.push_back(f.exp_table(j));

        const std::size_t dim = a_basis_.size() + b_basis_.size() + 1;
        const std::size_t q = f.q();
        // generator rows augmented with the identity to track the transform
        FpMatrix aug(p, dim, q + dim);
        std::size_t row = 0;
        auto add_row = [&](const CodewordId& id) {
            const auto v = codeword_vector(*spec_, id);
            for (std::size_t c = 0; c < q; ++c) aug.at(row, c) = v[c];
            aug.at(row, q + row) = 1;
            ++row;
        };
        for (Elem a : a_basis_) add_row({a, 0, 0});
        for (Elem b : b_basis_) add_row({0, b, 0});
        add_row({0, 0, 1});

        pivots_ = row_reduce(aug);
        if (pivots_.size() != dim || pivots_.back() >= q)
            throw CheckError("generator rows are not independent");
        rref_ = std::move(aug);
        dim_ = dim;
    }

    /// The id whose codeword equals `word`, or nullopt if none exists.
    std::optional<CodewordId> solve(const std::vector<std::uint8_t>& word) const {
        const FieldCtx& f = spec_->ctx();
        const std::uint32_t p = f.p();
        const std::size_t q = f.q();
        if (word.size() != q) return std::nullopt;

        // coefficients against the RREF rows, then back through the transform
        std::vector<std::uint32_t> y(dim_);
        for (std::size_t r = 0; r < dim_; ++r) y[r] = word[pivots_[r]] % p;
        std::vector<std::uint32_t> c(dim_, 0);
        for (std::size_t r = 0; r < dim_; ++r) {
            if (!y[r]) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                c[j] = (c[j] + y[r] * rref_.at(r, q + j)) % p;
        }

        CodewordId id;
        std::size_t idx = 0;
        for (Elem base : a_basis_) id.a = f.add(id.a, f.scale(base, c[idx++]));
        for (Elem base : b_basis_) id.b = f.add(id.b, f.scale(base, c[idx++]));
        id.h = c[idx];

        if (codeword_vector(*spec_, id) != word) return std::nullopt;
        return id;
    }

private:
    const CodeSpec* spec_;
    std::vector<Elem> a_basis_, b_basis_;
    FpMatrix rref_;
    std::vector<std::size_t> pivots_;
    std::size_t dim_ = 0;
};

struct AffineActionFailure {
    Elem map_a = 0, map_b = 0;
    CodewordId id;
};

struct AffineActionReport {
    std::uint64_t trials = 0;
    std::uint64_t passes = 0;
    std::vector<AffineActionFailure> failures; // capped sample of witnesses

    bool all_passed() const { return passes == trials; }
};

/// Samples coordinate permutations x -> a x + b and codewords, applies the
/// permutation, and verifies the image is again a codeword (membership
/// decided by linear solving, not by any closure formula).
inline AffineActionReport verify_affine_action(const CodeSpec& spec, std::uint64_t samples,
                                               std::uint64_t seed) {
    if (samples == 0) throw SampleBudgetZeroError("sample count must be positive");
    const FieldCtx& f = spec.ctx();
    if (f.q() > 729)
        throw BudgetExceededError("group-action verification is capped at q <= 729");

    const CodeMembership membership(spec);
    const std::vector<Elem> domain = a_domain_elements(spec);
    SplitRng rng = SplitRng(seed).split("affine-action");

    const std::uint32_t q = f.q(), n = f.n(), p = f.p();
    auto elem_at = [&](std::uint32_t pos) -> Elem { return pos == 0 ? 0 : f.exp_table(pos - 1); };
    auto pos_of = [&](Elem e) -> std::uint32_t { return e == 0 ? 0 : 1 + f.log_table(e); };

    AffineActionReport rep;
    rep.trials = samples;
    std::vector<std::uint8_t> permuted(q);
    for (std::uint64_t t = 0; t < samples; ++t) {
        const Elem ma = f.exp_table(rng.bounded(n));
        const Elem mb = static_cast<Elem>(rng.bounded(q));
        CodewordId id;
        id.a = domain[rng.bounded(domain.size())];
        id.b = static_cast<Elem>(rng.bounded(q));
        id.h = static_cast<std::uint32_t>(rng.bounded(p));

        const auto cw = codeword_vector(spec, id);
        for (std::uint32_t pos = 0; pos < q; ++pos) {
            const Elem y = f.add(f.mul(ma, elem_at(pos)), mb);
            permuted[pos_of(y)] = cw[pos];
        }
        if (membership.solve(permuted)) {
            ++rep.passes;
        } else if (rep.failures.size() < 8) {
            rep.failures.push_back({ma, mb, id});
        }
    }
    return rep;
}

} // namespace cyclo
