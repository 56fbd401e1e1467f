#pragma once

// Randomized instance builders shared by the unit and acceptance suites.
// Purity-satisfying homs are built from direct-sum block structure and then
// hidden behind a random unimodular change of coordinates.

#include <memory>
#include <random>
#include <vector>

#include "sogkit/dlat.hpp"
#include "sogkit/fgab.hpp"
#include "sogkit/lathom.hpp"

namespace testgen {

using namespace sogkit;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::size_t pick(std::size_t n) { return n ? eng() % n : 0; }
    long range(long lo, long hi) { return lo + static_cast<long>(eng() % static_cast<unsigned long>(hi - lo + 1)); }
    bool coin() { return eng() & 1u; }
};

inline IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps = 12) {
    IntMatrix u = IntMatrix::identity(n);
    for (std::size_t s = 0; s < steps && n > 1; ++s) {
        std::size_t i = rng.pick(n), j = rng.pick(n);
        if (i == j)
            continue;
        switch (rng.pick(3)) {
            case 0:
                u.add_row_multiple(i, j, Int(rng.range(-2, 2)));
                break;
            case 1:
                u.swap_rows(i, j);
                break;
            default:
                u.negate_row(i);
                break;
        }
    }
    return u;
}

/// Per-join-irreducible block sizes for a direct-sum hom.
struct BlockSpec {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // cyclic orders > 1
};

struct PureHomSpec {
    std::vector<BlockSpec> blocks;  // one per join-irreducible of the lattice
    BlockSpec bottom;               // block below phi(0)
    BlockSpec slack;                // ambient coordinates outside phi(1)
};

inline BlockSpec random_block(Rng& rng, bool allow_free, bool allow_torsion, long max_order) {
    BlockSpec b;
    if (allow_free && rng.coin())
        b.free_rank = rng.pick(2);
    if (allow_torsion && rng.coin()) {
        long d = rng.range(2, max_order);
        b.torsion.push_back(d);
    }
    return b;
}

struct BuiltHom {
    GroupPtr group;
    std::shared_ptr<const FinDistLattice> lattice;
    SubgroupHom hom;
};

/// phi(u) = bottom-block + sum of blocks at J(u); every value is a direct
/// summand of the next, so the purity condition holds by construction.
inline BuiltHom build_pure_hom(Rng& rng, std::shared_ptr<const FinDistLattice> lat, const PureHomSpec& spec) {
    std::vector<std::size_t> block_cols;  // start offset per block (bottom, then per ji, then slack)
    std::vector<Int> diag;
    auto push_block = [&](const BlockSpec& b) {
        block_cols.push_back(diag.size());
        for (std::size_t i = 0; i < b.free_rank; ++i)
            diag.push_back(0);
        for (const Int& d : b.torsion)
            diag.push_back(d);
    };
    push_block(spec.bottom);
    for (const auto& b : spec.blocks)
        push_block(b);
    push_block(spec.slack);
    block_cols.push_back(diag.size());

    const std::size_t n = diag.size();
    IntMatrix scramble = random_unimodular(rng, n);
    IntMatrix rel(n, 0);
    {
        std::vector<std::vector<Int>> cols;
        for (std::size_t i = 0; i < n; ++i)
            if (diag[i] != 0) {
                std::vector<Int> c(n);
                c[i] = diag[i];
                cols.push_back(c);
            }
        rel = scramble * IntMatrix::from_columns(n, cols);
    }
    GroupPtr g = FgAbGroup::make(n, rel);

    auto block_subgroup_cols = [&](std::size_t b, std::vector<std::vector<Int>>& cols) {
        for (std::size_t i = block_cols[b]; i < block_cols[b + 1]; ++i) {
            std::vector<Int> c(n);
            c[i] = 1;
            cols.push_back(scramble.apply(c));
        }
    };

    std::vector<Subgroup> table;
    for (int e = 0; e < static_cast<int>(lat->size()); ++e) {
        std::vector<std::vector<Int>> cols;
        block_subgroup_cols(0, cols);
        Mask js = lat->jset(e);
        while (js) {
            int p = std::countr_zero(js);
            js &= js - 1;
            block_subgroup_cols(1 + static_cast<std::size_t>(p), cols);
        }
        table.emplace_back(g, IntMatrix::from_columns(n, cols));
    }
    return {g, lat, SubgroupHom(lat, g, std::move(table))};
}

inline std::shared_ptr<const FinDistLattice> random_lattice(Rng& rng, std::size_t max_ji) {
    std::size_t k = rng.pick(max_ji + 1);
    std::vector<std::pair<int, int>> less;
    for (std::size_t t = 0; t < k; ++t) {
        int i = static_cast<int>(rng.pick(k)), j = static_cast<int>(rng.pick(k));
        if (i < j)
            less.emplace_back(i, j);
    }
    return std::make_shared<FinDistLattice>(FinDistLattice::downsets_of(FinPoset(k, less)));
}

inline BuiltHom random_pure_hom(Rng& rng, std::size_t max_ji, bool allow_free, bool allow_torsion,
                                long max_order = 8, bool with_bottom = true) {
    auto lat = random_lattice(rng, max_ji);
    PureHomSpec spec;
    for (std::size_t p = 0; p < lat->ji_count(); ++p)
        spec.blocks.push_back(random_block(rng, allow_free, allow_torsion, max_order));
    if (with_bottom && rng.coin())
        spec.bottom = random_block(rng, allow_free, allow_torsion, max_order);
    if (rng.coin())
        spec.slack = random_block(rng, allow_free, allow_torsion, max_order);
    return build_pure_hom(rng, lat, spec);
}

/// Variant with global ambient bounds: total free rank and total torsion
/// order are capped across all blocks.
inline BuiltHom random_pure_hom_bounded(Rng& rng, std::size_t max_ji, std::size_t max_free_total,
                                        long max_torsion_total) {
    auto lat = random_lattice(rng, max_ji);
    PureHomSpec spec;
    std::size_t free_left = max_free_total;
    long torsion_budget = max_torsion_total;
    auto draw = [&]() {
        BlockSpec b;
        if (free_left > 0 && rng.coin()) {
            b.free_rank = 1;
            --free_left;
        }
        if (torsion_budget >= 2 && rng.coin()) {
            long d = rng.range(2, std::min(torsion_budget, 8L));
            b.torsion.push_back(d);
            torsion_budget /= d;
        }
        return b;
    };
    for (std::size_t p = 0; p < lat->ji_count(); ++p)
        spec.blocks.push_back(draw());
    if (rng.coin())
        spec.bottom = draw();
    if (rng.coin())
        spec.slack = draw();
    return build_pure_hom(rng, lat, spec);
}

inline Subgroup random_subgroup_of(Rng& rng, const Subgroup& container, std::size_t max_gens) {
    const IntMatrix& basis = container.canonical_form();
    std::vector<std::vector<Int>> cols;
    std::size_t count = rng.pick(max_gens + 1);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Int> coeff(basis.cols());
        for (auto& c : coeff)
            c = rng.range(-3, 3);
        cols.push_back(basis.apply(coeff));
    }
    return Subgroup(container.ambient(), IntMatrix::from_columns(container.ambient()->rank(), cols));
}

inline GroupPtr random_group(Rng& rng, std::size_t max_free, long max_torsion_order) {
    std::size_t free = rng.pick(max_free + 1);
    std::vector<Int> diag(free, Int(0));
    if (rng.coin())
        diag.push_back(rng.range(2, max_torsion_order));
    if (diag.empty())
        diag.push_back(rng.range(2, max_torsion_order));
    const std::size_t n = diag.size();
    IntMatrix scramble = random_unimodular(rng, n);
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < n; ++i)
        if (diag[i] != 0) {
            std::vector<Int> c(n);
            c[i] = diag[i];
            cols.push_back(c);
        }
    return FgAbGroup::make(n, scramble * IntMatrix::from_columns(n, cols));
}

}  // namespace testgen
