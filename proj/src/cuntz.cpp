#include "sogkit/cuntz.hpp"

#include "sogkit/errors.hpp"

namespace sogkit {

namespace {

const char* kLiftingNote =
    "stage maps are recorded at the level of V-monoid data; the existence of inducing "
    "C*-algebra homomorphisms between the stage algebras is assumed, not computed";

Int block_unit_scalar(const Subgroup& block, const GroupElement& component) {
    CyclicData cd = cyclic_generator(block);
    if (!cd.cyclic)
        throw not_a_block("block group is not cyclic");
    if (cd.order == 1)
        return 0;
    Subgroup gen_span = Subgroup::span(block.ambient(), {*cd.generator});
    auto w = subgroup_membership(component, gen_span);
    if (!w)
        throw internal_error("unit component escaped its block");
    return (*w)[0];
}

}  // namespace

AlgebraDescriptor AlgebraDescriptor::mat_cuntz(Int m, Int n) {
    if (m < 1 || n < 2)
        throw bad_spec("matrix Cuntz algebras need m >= 1 and 2 <= n < infinity");
    AlgebraDescriptor d;
    d.kind = Kind::MatCuntz;
    d.m = std::move(m);
    d.n = std::move(n);
    return d;
}

AlgebraDescriptor AlgebraDescriptor::mat_oinf(Int m) {
    if (m < 1)
        throw bad_spec("matrix algebras over O_infinity need m >= 1");
    AlgebraDescriptor d;
    d.kind = Kind::MatOInf;
    d.m = std::move(m);
    return d;
}

AlgebraDescriptor AlgebraDescriptor::corner_oinf(Int k) {
    if (k < 1)
        throw bad_spec("corners p_k O_infinity p_k need k >= 1");
    AlgebraDescriptor d;
    d.kind = Kind::CornerOInf;
    d.k = std::move(k);
    return d;
}

AlgebraDescriptor AlgebraDescriptor::direct_sum(std::vector<AlgebraDescriptor> summands) {
    if (summands.empty())
        throw bad_spec("direct sums need at least one summand");
    AlgebraDescriptor d;
    d.kind = Kind::DirectSum;
    d.summands = std::move(summands);
    return d;
}

bool AlgebraDescriptor::operator==(const AlgebraDescriptor& o) const {
    if (kind != o.kind)
        return false;
    switch (kind) {
        case Kind::MatCuntz:
            return m == o.m && n == o.n;
        case Kind::MatOInf:
            return m == o.m;
        case Kind::CornerOInf:
            return k == o.k;
        case Kind::DirectSum:
            return summands == o.summands;
    }
    return false;
}

std::string AlgebraDescriptor::display() const {
    auto istr = [](const Int& x) { return x.str(); };
    switch (kind) {
        case Kind::MatCuntz:
            return m == 1 ? "O_" + istr(n) : "M_" + istr(m) + "(O_" + istr(n) + ")";
        case Kind::MatOInf:
            return m == 1 ? "O_inf" : "M_" + istr(m) + "(O_inf)";
        case Kind::CornerOInf:
            return "p_" + istr(k) + " O_inf p_" + istr(k);
        case Kind::DirectSum: {
            std::string s;
            for (std::size_t i = 0; i < summands.size(); ++i) {
                if (i)
                    s += " + ";
                s += summands[i].display();
            }
            return s;
        }
    }
    return {};
}

BlockSum v_of_descriptor(const AlgebraDescriptor& d) {
    switch (d.kind) {
        case AlgebraDescriptor::Kind::MatCuntz:
            return block_monoid({BlockEntry{false, d.n - 1, d.m}});
        case AlgebraDescriptor::Kind::MatOInf:
            return block_monoid({BlockEntry{true, 1, d.m}});
        case AlgebraDescriptor::Kind::CornerOInf:
            return block_monoid({BlockEntry{true, 1, -(d.k - 1)}});
        case AlgebraDescriptor::Kind::DirectSum: {
            BlockSum acc = v_of_descriptor(d.summands.front());
            for (std::size_t i = 1; i < d.summands.size(); ++i)
                acc = direct_sum(acc, v_of_descriptor(d.summands[i]));
            return acc;
        }
    }
    throw internal_error("unhandled descriptor kind");
}

AlgebraDescriptor realize_block(const BlockSum& b) {
    if (b.blocks.size() != 1)
        throw not_a_block("realize_block needs exactly one block");
    if (!b.unit)
        throw not_a_block("realize_block needs an order-unit");
    CyclicData cd = cyclic_generator(b.blocks[0]);
    if (!cd.cyclic)
        throw not_a_block("block group is not cyclic");
    GroupElement u(b.pres.ambient, b.unit->coords);
    Int scalar = block_unit_scalar(b.blocks[0], u);
    if (cd.order == 0) {
        if (scalar > 0)
            return AlgebraDescriptor::mat_oinf(scalar);
        if (scalar == 0)
            return AlgebraDescriptor::corner_oinf(1);
        return AlgebraDescriptor::corner_oinf(1 - scalar);
    }
    Int r = pos_mod(scalar, cd.order);
    if (r == 0)
        r = cd.order;
    return AlgebraDescriptor::mat_cuntz(r, cd.order + 1);
}

AlgebraDescriptor realize_stage(const BlockSum& b) {
    const std::size_t k = b.blocks.size();
    if (k == 0)
        throw not_a_block("a stage needs at least one block");

    // split the unit into block components
    std::vector<GroupElement> components;
    if (b.unit) {
        IntMatrix stacked(b.pres.ambient->rank(), 0);
        for (const Subgroup& blk : b.blocks)
            stacked = IntMatrix::hstack(stacked, blk.canonical_form());
        stacked = IntMatrix::hstack(stacked, b.pres.ambient->relation_basis().h);
        auto sol = solve_columns(stacked, GroupElement(b.pres.ambient, b.unit->coords).coords());
        if (!sol)
            throw internal_error("stage unit does not split along the blocks");
        std::size_t off = 0;
        for (const Subgroup& blk : b.blocks) {
            std::vector<Int> slice(sol->begin() + static_cast<long>(off),
                                   sol->begin() + static_cast<long>(off + blk.canonical_form().cols()));
            components.emplace_back(b.pres.ambient, blk.canonical_form().apply(slice));
            off += blk.canonical_form().cols();
        }
    }

    std::vector<AlgebraDescriptor> summands;
    for (std::size_t i = 0; i < k; ++i) {
        CyclicData cd = cyclic_generator(b.blocks[i]);
        if (!cd.cyclic)
            throw stage_not_in_bbar("stage block " + std::to_string(i) + " is not cyclic");
        Int scalar = b.unit ? block_unit_scalar(b.blocks[i], components[i]) : Int(1);
        if (cd.order == 0) {
            if (scalar > 0)
                summands.push_back(AlgebraDescriptor::mat_oinf(scalar));
            else if (scalar == 0)
                summands.push_back(AlgebraDescriptor::corner_oinf(1));
            else
                summands.push_back(AlgebraDescriptor::corner_oinf(1 - scalar));
        } else {
            Int r = pos_mod(scalar, cd.order);
            if (r == 0)
                r = cd.order;
            summands.push_back(AlgebraDescriptor::mat_cuntz(r, cd.order + 1));
        }
    }
    if (summands.size() == 1)
        return summands[0];
    return AlgebraDescriptor::direct_sum(std::move(summands));
}

SogElement apply_map(const MonoidMapData& f, const SogPresentation& src, const SogPresentation& dst,
                     const SogElement& x) {
    SogElement vx = sog_element(src, x.idem, x.coords);
    const Subgroup& gsrc = src.groups[static_cast<std::size_t>(vx.idem)];
    IntMatrix stacked = IntMatrix::hstack(gsrc.canonical_form(), src.ambient->relation_basis().h);
    auto sol = solve_columns(stacked, vx.coords);
    if (!sol)
        throw internal_error("element escaped its own group");
    std::vector<Int> c(sol->begin(), sol->begin() + static_cast<long>(gsrc.canonical_form().cols()));

    auto it = f.group_maps.find(vx.idem);
    std::vector<Int> img(dst.ambient->rank(), Int(0));
    if (it != f.group_maps.end())
        img = it->second.apply(c);
    else if (!c.empty() && gsrc.canonical_form().cols() != 0 && !gsrc.is_zero())
        throw map_not_homomorphism("map is missing the group data at idempotent " + std::to_string(vx.idem));
    return sog_element(dst, f.idem_map[static_cast<std::size_t>(vx.idem)], std::move(img));
}

void validate_map(const MonoidMapData& f, const SogPresentation& src, const SogPresentation& dst) {
    const int n = static_cast<int>(src.lam.size());
    if (f.idem_map.size() != src.lam.size())
        throw map_not_homomorphism("idempotent map does not cover the source semilattice");
    for (int v : f.idem_map)
        if (v < 0 || static_cast<std::size_t>(v) >= dst.lam.size())
            throw map_not_homomorphism("idempotent map target out of range");
    if (f.idem_map[static_cast<std::size_t>(src.lam.zero())] != dst.lam.zero())
        throw map_not_homomorphism("map does not send zero to zero");
    for (int e = 0; e < n; ++e)
        for (int g = 0; g < n; ++g)
            if (f.idem_map[static_cast<std::size_t>(src.lam.join(e, g))] !=
                dst.lam.join(f.idem_map[static_cast<std::size_t>(e)], f.idem_map[static_cast<std::size_t>(g)]))
                throw map_not_homomorphism("idempotent map violates the join law");

    for (int e = 0; e < n; ++e) {
        const Subgroup& gsrc = src.groups[static_cast<std::size_t>(e)];
        const std::size_t cols = gsrc.canonical_form().cols();
        auto it = f.group_maps.find(e);
        if (it == f.group_maps.end()) {
            if (!gsrc.is_zero())
                throw map_not_homomorphism("map is missing the group data at idempotent " + std::to_string(e));
            continue;
        }
        const IntMatrix& mat = it->second;
        if (mat.rows() != dst.ambient->rank() || mat.cols() != cols)
            throw map_not_homomorphism("group map at idempotent " + std::to_string(e) + " has the wrong shape");
        const Subgroup& gdst = dst.groups[static_cast<std::size_t>(f.idem_map[static_cast<std::size_t>(e)])];
        for (std::size_t j = 0; j < cols; ++j)
            if (!gdst.contains(GroupElement(dst.ambient, mat.column(j))))
                throw map_not_homomorphism("group map image escapes the target group at idempotent " +
                                           std::to_string(e));
        // well-definedness: presentation relations of the source group map to zero
        IntMatrix ker = kernel_basis(IntMatrix::hstack(gsrc.canonical_form(), src.ambient->relation_basis().h));
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            std::vector<Int> c(cols);
            for (std::size_t i = 0; i < cols; ++i)
                c[i] = ker(i, j);
            if (!GroupElement(dst.ambient, mat.apply(c)).is_zero())
                throw map_not_homomorphism("group map at idempotent " + std::to_string(e) +
                                           " is not well-defined on the group presentation");
        }
    }

    // restriction compatibility: evaluating an element of G_e through the
    // map at e or through the map at any g >= e must agree in the target
    for (int e = 0; e < n; ++e)
        for (int g = 0; g < n; ++g) {
            if (e == g || !src.lam.leq(e, g))
                continue;
            const Subgroup& gsrc = src.groups[static_cast<std::size_t>(e)];
            if (gsrc.is_zero())
                continue;
            const Subgroup& gbig = src.groups[static_cast<std::size_t>(g)];
            const IntMatrix& mat_e = f.group_maps.at(e);
            const IntMatrix& mat_g = f.group_maps.at(g);
            IntMatrix stacked = IntMatrix::hstack(gbig.canonical_form(), src.ambient->relation_basis().h);
            for (std::size_t j = 0; j < gsrc.canonical_form().cols(); ++j) {
                GroupElement via_e(dst.ambient, mat_e.column(j));
                auto sol = solve_columns(stacked, gsrc.canonical_form().column(j));
                if (!sol)
                    throw map_not_homomorphism("source values are not nested along the order");
                std::vector<Int> c(sol->begin(), sol->begin() + static_cast<long>(gbig.canonical_form().cols()));
                GroupElement via_g(dst.ambient, mat_g.apply(c));
                if (via_e != via_g)
                    throw map_not_homomorphism("group maps disagree along the order at (" + std::to_string(e) +
                                               "," + std::to_string(g) + ")");
            }
        }
}

Blueprint emit_blueprint(const std::vector<BlueprintStageInput>& stages, const std::vector<MonoidMapData>& maps,
                         bool unital) {
    if (stages.empty())
        throw bad_spec("a blueprint needs at least one stage");
    if (maps.size() + 1 != stages.size())
        throw bad_spec("a blueprint with n stages needs n-1 connecting maps");

    std::vector<BlockSum> shaped;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        auto bs = as_block_sum(stages[i].pres, stages[i].unit);
        if (!bs)
            throw stage_not_in_bbar("stage " + std::to_string(i) + " is not a sum of blocks");
        for (const Subgroup& blk : bs->blocks)
            if (!cyclic_generator(blk).cyclic)
                throw stage_not_in_bbar("stage " + std::to_string(i) + " has a non-cyclic block");
        if (unital && !bs->unit)
            throw map_not_normalized("unital blueprints need an order-unit at stage " + std::to_string(i));
        shaped.push_back(std::move(*bs));
    }

    Blueprint out;
    out.unital = unital;
    out.note = kLiftingNote;
    for (const BlockSum& b : shaped)
        out.stages.push_back(realize_stage(b));
    for (std::size_t i = 0; i < maps.size(); ++i) {
        validate_map(maps[i], shaped[i].pres, shaped[i + 1].pres);
        if (unital) {
            SogElement img = apply_map(maps[i], shaped[i].pres, shaped[i + 1].pres, *shaped[i].unit);
            if (!(img == *shaped[i + 1].unit))
                throw map_not_normalized("stage map " + std::to_string(i) + " does not send the unit to the unit");
        }
        out.maps.push_back(maps[i]);
    }
    return out;
}

AlgebraDescriptor respecialize(const AlgebraDescriptor& d) {
    switch (d.kind) {
        case AlgebraDescriptor::Kind::MatCuntz:
        case AlgebraDescriptor::Kind::MatOInf:
            return d;
        case AlgebraDescriptor::Kind::CornerOInf:
            // same V-monoid after forgetting the order-unit
            return AlgebraDescriptor::mat_oinf(1);
        case AlgebraDescriptor::Kind::DirectSum: {
            std::vector<AlgebraDescriptor> out;
            for (const auto& s : d.summands)
                out.push_back(respecialize(s));
            return AlgebraDescriptor::direct_sum(std::move(out));
        }
    }
    throw internal_error("unhandled descriptor kind");
}

}  // namespace sogkit
