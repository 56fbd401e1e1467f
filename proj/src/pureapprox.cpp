#include "sogkit/pureapprox.hpp"

#include <bit>

#include "sogkit/errors.hpp"

namespace sogkit {

namespace {

void require_pure_hom(const SubgroupHom& phi) {
    if (!validate_hom(phi).valid())
        throw precondition_violated("map is not a lattice homomorphism");
    if (!check_purity_condition(phi))
        throw purity_required("map does not satisfy the purity condition");
}

std::vector<int> jset_bits(Mask js) {
    std::vector<int> out;
    while (js) {
        out.push_back(std::countr_zero(js));
        js &= js - 1;
    }
    return out;
}

SubgroupHom reverified(SubgroupHom psi) {
    if (!validate_hom(psi).valid())
        throw internal_error("induced map failed the homomorphism laws");
    if (!check_purity_condition(psi))
        throw internal_error("induced map failed the purity condition");
    return psi;
}

ApproxResult finish_approx(const SubgroupHom& phi, const Subgroup& h, SubgroupHom psi) {
    const FinDistLattice& d = *phi.domain();
    if (!validate_hom(psi).valid())
        throw internal_error("approximation is not a lattice homomorphism");
    PurityReport purity = check_purity_report(psi);
    if (!purity.pure)
        throw internal_error("approximation violates the purity condition");
    std::vector<ApproxCertEntry> cert;
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        Subgroup hu = subgroup_intersection(h, phi.value(u));
        if (!subgroup_leq(hu, psi.value(u)) || !subgroup_leq(psi.value(u), phi.value(u)))
            throw internal_error("approximation violates the sandwich containments");
        cert.push_back({hu, psi.value(u), phi.value(u)});
    }
    return {std::move(psi), std::move(cert), purity};
}

}  // namespace

SubgroupHom hom_m_torsion(const SubgroupHom& phi, const Int& m) {
    require_pure_hom(phi);
    if (m <= 0)
        throw precondition_violated("m must be a positive integer");
    std::vector<Subgroup> table;
    table.reserve(phi.domain()->size());
    for (const Subgroup& s : phi.table())
        table.push_back(subgroup_m_torsion(s, m));
    return reverified(SubgroupHom(phi.domain(), phi.ambient(), std::move(table)));
}

TorsionParts hom_torsion_parts(const SubgroupHom& phi) {
    require_pure_hom(phi);
    auto split = std::make_shared<TorsionSplit>(phi.ambient());
    std::vector<Subgroup> tor_table, free_table;
    for (const Subgroup& s : phi.table()) {
        tor_table.push_back(subgroup_intersection(s, split->torsion()));
        free_table.push_back(split->project_subgroup(s));
    }
    TorsionParts parts{reverified(SubgroupHom(phi.domain(), phi.ambient(), std::move(tor_table))),
                       reverified(SubgroupHom(phi.domain(), split->quotient(), std::move(free_table))), split};
    return parts;
}

ApproxResult approx_torsion(const SubgroupHom& phi, const Subgroup& h_in) {
    require_pure_hom(phi);
    if (!h_in.ambient()->same_group(*phi.ambient()))
        throw ambient_mismatch("subgroup and hom have different ambient groups");
    if (!phi.top_value().is_torsion())
        throw torsion_required("approx_torsion needs torsion values");
    if (!h_in.is_torsion())
        throw torsion_required("approx_torsion needs a torsion subgroup");
    const FinDistLattice& d = *phi.domain();
    const GroupPtr& g = phi.ambient();
    Subgroup h = subgroup_intersection(h_in, phi.top_value());

    // m = exponent of h (lcm of the generator orders)
    Int m = 1;
    for (const GroupElement& x : h.canonical_generators()) {
        auto ord = x.order();
        if (!ord)
            throw torsion_required("subgroup has an element of infinite order");
        m = lcm_int(m, *ord);
    }

    SubgroupHom phim = hom_m_torsion(phi, m);

    // Kulikov complements inside the m-bounded restriction
    std::vector<Subgroup> blocks;  // bottom block, then one per join-irreducible
    blocks.push_back(phim.bottom_value());
    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p)
        blocks.push_back(direct_complement(phim.at_ji_star(p), phim.at_ji(p)));

    // decompose the generators of h ^ G_u along G_u[m] = B_0 + sum K_p
    std::vector<std::vector<std::vector<Int>>> collected(blocks.size());
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        Subgroup hu = subgroup_intersection(h, phi.value(u));
        if (hu.canonical_form().cols() == 0)
            continue;
        std::vector<int> bits = jset_bits(d.jset(u));
        IntMatrix stacked = blocks[0].canonical_form();
        for (int p : bits)
            stacked = IntMatrix::hstack(stacked, blocks[1 + static_cast<std::size_t>(p)].canonical_form());
        stacked = IntMatrix::hstack(stacked, g->relation_basis().h);
        for (std::size_t j = 0; j < hu.canonical_form().cols(); ++j) {
            auto sol = solve_columns(stacked, hu.canonical_form().column(j));
            if (!sol)
                throw internal_error("generator does not decompose along the Kulikov blocks");
            std::size_t off = 0;
            auto take = [&](std::size_t block_idx) {
                const IntMatrix& bm = blocks[block_idx].canonical_form();
                std::vector<Int> slice(sol->begin() + static_cast<long>(off),
                                       sol->begin() + static_cast<long>(off + bm.cols()));
                collected[block_idx].push_back(bm.apply(slice));
                off += bm.cols();
            };
            take(0);
            for (int p : bits)
                take(1 + static_cast<std::size_t>(p));
        }
    }

    std::vector<Subgroup> fg_blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        fg_blocks.push_back(Subgroup(g, IntMatrix::from_columns(g->rank(), collected[b])));

    std::vector<Subgroup> table;
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        Subgroup acc = fg_blocks[0];
        for (int p : jset_bits(d.jset(u)))
            acc = subgroup_sum(acc, fg_blocks[1 + static_cast<std::size_t>(p)]);
        table.push_back(acc);
    }
    return finish_approx(phi, h, SubgroupHom(phi.domain(), g, std::move(table)));
}

ApproxResult pure_approximation(const SubgroupHom& phi, const Subgroup& h_in) {
    require_pure_hom(phi);
    if (!h_in.ambient()->same_group(*phi.ambient()))
        throw ambient_mismatch("subgroup and hom have different ambient groups");
    const FinDistLattice& d = *phi.domain();
    const GroupPtr& g = phi.ambient();
    Subgroup h = subgroup_intersection(h_in, phi.top_value());

    TorsionParts parts = hom_torsion_parts(phi);
    const TorsionSplit& split = *parts.split;

    // free part: distributive envelope of pi(h), then its block basis
    Subgroup hbar = split.project_subgroup(h);
    Subgroup envelope = distributive_envelope(hbar, parts.free_hom).envelope;

    std::vector<Subgroup> hbar_table;
    for (const Subgroup& s : parts.free_hom.table())
        hbar_table.push_back(subgroup_intersection(envelope, s));
    SubgroupHom psibar = reverified(SubgroupHom(phi.domain(), split.quotient(), std::move(hbar_table)));

    // blocks of the envelope: bottom plus a complement per join-irreducible
    std::vector<Subgroup> bar_blocks;
    bar_blocks.push_back(psibar.bottom_value());
    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p)
        bar_blocks.push_back(direct_complement(psibar.at_ji_star(p), psibar.at_ji(p)));

    // alpha lifts each block basis element through pi into the matching phi value
    std::vector<std::vector<Int>> basis_cols;  // in the free quotient
    std::vector<std::vector<Int>> lift_cols;   // in g
    std::vector<std::vector<std::size_t>> block_members(bar_blocks.size());
    for (std::size_t b = 0; b < bar_blocks.size(); ++b) {
        const Subgroup& target = b == 0 ? phi.bottom_value() : phi.at_ji(static_cast<int>(b - 1));
        const IntMatrix& bm = bar_blocks[b].canonical_form();
        for (std::size_t j = 0; j < bm.cols(); ++j) {
            GroupElement xbar(split.quotient(), bm.column(j));
            GroupElement lifted = split.lift(xbar, target);
            block_members[b].push_back(basis_cols.size());
            basis_cols.push_back(xbar.coords());
            lift_cols.push_back(lifted.coords());
        }
    }
    IntMatrix bar_basis = IntMatrix::from_columns(split.quotient()->rank(), basis_cols);
    IntMatrix lifted_basis = IntMatrix::from_columns(g->rank(), lift_cols);

    auto alpha = [&](const GroupElement& xbar) {
        auto c = solve_columns(bar_basis, xbar.coords());
        if (!c)
            throw internal_error("element outside the envelope block basis");
        return GroupElement(g, lifted_basis.apply(*c));
    };

    // H_u = alpha(envelope ^ pi G_u), spanned block-wise
    std::vector<Subgroup> h_u_table;
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        std::vector<std::vector<Int>> cols;
        auto take_block = [&](std::size_t b) {
            for (std::size_t idx : block_members[b])
                cols.push_back(lift_cols[idx]);
        };
        take_block(0);
        for (int p : jset_bits(d.jset(u)))
            take_block(1 + static_cast<std::size_t>(p));
        h_u_table.push_back(Subgroup(g, IntMatrix::from_columns(g->rank(), cols)));
    }

    // torsion discrepancies x - alpha(pi(x)) per generator of h ^ G_u
    Subgroup b_sum = Subgroup::zero(g);
    std::vector<Subgroup> b_u_table;
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        std::vector<std::vector<Int>> cols;
        Subgroup hu = subgroup_intersection(h, phi.value(u));
        for (const GroupElement& x : hu.canonical_generators()) {
            GroupElement disc = x - alpha(split.project(x));
            if (!disc.is_torsion() || !phi.value(u).contains(disc))
                throw internal_error("torsion discrepancy fell outside T(G_u)");
            cols.push_back(disc.coords());
        }
        Subgroup bu(g, IntMatrix::from_columns(g->rank(), cols));
        b_u_table.push_back(bu);
        b_sum = subgroup_sum(b_sum, bu);
    }

    ApproxResult torsion_part = approx_torsion(parts.torsion_hom, b_sum);

    // psi(u) = G'_u + H_u, an internal direct sum
    std::vector<Subgroup> table;
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        const Subgroup& gu = torsion_part.psi.value(u);
        if (!subgroup_intersection(gu, h_u_table[u]).is_zero())
            throw internal_error("torsion and lifted parts are not independent");
        if (!subgroup_leq(b_u_table[u], gu))
            throw internal_error("discrepancies escaped the torsion approximation");
        table.push_back(subgroup_sum(gu, h_u_table[u]));
    }
    return finish_approx(phi, h, SubgroupHom(phi.domain(), g, std::move(table)));
}

PureWitness pure_witness(const Subgroup& a, const Subgroup& b, const Subgroup& h) {
    if (!subgroup_leq(h, b))
        throw precondition_violated("h must be a subgroup of b");
    if (!subgroup_leq(a, b))
        throw precondition_violated("a must be a subgroup of b");
    if (!is_pure(a, b))
        throw not_pure("a is not a pure subgroup of b");

    auto two_chain = std::make_shared<FinDistLattice>(FinDistLattice::chain_lattice(1));
    SubgroupHom phi(two_chain, a.ambient(), {a, b});
    ApproxResult res = pure_approximation(phi, h);
    PureWitness out{res.psi.value(two_chain->bottom()), res.psi.value(two_chain->top()),
                    Subgroup::zero(a.ambient())};
    out.complement = direct_complement(out.a_prime, out.b_prime);
    return out;
}

}  // namespace sogkit
