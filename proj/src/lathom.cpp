#include "sogkit/lathom.hpp"

#include <bit>

#include "sogkit/errors.hpp"

namespace sogkit {

namespace {

std::vector<int> jset_bits(Mask js) {
    std::vector<int> out;
    while (js) {
        out.push_back(std::countr_zero(js));
        js &= js - 1;
    }
    return out;
}

// Families over J(D) augmented with a bottom block below phi(0); the derived
// value at u is bottom + sum of the blocks at J(u).
struct Family {
    std::vector<Subgroup> per_ji;
    Subgroup bottom;
};

Subgroup family_value(const Family& fam, const FinDistLattice& d, int elem) {
    Subgroup acc = fam.bottom;
    for (int p : jset_bits(d.jset(elem)))
        acc = subgroup_sum(acc, fam.per_ji[p]);
    return acc;
}

bool family_leq(const Family& a, const Family& b) {
    if (!subgroup_leq(a.bottom, b.bottom))
        return false;
    for (std::size_t p = 0; p < a.per_ji.size(); ++p)
        if (!subgroup_leq(a.per_ji[p], b.per_ji[p]))
            return false;
    return true;
}

// N(vec A) = { p : A_p ^ G_{p*} == A_{p*} }
bool in_n_set(const Family& fam, int p, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    Subgroup lhs = subgroup_intersection(fam.per_ji[p], phi.at_ji_star(p));
    return lhs == family_value(fam, d, d.ji_lower_star(p));
}

struct BlockDecomposition {
    Subgroup bottom;
    std::vector<Subgroup> per_ji;  // indexed like J(D); nonzero only inside the mask
};

// Split the generators of s along phi(0) + sum of phi(q) over q in jmask.
BlockDecomposition decompose_over_blocks(const Subgroup& s, const SubgroupHom& phi, Mask jmask) {
    const GroupPtr& g = phi.ambient();
    std::vector<int> bits = jset_bits(jmask);

    std::vector<const IntMatrix*> blocks;
    blocks.push_back(&phi.bottom_value().canonical_form());
    for (int q : bits)
        blocks.push_back(&phi.at_ji(q).canonical_form());

    IntMatrix stacked(g->rank(), 0);
    for (const IntMatrix* b : blocks)
        stacked = IntMatrix::hstack(stacked, *b);
    stacked = IntMatrix::hstack(stacked, g->relation_basis().h);

    std::vector<std::vector<std::vector<Int>>> cols(blocks.size());
    for (std::size_t j = 0; j < s.canonical_form().cols(); ++j) {
        auto sol = solve_columns(stacked, s.canonical_form().column(j));
        if (!sol)
            throw internal_error("generator does not decompose over the join blocks");
        std::size_t off = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            std::vector<Int> slice(sol->begin() + static_cast<long>(off),
                                   sol->begin() + static_cast<long>(off + blocks[b]->cols()));
            cols[b].push_back(blocks[b]->apply(slice));
            off += blocks[b]->cols();
        }
    }

    BlockDecomposition out{Subgroup(g, IntMatrix::from_columns(g->rank(), cols[0])),
                           std::vector<Subgroup>(phi.domain()->ji_count(), Subgroup::zero(g))};
    for (std::size_t b = 0; b < bits.size(); ++b)
        out.per_ji[bits[b]] = Subgroup(g, IntMatrix::from_columns(g->rank(), cols[b + 1]));
    return out;
}

EnvelopeResult envelope_impl(const Subgroup& a, const SubgroupHom& phi);

// The proof's Claim: enlarge the family so that p joins N while N and the
// family only grow.
Family claim_step(const Family& fam, int p, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    const int pstar = d.ji_lower_star(p);

    Subgroup s = subgroup_intersection(fam.per_ji[p], phi.value(pstar));
    BlockDecomposition parts = decompose_over_blocks(s, phi, d.jset(pstar));

    Subgroup seed = parts.bottom;
    for (int q : jset_bits(d.jset(pstar)))
        seed = subgroup_sum(seed, parts.per_ji[q]);

    auto iv = d.interval_below(pstar);
    SubgroupHom phi_sub = restrict_hom(phi, iv);
    Subgroup c = envelope_impl(seed, phi_sub).envelope;

    Family out{{}, subgroup_sum(fam.bottom, subgroup_intersection(c, phi.bottom_value()))};
    out.per_ji.reserve(fam.per_ji.size());
    for (std::size_t q = 0; q < fam.per_ji.size(); ++q) {
        int m = d.meet(pstar, d.ji_element(static_cast<int>(q)));
        out.per_ji.push_back(subgroup_sum(fam.per_ji[q], subgroup_intersection(c, phi.value(m))));
    }
    return out;
}

Family initial_family(const Subgroup& a, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    BlockDecomposition parts = decompose_over_blocks(a, phi, d.jset(d.top()));
    Family fam{std::move(parts.per_ji), std::move(parts.bottom)};
    // monotonize along the j-poset
    std::vector<Subgroup> closed = fam.per_ji;
    for (int p : d.ji_order()) {
        Subgroup acc = subgroup_sum(fam.bottom, fam.per_ji[p]);
        for (int q = 0; q < static_cast<int>(d.ji_count()); ++q)
            if (q != p && d.jposet().leq(q, p))
                acc = subgroup_sum(acc, closed[q]);
        closed[p] = acc;
    }
    fam.per_ji = std::move(closed);
    return fam;
}

EnvelopeResult envelope_impl(const Subgroup& a, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    if (is_distributive_element(a, phi))
        return {a, 0};

    EnvelopeResult res{a, 0};
    Family fam = initial_family(a, phi);
    for (int p : d.ji_order()) {
        Family next = claim_step(fam, p, phi);
        ++res.claim_iterations;
        if (!family_leq(fam, next))
            throw internal_error("Claim produced a non-monotone family");
        if (!in_n_set(next, p, phi))
            throw internal_error("Claim failed to put p into N");
        for (int q : d.ji_order()) {
            if (q == p)
                break;
            if (!in_n_set(next, q, phi))
                throw internal_error("Claim dropped an element from N");
        }
        fam = std::move(next);
    }

    Subgroup b = family_value(fam, d, d.top());
    if (!subgroup_leq(a, b) || !subgroup_leq(b, phi.top_value()) || !is_distributive_element(b, phi))
        throw internal_error("distributive envelope failed its postcondition");
    res.envelope = b;
    return res;
}

}  // namespace

SubgroupHom::SubgroupHom(LatticePtr domain, GroupPtr ambient, std::vector<Subgroup> table)
    : domain_(std::move(domain)), ambient_(std::move(ambient)), table_(std::move(table)) {
    if (table_.size() != domain_->size())
        throw validation_error("hom table must cover every lattice element");
    for (const Subgroup& s : table_)
        if (!s.ambient()->same_group(*ambient_))
            throw ambient_mismatch("hom value lives in a different ambient group");
}

HomReport validate_hom(const SubgroupHom& phi) {
    HomReport rep;
    const FinDistLattice& d = *phi.domain();
    for (int x = 0; x < static_cast<int>(d.size()); ++x)
        for (int y = x + 1; y < static_cast<int>(d.size()); ++y) {
            if (subgroup_sum(phi.value(x), phi.value(y)) != phi.value(d.join(x, y)))
                rep.violations.push_back({HomViolation::Kind::Join, x, y});
            if (subgroup_intersection(phi.value(x), phi.value(y)) != phi.value(d.meet(x, y)))
                rep.violations.push_back({HomViolation::Kind::Meet, x, y});
        }
    return rep;
}

PurityReport check_purity_report(const SubgroupHom& phi) {
    for (auto [u, v] : phi.domain()->covers()) {
        if (!is_pure(phi.value(u), phi.value(v)))
            return {false, u, v};
    }
    return {};
}

bool check_purity_condition(const SubgroupHom& phi) { return check_purity_report(phi).pure; }

bool is_distributive_element(const Subgroup& a, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    std::vector<Subgroup> met;
    met.reserve(d.size());
    for (int e = 0; e < static_cast<int>(d.size()); ++e)
        met.push_back(subgroup_intersection(a, phi.value(e)));
    for (int x = 0; x < static_cast<int>(d.size()); ++x)
        for (int y = x + 1; y < static_cast<int>(d.size()); ++y) {
            if (d.leq(x, y) || d.leq(y, x))
                continue;
            if (!subgroup_leq(met[d.join(x, y)], subgroup_sum(met[x], met[y])))
                return false;
        }
    return true;
}

DistrFamily chardistr_extract(const Subgroup& a, const SubgroupHom& phi) {
    if (!a.ambient()->same_group(*phi.ambient()))
        throw ambient_mismatch("element and hom have different ambient groups");
    if (!subgroup_leq(a, phi.top_value()))
        throw not_distributive("element does not lie below phi(1)");
    if (!is_distributive_element(a, phi))
        throw not_distributive("element is not distributive with respect to phi");

    const FinDistLattice& d = *phi.domain();
    DistrFamily fam{{}, subgroup_intersection(a, phi.bottom_value())};
    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p)
        fam.per_ji.push_back(subgroup_intersection(a, phi.at_ji(p)));

    // condition (iii) must hold before the family is handed out
    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p) {
        Subgroup lhs = subgroup_intersection(fam.per_ji[p], phi.at_ji_star(p));
        Subgroup rhs = fam.bottom;
        for (int q : jset_bits(d.jset(d.ji_lower_star(p))))
            rhs = subgroup_sum(rhs, fam.per_ji[q]);
        if (lhs != rhs)
            throw internal_error("extracted family violates condition (iii)");
    }
    return fam;
}

Subgroup chardistr_reconstruct(const DistrFamily& fam, const SubgroupHom& phi) {
    const FinDistLattice& d = *phi.domain();
    if (fam.per_ji.size() != d.ji_count())
        throw validation_error("family size does not match the join-irreducible count");

    if (!subgroup_leq(fam.bottom, phi.bottom_value()))
        throw family_invalid("i", "bottom block exceeds phi(0)");
    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p)
        if (!subgroup_leq(fam.per_ji[p], phi.at_ji(p)))
            throw family_invalid("i", "family block exceeds phi(p)");

    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p) {
        if (!subgroup_leq(fam.bottom, fam.per_ji[p]))
            throw family_invalid("ii", "bottom block not below a join-irreducible block");
        for (int q = 0; q < static_cast<int>(d.ji_count()); ++q)
            if (d.jposet().leq(p, q) && !subgroup_leq(fam.per_ji[p], fam.per_ji[q]))
                throw family_invalid("ii", "family is not monotone");
    }

    for (int p = 0; p < static_cast<int>(d.ji_count()); ++p) {
        Subgroup lhs = subgroup_intersection(fam.per_ji[p], phi.at_ji_star(p));
        Subgroup rhs = fam.bottom;
        for (int q : jset_bits(d.jset(d.ji_lower_star(p))))
            rhs = subgroup_sum(rhs, fam.per_ji[q]);
        if (lhs != rhs)
            throw family_invalid("iii", "a_p ^ phi(p_*) differs from the join below p_*");
    }

    Subgroup a = fam.bottom;
    for (const Subgroup& s : fam.per_ji)
        a = subgroup_sum(a, s);

    if (!is_distributive_element(a, phi))
        throw internal_error("reconstructed element is not distributive");
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        Subgroup expect = fam.bottom;
        for (int q : jset_bits(d.jset(u)))
            expect = subgroup_sum(expect, fam.per_ji[q]);
        if (subgroup_intersection(a, phi.value(u)) != expect)
            throw internal_error("reconstructed element meets phi incorrectly");
    }
    return a;
}

SubgroupHom restrict_hom(const SubgroupHom& phi, const FinDistLattice::Interval& iv) {
    std::vector<Subgroup> table;
    table.reserve(iv.lat.size());
    for (int parent : iv.to_parent)
        table.push_back(phi.value(parent));
    return SubgroupHom(std::make_shared<FinDistLattice>(iv.lat), phi.ambient(), std::move(table));
}

EnvelopeResult distributive_envelope(const Subgroup& a, const SubgroupHom& phi) {
    if (!a.ambient()->same_group(*phi.ambient()))
        throw precondition_violated("subgroup and hom have different ambient groups");
    if (!validate_hom(phi).valid())
        throw precondition_violated("phi is not a lattice homomorphism");
    if (!subgroup_leq(a, phi.top_value()))
        throw precondition_violated("subgroup is not contained in phi(1)");
    return envelope_impl(a, phi);
}

}  // namespace sogkit
