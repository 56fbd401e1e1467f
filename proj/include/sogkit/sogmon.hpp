#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sogkit/dlat.hpp"
#include "sogkit/fgab.hpp"

namespace sogkit {

/// Finite commutative monoid given by its Cayley table.
class FinMonoid {
public:
    FinMonoid(std::size_t size, std::vector<int> table, int zero);

    std::size_t size() const { return size_; }
    int plus(int x, int y) const { return table_[static_cast<std::size_t>(x) * size_ + y]; }
    int zero() const { return zero_; }
    const std::vector<int>& table() const { return table_; }

    /// Algebraic preorder: x <= y iff x + z == y for some z.
    bool leq(int x, int y) const;
    bool is_idempotent(int x) const { return plus(x, x) == x; }
    std::vector<int> idempotents() const;

private:
    std::size_t size_ = 0;
    std::vector<int> table_;
    int zero_ = 0;
};

/// Regular conical refinement monoid presented as the disjoint union of
/// subgroups of one ambient group over a semilattice of idempotents.
struct SogPresentation {
    FinSemilattice lam;
    GroupPtr ambient;
    std::vector<Subgroup> groups;  // one per semilattice element

    struct Report {
        bool ok = true;
        std::string detail;
    };
    Report validate() const;
    void require_valid() const;  // throws invalid_presentation

    /// Largest element below both e and f (ideals of a finite semilattice
    /// are principal, so this always exists).
    int meet_like(int e, int f) const;
};

/// Element (e, g) with g in the group assigned to e.
struct SogElement {
    int idem = 0;
    std::vector<Int> coords;

    bool operator==(const SogElement& o) const { return idem == o.idem && coords == o.coords; }
    bool operator<(const SogElement& o) const {
        return idem != o.idem ? idem < o.idem : coords < o.coords;
    }
};

SogElement sog_element(const SogPresentation& p, int idem, std::vector<Int> coords);  // validates
SogElement sog_add(const SogElement& x, const SogElement& y, const SogPresentation& p);
bool sog_leq(const SogElement& x, const SogElement& y, const SogPresentation& p);

struct AxiomReport {
    bool regular = false;
    bool conical = false;
    bool refinement = false;
    bool emb = false;
    bool pur = false;
    std::string witness;  // first failure, human-readable

    bool all() const { return regular && conical && refinement && emb && pur; }
};

AxiomReport check_axioms(const FinMonoid& m);
AxiomReport check_axioms(const SogPresentation& p);

/// Semilattice-of-groups decomposition of a regular monoid.
struct RegularDecomposition {
    FinMonoid monoid;
    FinSemilattice lam;                        // join table on the idempotents
    std::vector<int> idem_carrier;             // idempotent index -> carrier element
    std::vector<int> component_of;             // carrier element -> idempotent index
    std::vector<std::vector<int>> components;  // per idempotent, sorted carrier elements

    /// Natural map G[a] -> G[b] for a <= b: x |-> x + b.
    int natural_map(int b_idem, int x) const { return monoid.plus(x, idem_carrier[b_idem]); }
};

RegularDecomposition decompose_regular(const FinMonoid& m);  // throws not_regular

/// Rebuild a presentation from the decomposition of a finite regular
/// conical monoid (the desk-scale content of the hard direction).
struct MonoidPresentation {
    RegularDecomposition dec;
    SogPresentation pres;
    std::vector<SogElement> element_of;  // carrier element -> presentation element
};

MonoidPresentation presentation_from_monoid(const FinMonoid& m);

// ---- block monoids ------------------------------------------------------------

/// One (Z/nZ) u {0} or Z u {0} block, with an optional order-unit label.
struct BlockEntry {
    bool infinite = false;
    Int order = 1;  // n >= 1 for cyclic blocks
    std::optional<Int> unit;
};

struct BlockSum {
    SogPresentation pres;          // Boolean semilattice, element index == atom mask
    std::vector<Subgroup> blocks;  // coordinate group per atom
    std::optional<SogElement> unit;
};

BlockSum block_monoid(const std::vector<BlockEntry>& spec);
BlockSum direct_sum(const BlockSum& a, const BlockSum& b);

/// Recognize a presentation as a sum of blocks: Boolean semilattice with
/// independent per-atom groups.  nullopt when the shape does not match.
std::optional<BlockSum> as_block_sum(const SogPresentation& p, std::optional<SogElement> unit);

FinSemilattice boolean_semilattice(std::size_t atoms);

// ---- covers and retracts ---------------------------------------------------------

struct CoverResult {
    SogPresentation cover;
    std::vector<int> idem_to_parent;  // cover semilattice element -> parent element
};

/// Finitely generated submonoid of p containing xs, built per the
/// directed-union argument: ideal lattice, generated sublattice, pure
/// approximation, and per-join-irreducible complements.
CoverResult fg_submonoid_cover(const SogPresentation& p, std::vector<SogElement> xs);

struct RetractWitness {
    BlockSum b;
    std::vector<int> ji_carrier;        // join-irreducible -> semilattice element
    std::vector<Subgroup> complements;  // K_p per join-irreducible
    std::vector<Mask> f_idem;           // semilattice element -> atom mask of B
    std::vector<int> g_idem;            // atom mask -> semilattice element
};

/// Exhibits p as a retract of a block-shaped presentation: f embeds, g
/// projects, g of f is the identity.  Requires the semilattice to be a
/// distributive lattice.
RetractWitness retract_witness(const SogPresentation& p);

SogElement retract_f(const RetractWitness& w, const SogElement& x);  // into w.b.pres
SogElement retract_g(const RetractWitness& w, const SogElement& x);  // back into p

/// Cayley table of a presentation whose groups are all finite.
struct Materialized {
    FinMonoid monoid;
    std::vector<SogElement> labels;  // carrier element -> presentation element
};

std::optional<Materialized> materialize(const SogPresentation& p, std::size_t bound);

}  // namespace sogkit
