#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sogkit/int_matrix.hpp"
#include "sogkit/normal_forms.hpp"

namespace sogkit {

class FgAbGroup;
using GroupPtr = std::shared_ptr<const FgAbGroup>;

/// A finitely generated abelian group presented as Z^rank modulo the column
/// span of an integer relation matrix.  Immutable once built; all derived
/// normal-form data is computed up front.
class FgAbGroup {
public:
    /// group_from_relations: relations must have `rank` rows.
    static GroupPtr make(std::size_t rank, IntMatrix relations);
    static GroupPtr free_group(std::size_t rank);
    /// Z/d1 + Z/d2 + ... (di = 0 gives a Z factor); relations are the diagonal.
    static GroupPtr from_factors(const std::vector<Int>& factors);

    std::size_t rank() const { return rank_; }
    const IntMatrix& relations() const { return relations_; }
    const HermiteDecomposition& relation_basis() const { return rel_hnf_; }

    // smith_u() * relations * (right transform) is diagonal; coordinate i of
    // y = smith_u() * x is taken modulo coordinate_moduli()[i] (0 = free).
    const IntMatrix& smith_u() const { return smith_u_; }
    const IntMatrix& smith_u_inverse() const { return smith_uinv_; }
    const std::vector<Int>& coordinate_moduli() const { return moduli_; }

    /// Reported isomorphism type: invariant factors > 1 in divisibility
    /// order, then one 0 per free rank.
    std::vector<Int> invariant_factors() const;
    std::size_t free_rank() const;
    bool is_finite() const { return free_rank() == 0; }
    std::optional<Int> order() const;

    std::vector<Int> canonical_rep(std::vector<Int> coords) const;
    bool same_group(const FgAbGroup& other) const;

private:
    FgAbGroup() = default;

    std::size_t rank_ = 0;
    IntMatrix relations_;
    HermiteDecomposition rel_hnf_;
    IntMatrix smith_u_;
    IntMatrix smith_uinv_;
    std::vector<Int> moduli_;
};

/// Element of an FgAbGroup, stored as the canonical coset representative.
class GroupElement {
public:
    GroupElement(GroupPtr group, std::vector<Int> coords);
    static GroupElement zero(GroupPtr group);

    const GroupPtr& group() const { return group_; }
    const std::vector<Int>& coords() const { return coords_; }

    bool is_zero() const;
    std::optional<Int> order() const;  // nullopt: infinite order
    bool is_torsion() const { return order().has_value(); }

    GroupElement operator+(const GroupElement& o) const;
    GroupElement operator-(const GroupElement& o) const;
    GroupElement operator-() const;
    GroupElement times(const Int& c) const;
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return coords_ < o.coords_; }

private:
    GroupPtr group_;
    std::vector<Int> coords_;
};

/// Subgroup given by a generator matrix (columns are elements).  The
/// canonical form is the column Hermite basis of [generators | relations];
/// it is the same for any generating set of the same subgroup.
class Subgroup {
public:
    Subgroup(GroupPtr ambient, IntMatrix generators);
    static Subgroup zero(GroupPtr ambient);
    static Subgroup full(GroupPtr ambient);
    static Subgroup span(GroupPtr ambient, const std::vector<GroupElement>& elems);

    const GroupPtr& ambient() const { return ambient_; }
    const IntMatrix& generators() const { return gens_; }
    const IntMatrix& canonical_form() const { return canon_.h; }
    const HermiteDecomposition& canonical_basis() const { return canon_; }
    std::vector<GroupElement> canonical_generators() const;

    bool operator==(const Subgroup& o) const;
    bool operator!=(const Subgroup& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_full() const;
    bool is_torsion() const;
    std::optional<Int> order() const;
    bool contains(const GroupElement& x) const;

private:
    GroupPtr ambient_;
    IntMatrix gens_;
    HermiteDecomposition canon_;  // canon_.h is the canonical form; canon_.v unused
};

// ---- subgroup algebra -----------------------------------------------------

/// Coefficients over h.generators() expressing x modulo relations, or
/// nullopt when x lies outside h.
std::optional<std::vector<Int>> subgroup_membership(const GroupElement& x, const Subgroup& h);

bool subgroup_leq(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_multiple(const Int& n, const Subgroup& a);  // nA
Subgroup subgroup_m_torsion(const Subgroup& a, const Int& m);  // { x in A : mx = 0 }

/// Direct-summand test by solving the splitting of B ->> B/A.  Requires
/// a <= b.  For finitely generated b this decides purity.
bool is_pure(const Subgroup& a, const Subgroup& b);

/// Some K with a + K = b and a, K intersecting trivially; throws
/// not_a_summand when the splitting has no solution.
Subgroup direct_complement(const Subgroup& a, const Subgroup& b);

/// Torsion decomposition of a group: T(G), the m-torsion subgroups G[m],
/// the projection onto the free quotient G/T(G), and preimage solving.
class TorsionSplit {
public:
    explicit TorsionSplit(GroupPtr g);

    const GroupPtr& group() const { return g_; }
    const Subgroup& torsion() const { return torsion_; }
    Subgroup m_torsion(const Int& m) const;
    const GroupPtr& quotient() const { return quotient_; }

    GroupElement project(const GroupElement& x) const;
    Subgroup project_subgroup(const Subgroup& h) const;
    /// Some x in h with project(x) == xbar; throws no_preimage otherwise.
    GroupElement lift(const GroupElement& xbar, const Subgroup& h) const;

private:
    GroupPtr g_;
    std::vector<std::size_t> free_pos_;
    Subgroup torsion_;
    GroupPtr quotient_;
};

/// Abstract isomorphism type of a subgroup: invariant factors > 1 in
/// divisibility order, then one 0 per free rank.
std::vector<Int> subgroup_invariants(const Subgroup& a);

struct CyclicData {
    bool cyclic = false;
    Int order = 1;  // 0 means infinite cyclic, 1 means trivial
    std::optional<GroupElement> generator;
};

/// Recognize a cyclic subgroup and produce a deterministic generator.
CyclicData cyclic_generator(const Subgroup& a);

// ---- enumeration helpers (finite inputs) -----------------------------------

std::optional<std::vector<GroupElement>> enumerate_elements(const Subgroup& h, std::size_t bound);
std::optional<std::vector<Subgroup>> all_subgroups(const GroupPtr& g, std::size_t bound);

/// Deterministic ordering key for subgroups of one ambient group.
bool subgroup_less(const Subgroup& a, const Subgroup& b);

}  // namespace sogkit
