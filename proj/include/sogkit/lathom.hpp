#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sogkit/dlat.hpp"
#include "sogkit/fgab.hpp"

namespace sogkit {

using LatticePtr = std::shared_ptr<const FinDistLattice>;

/// Lattice homomorphism D -> Sub G given as a full value table over the
/// elements of D.
class SubgroupHom {
public:
    SubgroupHom(LatticePtr domain, GroupPtr ambient, std::vector<Subgroup> table);

    const LatticePtr& domain() const { return domain_; }
    const GroupPtr& ambient() const { return ambient_; }
    const Subgroup& value(int elem) const { return table_[elem]; }
    const std::vector<Subgroup>& table() const { return table_; }

    const Subgroup& top_value() const { return table_[domain_->top()]; }
    const Subgroup& bottom_value() const { return table_[domain_->bottom()]; }
    /// Value at a join-irreducible / at its lower cover.
    const Subgroup& at_ji(int p) const { return table_[domain_->ji_element(p)]; }
    const Subgroup& at_ji_star(int p) const { return table_[domain_->ji_lower_star(p)]; }

private:
    LatticePtr domain_;
    GroupPtr ambient_;
    std::vector<Subgroup> table_;
};

struct HomViolation {
    enum class Kind { Join, Meet } kind;
    int x, y;  // element indices of the violated instance
};

struct HomReport {
    std::vector<HomViolation> violations;
    bool valid() const { return violations.empty(); }
};

/// Lists every violated join/meet instance; empty report iff phi is a
/// lattice homomorphism.
HomReport validate_hom(const SubgroupHom& phi);

struct PurityReport {
    bool pure = true;
    int witness_u = -1;  // covering pair violating purity, when !pure
    int witness_v = -1;
};

/// True iff phi(u) is pure in phi(v) for all u <= v; checked on covering
/// pairs, purity being transitive.
PurityReport check_purity_report(const SubgroupHom& phi);
bool check_purity_condition(const SubgroupHom& phi);

/// One-sided check of a ^ phi(x v y) <= (a ^ phi(x)) v (a ^ phi(y)) over all
/// pairs; the reverse inequality is automatic for lattice homomorphisms.
bool is_distributive_element(const Subgroup& a, const SubgroupHom& phi);

/// Witness family, conditions (i)-(iii), for a distributive
/// element: per_ji[p] = a ^ phi(p), plus the bottom meet a ^ phi(0) that
/// closes the conditions at atoms when phi(0) is nontrivial.
struct DistrFamily {
    std::vector<Subgroup> per_ji;  // indexed by join-irreducibles of D
    Subgroup bottom;               // a ^ phi(0)
};

DistrFamily chardistr_extract(const Subgroup& a, const SubgroupHom& phi);

/// Rebuilds a = bottom + sum of the family after checking (i)-(iii); throws
/// family_invalid naming the violated condition.
Subgroup chardistr_reconstruct(const DistrFamily& fam, const SubgroupHom& phi);

struct EnvelopeResult {
    Subgroup envelope;
    std::size_t claim_iterations = 0;  // outer Claim applications, <= |J(D)|
};

/// Distributive envelope: a finitely generated B with
/// A <= B <= phi(1), distributive with respect to phi; verified before
/// returning.
EnvelopeResult distributive_envelope(const Subgroup& a, const SubgroupHom& phi);

/// Restriction of phi to the interval [0, elem].
SubgroupHom restrict_hom(const SubgroupHom& phi, const FinDistLattice::Interval& iv);

}  // namespace sogkit
