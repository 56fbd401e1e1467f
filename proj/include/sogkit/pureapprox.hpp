#pragma once

#include <memory>

#include "sogkit/lathom.hpp"

namespace sogkit {

/// Per-element certificate triple: H ^ phi(u) <= psi(u) <= phi(u).
struct ApproxCertEntry {
    Subgroup h_meet_phi;
    Subgroup psi_value;
    Subgroup phi_value;
};

/// A pure finite approximation of phi relative to a finitely generated H.
struct ApproxResult {
    SubgroupHom psi;
    std::vector<ApproxCertEntry> certificate;  // indexed by lattice element
    PurityReport purity;
};

/// u -> G_u[m].  Requires phi valid and purity-satisfying; the result is
/// re-verified to be a lattice homomorphism with the purity condition.
SubgroupHom hom_m_torsion(const SubgroupHom& phi, const Int& m);

struct TorsionParts {
    SubgroupHom torsion_hom;  // u -> T(G_u), same ambient group
    SubgroupHom free_hom;     // u -> pi(G_u), over the free quotient
    std::shared_ptr<TorsionSplit> split;
};

/// The two induced maps u -> T(G_u) and u -> pi(G_u).
TorsionParts hom_torsion_parts(const SubgroupHom& phi);

/// Torsion case of the approximation: phi(1) and h must be torsion.
ApproxResult approx_torsion(const SubgroupHom& phi, const Subgroup& h);

/// The pure approximation pipeline for arbitrary finitely generated ambient
/// groups: free part via the distributive envelope and a lifted embedding,
/// torsion discrepancies via approx_torsion.
ApproxResult pure_approximation(const SubgroupHom& phi, const Subgroup& h);

struct PureWitness {
    Subgroup a_prime;
    Subgroup b_prime;
    Subgroup complement;  // direct complement of a_prime in b_prime
};

/// Finitely generated witnesses for purity of a in b relative to h; throws
/// not_pure when a is not pure in b.
PureWitness pure_witness(const Subgroup& a, const Subgroup& b, const Subgroup& h);

}  // namespace sogkit
