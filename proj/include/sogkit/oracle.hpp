#pragma once

#include <optional>

#include "sogkit/fgab.hpp"
#include "sogkit/lathom.hpp"

namespace sogkit {

/// Brute-force cross-validators.  These reimplement the definitional checks
/// from scratch (own element enumeration and own naive column reduction) and
/// exist solely to catch bugs in the algebraic fast paths.
struct OracleBudget {
    std::size_t element_bound = 200000;
    Int multiple_bound = 4096;
};

/// Definitional purity: nB ^ A == nA for every n up to the exponent of the
/// torsion of B/A (purity obstructions factor through that torsion).
bool brute_purity(const Subgroup& a, const Subgroup& b, const OracleBudget& budget = {});

struct RefinementFailure {
    int a0, a1, b0, b1;  // first unrefinable equation a0+a1 == b0+b1
};

/// Exhaustive refinement scan over a commutative Cayley table; nullopt means
/// the refinement property holds.
std::optional<RefinementFailure> brute_refinement_failure(std::size_t size, const std::vector<int>& table,
                                                          const OracleBudget& budget = {});

/// Element-level verification that u |-> a ^ phi(u) satisfies both lattice
/// laws, by enumerating the finite groups involved.
bool brute_distributive(const Subgroup& a, const SubgroupHom& phi, const OracleBudget& budget = {});

}  // namespace sogkit
