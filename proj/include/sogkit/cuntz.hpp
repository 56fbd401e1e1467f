#pragma once

#include <map>
#include <string>
#include <vector>

#include "sogkit/sogmon.hpp"

namespace sogkit {

/// Symbolic descriptor of a building-block C*-algebra: a matrix algebra
/// over a Cuntz algebra, a matrix algebra over O_infinity, a corner
/// p_k O_infinity p_k, or a finite direct sum of those.
struct AlgebraDescriptor {
    enum class Kind { MatCuntz, MatOInf, CornerOInf, DirectSum };

    Kind kind = Kind::MatOInf;
    Int m = 1;  // matrix size (MatCuntz, MatOInf), m >= 1
    Int n = 2;  // Cuntz index (MatCuntz), 2 <= n < infinity
    Int k = 1;  // corner index (CornerOInf), k >= 1
    std::vector<AlgebraDescriptor> summands;

    static AlgebraDescriptor mat_cuntz(Int m, Int n);
    static AlgebraDescriptor mat_oinf(Int m);
    static AlgebraDescriptor corner_oinf(Int k);
    static AlgebraDescriptor direct_sum(std::vector<AlgebraDescriptor> summands);

    bool operator==(const AlgebraDescriptor& o) const;
    std::string display() const;
};

/// V-monoid of a descriptor: the block sum with its order-unit;
/// the functor is additive over direct sums.
BlockSum v_of_descriptor(const AlgebraDescriptor& d);

/// Realize one block with order-unit as a descriptor:
///   ((Z/nZ) u {0}, m)  ->  M_m(O_{n+1}) with m in 1..n,
///   (Z u {0}, k)       ->  M_k(O_inf) for k > 0, p_1 O_inf p_1 for k = 0,
///                          p_{1-k} O_inf p_{1-k} for k < 0.
/// Left inverse of v_of_descriptor on blocks; throws not_a_block.
AlgebraDescriptor realize_block(const BlockSum& b);

/// Realize a block-sum stage as a direct-sum descriptor, one summand per
/// block; a missing order-unit defaults to 1 in every block.
AlgebraDescriptor realize_stage(const BlockSum& b);

/// Structured monoid homomorphism between two block-sum presentations:
/// an idempotent map plus, per source idempotent, the images of the
/// canonical generators of its group (columns in target coordinates).
struct MonoidMapData {
    std::vector<int> idem_map;
    std::map<int, IntMatrix> group_maps;
};

SogElement apply_map(const MonoidMapData& f, const SogPresentation& src, const SogPresentation& dst,
                     const SogElement& x);

/// Throws map_not_homomorphism when f fails zero-preservation, the join
/// law, well-definedness, value containment, or restriction compatibility.
void validate_map(const MonoidMapData& f, const SogPresentation& src, const SogPresentation& dst);

struct BlueprintStageInput {
    SogPresentation pres;
    std::optional<SogElement> unit;
};

struct Blueprint {
    std::vector<AlgebraDescriptor> stages;
    std::vector<MonoidMapData> maps;
    bool unital = false;
    std::string note;
};

/// Validate every stage (B-bar shape), every connecting map (homomorphism),
/// and unit normalization in unital mode; emit the stage descriptors.
Blueprint emit_blueprint(const std::vector<BlueprintStageInput>& stages, const std::vector<MonoidMapData>& maps,
                         bool unital);

/// Respecialization: the same V-data realized with
/// matrix-over-Cuntz and matrix-over-O_infinity stages only.
AlgebraDescriptor respecialize(const AlgebraDescriptor& d);

}  // namespace sogkit
