#pragma once

#include <optional>
#include <vector>

#include "sogkit/int_matrix.hpp"

namespace sogkit {

/// u * a * v == d with u, v unimodular and d diagonal, nonnegative,
/// d(i,i) | d(i+1,i+1).
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Column Hermite normal form: h == a * v with v unimodular.  Nonzero
/// columns come first in column-echelon shape, pivot rows strictly
/// increasing, pivots positive, and in a pivot's row every entry in an
/// earlier column is reduced into [0, pivot).
struct HermiteDecomposition {
    IntMatrix h;
    IntMatrix v;
    std::vector<std::size_t> pivot_rows;  // pivot row of each nonzero column
    std::size_t rank = 0;
};

HermiteDecomposition column_hermite(const IntMatrix& a);

/// Nonzero columns of the column Hermite form: the canonical basis of the
/// column span viewed as a lattice.
IntMatrix hermite_basis(const IntMatrix& a);

/// Bareiss fraction-free determinant (square input).
Int determinant(const IntMatrix& a);

bool is_unimodular(const IntMatrix& a);

/// Exact inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// First integral solution of a*c == target in the Hermite pivot order,
/// or nullopt when none exists.
std::optional<std::vector<Int>> solve_columns(const IntMatrix& a, const std::vector<Int>& target);

/// Lattice basis of { c : a*c == 0 }.
IntMatrix kernel_basis(const IntMatrix& a);

/// Canonical representative of x modulo the column span of an
/// echelon-shaped basis (as produced by hermite_basis).
std::vector<Int> reduce_mod_lattice(const HermiteDecomposition& basis, std::vector<Int> x);

}  // namespace sogkit
