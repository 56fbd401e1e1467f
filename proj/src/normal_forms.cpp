#include "sogkit/normal_forms.hpp"

#include <algorithm>

#include "sogkit/errors.hpp"

namespace sogkit {

namespace {

// Simultaneous unimodular column operation on h and v:
//   col a' = x*col a + y*col b,  col b' = z*col a + w*col b,  x*w - y*z = +-1.
void combine_cols(IntMatrix& m, std::size_t ca, std::size_t cb, const Int& x, const Int& y, const Int& z,
                  const Int& w) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int va = m(i, ca);
        Int vb = m(i, cb);
        m(i, ca) = x * va + y * vb;
        m(i, cb) = z * va + w * vb;
    }
}

}  // namespace

std::vector<Int> SmithDecomposition::diagonal() const {
    std::vector<Int> out;
    const std::size_t n = std::min(d.rows(), d.cols());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(d(i, i));
    return out;
}

HermiteDecomposition column_hermite(const IntMatrix& a) {
    HermiteDecomposition r;
    r.h = a;
    r.v = IntMatrix::identity(a.cols());
    std::size_t pc = 0;
    for (std::size_t row = 0; row < a.rows() && pc < a.cols(); ++row) {
        std::size_t nz = pc;
        bool found = false;
        for (std::size_t j = pc; j < a.cols(); ++j)
            if (r.h(row, j) != 0) {
                nz = j;
                found = true;
                break;
            }
        if (!found)
            continue;
        r.h.swap_cols(pc, nz);
        r.v.swap_cols(pc, nz);
        for (std::size_t j = pc + 1; j < a.cols(); ++j) {
            if (r.h(row, j) == 0)
                continue;
            Int p = r.h(row, pc);
            Int q = r.h(row, j);
            ExtGcd e = ext_gcd(p, q);
            combine_cols(r.h, pc, j, e.x, e.y, -(q / e.g), p / e.g);
            combine_cols(r.v, pc, j, e.x, e.y, -(q / e.g), p / e.g);
        }
        if (r.h(row, pc) < 0) {
            r.h.negate_col(pc);
            r.v.negate_col(pc);
        }
        for (std::size_t j = 0; j < pc; ++j) {
            Int q = floor_div(r.h(row, j), r.h(row, pc));
            if (q != 0) {
                r.h.add_col_multiple(j, pc, -q);
                r.v.add_col_multiple(j, pc, -q);
            }
        }
        r.pivot_rows.push_back(row);
        ++pc;
    }
    r.rank = pc;
    return r;
}

IntMatrix hermite_basis(const IntMatrix& a) {
    HermiteDecomposition hd = column_hermite(a);
    std::vector<std::size_t> idx(hd.rank);
    for (std::size_t j = 0; j < hd.rank; ++j)
        idx[j] = j;
    return hd.h.columns(idx);
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SmithDecomposition r;
    r.d = a;
    r.u = IntMatrix::identity(a.rows());
    r.v = IntMatrix::identity(a.cols());
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // bring the smallest nonzero entry of the trailing block to (t,t)
            bool have = false;
            std::size_t pi = t, pj = t;
            Int best = 0;
            for (std::size_t i = t; i < a.rows(); ++i)
                for (std::size_t j = t; j < a.cols(); ++j) {
                    const Int& x = r.d(i, j);
                    if (x == 0)
                        continue;
                    Int ax = abs(x);
                    if (!have || ax < best) {
                        have = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (!have)
                break;  // trailing block is zero; remaining diagonal entries stay 0
            if (pi != t) {
                r.d.swap_rows(t, pi);
                r.u.swap_rows(t, pi);
            }
            if (pj != t) {
                r.d.swap_cols(t, pj);
                r.v.swap_cols(t, pj);
            }
            bool dirty = false;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (r.d(i, t) == 0)
                    continue;
                Int q = r.d(i, t) / r.d(t, t);
                r.d.add_row_multiple(i, t, -q);
                r.u.add_row_multiple(i, t, -q);
                if (r.d(i, t) != 0)
                    dirty = true;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (r.d(t, j) == 0)
                    continue;
                Int q = r.d(t, j) / r.d(t, t);
                r.d.add_col_multiple(j, t, -q);
                r.v.add_col_multiple(j, t, -q);
                if (r.d(t, j) != 0)
                    dirty = true;
            }
            if (dirty)
                continue;
            // pivot must divide the whole trailing block for the chain to hold
            bool fixed = true;
            for (std::size_t i = t + 1; i < a.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < a.cols() && fixed; ++j)
                    if (r.d(i, j) % r.d(t, t) != 0) {
                        r.d.add_row_multiple(t, i, 1);
                        r.u.add_row_multiple(t, i, 1);
                        fixed = false;
                    }
            if (fixed)
                break;
        }
        if (t < a.rows() && t < a.cols() && r.d(t, t) < 0) {
            r.d.negate_row(t);
            r.u.negate_row(t);
        }
    }
    return r;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw dimension_mismatch("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && a(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols())
        return false;
    Int d = determinant(a);
    return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    // The column Hermite form of a unimodular matrix is the identity, so the
    // accumulated transform is the inverse.
    HermiteDecomposition hd = column_hermite(a);
    if (hd.h != IntMatrix::identity(a.rows()))
        throw dimension_mismatch("matrix is not unimodular");
    return hd.v;
}

std::optional<std::vector<Int>> solve_columns(const IntMatrix& a, const std::vector<Int>& target) {
    if (target.size() != a.rows())
        throw dimension_mismatch("target length does not match row count");
    HermiteDecomposition hd = column_hermite(a);
    std::vector<Int> x = target;
    std::vector<Int> y(a.cols());
    for (std::size_t j = 0; j < hd.rank; ++j) {
        std::size_t rrow = hd.pivot_rows[j];
        const Int& piv = hd.h(rrow, j);
        if (x[rrow] % piv != 0)
            return std::nullopt;
        Int q = x[rrow] / piv;
        if (q != 0) {
            y[j] = q;
            for (std::size_t i = 0; i < a.rows(); ++i)
                x[i] -= q * hd.h(i, j);
        }
    }
    for (const Int& e : x)
        if (e != 0)
            return std::nullopt;
    return hd.v.apply(y);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    HermiteDecomposition hd = column_hermite(a);
    std::vector<std::size_t> idx;
    for (std::size_t j = hd.rank; j < a.cols(); ++j)
        idx.push_back(j);
    return hd.v.columns(idx);
}

std::vector<Int> reduce_mod_lattice(const HermiteDecomposition& basis, std::vector<Int> x) {
    if (x.size() != basis.h.rows())
        throw dimension_mismatch("vector length does not match lattice ambient");
    for (std::size_t j = 0; j < basis.rank; ++j) {
        std::size_t rrow = basis.pivot_rows[j];
        Int q = floor_div(x[rrow], basis.h(rrow, j));
        if (q != 0)
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] -= q * basis.h(i, j);
    }
    return x;
}

}  // namespace sogkit
