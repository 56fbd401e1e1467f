#include "sogkit/oracle.hpp"

#include <algorithm>
#include <set>

#include "sogkit/errors.hpp"

// Everything below deliberately avoids the normal-form kernels used by the
// fast paths: lattice arithmetic is redone with a naive column elimination,
// element sets with plain breadth-first closure.

namespace sogkit {

namespace {

using Vec = std::vector<Int>;

Vec add_vec(const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

Vec scale_vec(const Int& k, const Vec& a) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = k * a[i];
    return c;
}

bool is_zero_vec(const Vec& a) {
    for (const Int& x : a)
        if (x != 0)
            return false;
    return true;
}

// Naive integer column echelon of a set of columns, one row at a time with
// repeated Euclid steps.  Optionally accumulates the column transform.
struct NaiveEchelon {
    std::vector<Vec> cols;       // echelon columns, pivot rows increasing
    std::vector<std::size_t> pivots;
    std::vector<Vec> transform;  // same ops applied to identity (when tracked)

    NaiveEchelon(std::vector<Vec> input, std::size_t rows, bool track) {
        std::vector<Vec> work = std::move(input);
        std::vector<Vec> tr;
        if (track) {
            tr.resize(work.size());
            for (std::size_t j = 0; j < work.size(); ++j) {
                tr[j].assign(work.size(), Int(0));
                tr[j][j] = 1;
            }
        }
        std::size_t fixed = 0;
        for (std::size_t row = 0; row < rows; ++row) {
            for (;;) {
                // columns with a nonzero entry at this row, among the unfixed
                std::vector<std::size_t> active;
                for (std::size_t j = fixed; j < work.size(); ++j)
                    if (work[j][row] != 0)
                        active.push_back(j);
                if (active.empty())
                    break;
                if (active.size() == 1) {
                    std::swap(work[fixed], work[active[0]]);
                    if (track)
                        std::swap(tr[fixed], tr[active[0]]);
                    if (work[fixed][row] < 0) {
                        work[fixed] = scale_vec(-1, work[fixed]);
                        if (track)
                            tr[fixed] = scale_vec(-1, tr[fixed]);
                    }
                    ++fixed;
                    break;
                }
                // Euclid step between the two smallest entries
                std::size_t ja = active[0], jb = active[1];
                for (std::size_t j : active)
                    if (abs(work[j][row]) < abs(work[ja][row]))
                        ja = j;
                for (std::size_t j : active)
                    if (j != ja && (jb == ja || abs(work[j][row]) < abs(work[jb][row])))
                        jb = j;
                Int q = work[jb][row] / work[ja][row];
                work[jb] = add_vec(work[jb], scale_vec(-q, work[ja]));
                if (track)
                    tr[jb] = add_vec(tr[jb], scale_vec(-q, tr[ja]));
            }
        }
        for (std::size_t j = 0; j < fixed; ++j) {
            std::size_t r = 0;
            while (work[j][r] == 0)
                ++r;
            pivots.push_back(r);
            cols.push_back(work[j]);
        }
        if (track) {
            // transform columns of the zero (kernel) part
            for (std::size_t j = fixed; j < work.size(); ++j)
                if (is_zero_vec(work[j]))
                    transform.push_back(tr[j]);
        }
    }

    // membership by forward elimination against the echelon columns
    bool contains(Vec x) const {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Int& piv = cols[j][pivots[j]];
            if (x[pivots[j]] % piv != 0)
                return false;
            Int q = x[pivots[j]] / piv;
            if (q != 0)
                x = add_vec(x, scale_vec(-q, cols[j]));
        }
        return is_zero_vec(x);
    }

    Vec reduce(Vec x) const {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Int& piv = cols[j][pivots[j]];
            Int q = floor_div(x[pivots[j]], piv);
            if (q != 0)
                x = add_vec(x, scale_vec(-q, cols[j]));
        }
        return x;
    }
};

std::vector<Vec> matrix_columns(const IntMatrix& m) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(m.column(j));
    return cols;
}

// lattice of a subgroup: generators plus ambient relations
std::vector<Vec> subgroup_lattice_cols(const Subgroup& s) {
    std::vector<Vec> cols = matrix_columns(s.generators());
    for (const Vec& c : matrix_columns(s.ambient()->relations()))
        cols.push_back(c);
    return cols;
}

// intersection of two integer lattices via the kernel of [L1 | -L2]
std::vector<Vec> lattice_intersection(const std::vector<Vec>& l1, const std::vector<Vec>& l2, std::size_t rows) {
    std::vector<Vec> stacked;
    for (const Vec& c : l1)
        stacked.push_back(c);
    for (const Vec& c : l2)
        stacked.push_back(scale_vec(-1, c));
    NaiveEchelon ech(stacked, rows, true);
    std::vector<Vec> out;
    for (const Vec& k : ech.transform) {
        Vec combo(rows, Int(0));
        for (std::size_t j = 0; j < l1.size(); ++j)
            combo = add_vec(combo, scale_vec(k[j], l1[j]));
        out.push_back(combo);
    }
    return out;
}

bool lattice_subset(const std::vector<Vec>& smaller, const NaiveEchelon& larger) {
    for (const Vec& c : smaller)
        if (!larger.contains(c))
            return false;
    return true;
}

// minors-gcd invariant factors; returns the largest nonzero one (the torsion
// exponent of Z^s / colspan(w)) or nullopt when w has no columns
Int largest_invariant_factor(const std::vector<Vec>& wcols, std::size_t rows) {
    if (wcols.empty())
        return 1;
    const std::size_t t = wcols.size();
    std::vector<std::vector<std::size_t>> rsel, csel;
    Int prev = 1;
    Int last = 1;
    for (std::size_t k = 1; k <= std::min(rows, t); ++k) {
        // gcd over all k x k minors via Laplace expansion
        std::vector<std::size_t> rs(k), cs(k);
        Int g = 0;
        auto det_rec = [&](auto&& self, std::vector<std::size_t> rr, std::vector<std::size_t> cc) -> Int {
            if (rr.empty())
                return Int(1);
            Int acc = 0;
            Int sign = 1;
            for (std::size_t idx = 0; idx < cc.size(); ++idx) {
                const Int& e = wcols[cc[idx]][rr[0]];
                if (e != 0) {
                    std::vector<std::size_t> rr2(rr.begin() + 1, rr.end());
                    std::vector<std::size_t> cc2;
                    for (std::size_t z = 0; z < cc.size(); ++z)
                        if (z != idx)
                            cc2.push_back(cc[z]);
                    acc += sign * e * self(self, rr2, cc2);
                }
                sign = -sign;
            }
            return acc;
        };
        auto loop_sel = [&](auto&& self, std::vector<std::size_t>& sel, std::size_t start, std::size_t depth,
                            std::size_t n, auto&& inner) -> void {
            if (depth == k) {
                inner(sel);
                return;
            }
            for (std::size_t i = start; i + (k - depth) <= n; ++i) {
                sel[depth] = i;
                self(self, sel, i + 1, depth + 1, n, inner);
            }
        };
        loop_sel(loop_sel, rs, 0, 0, rows, [&](const std::vector<std::size_t>& rsel2) {
            loop_sel(loop_sel, cs, 0, 0, t, [&](const std::vector<std::size_t>& csel2) {
                g = gcd_int(g, det_rec(det_rec, rsel2, csel2));
            });
        });
        if (g == 0)
            break;
        last = g / prev;
        prev = g;
    }
    return last;
}

std::optional<std::vector<Vec>> enumerate_set(const Subgroup& s, const NaiveEchelon& rel, std::size_t bound) {
    std::set<Vec> seen;
    Vec zero(s.ambient()->rank(), Int(0));
    seen.insert(zero);
    std::vector<Vec> work{zero};
    std::vector<Vec> steps;
    for (const Vec& g : matrix_columns(s.generators())) {
        steps.push_back(g);
        steps.push_back(scale_vec(-1, g));
    }
    while (!work.empty()) {
        Vec x = std::move(work.back());
        work.pop_back();
        for (const Vec& st : steps) {
            Vec y = rel.reduce(add_vec(x, st));
            if (seen.insert(y).second) {
                if (seen.size() > bound)
                    return std::nullopt;
                work.push_back(y);
            }
        }
    }
    return std::vector<Vec>(seen.begin(), seen.end());
}

}  // namespace

bool brute_purity(const Subgroup& a, const Subgroup& b, const OracleBudget& budget) {
    if (!a.ambient()->same_group(*b.ambient()))
        throw ambient_mismatch("purity oracle needs a common ambient group");
    const std::size_t n = a.ambient()->rank();
    NaiveEchelon rel(matrix_columns(a.ambient()->relations()), n, false);
    NaiveEchelon blat(subgroup_lattice_cols(b), n, false);
    if (!lattice_subset(matrix_columns(a.generators()), blat))
        throw not_contained("purity oracle requires A <= B");

    // finite path: sets of elements, fully definitional; the probe is capped
    // since the lattice path below covers anything larger
    auto bset = enumerate_set(b, rel, std::min<std::size_t>(budget.element_bound, 4096));
    if (bset) {
        auto aset = enumerate_set(a, rel, budget.element_bound);
        std::set<Vec> amem(aset->begin(), aset->end());
        Int expo = 1;
        for (const Vec& x : *bset) {
            Int k = 1;
            Vec y = rel.reduce(x);
            while (!is_zero_vec(y)) {
                ++k;
                y = rel.reduce(add_vec(y, x));
            }
            expo = lcm_int(expo, k);
        }
        for (Int m = 1; m <= expo; ++m) {
            std::set<Vec> nb_in_a;
            for (const Vec& x : *bset) {
                Vec nx = rel.reduce(scale_vec(m, x));
                if (amem.count(nx))
                    nb_in_a.insert(nx);
            }
            std::set<Vec> na;
            for (const Vec& x : *aset)
                na.insert(rel.reduce(scale_vec(m, x)));
            if (nb_in_a != na)
                return false;
        }
        return true;
    }

    // infinite path: lattice arithmetic, n up to the torsion exponent of B/A
    std::vector<Vec> bcols = subgroup_lattice_cols(b);
    std::vector<Vec> acols = subgroup_lattice_cols(a);
    NaiveEchelon bech(bcols, n, false);
    // express A's lattice on B's echelon columns to present B/A
    std::vector<Vec> w;
    for (const Vec& c : acols) {
        Vec x = c;
        Vec coeff(bech.cols.size(), Int(0));
        for (std::size_t j = 0; j < bech.cols.size(); ++j) {
            const Int& piv = bech.cols[j][bech.pivots[j]];
            Int q = x[bech.pivots[j]] / piv;
            coeff[j] = q;
            if (q != 0)
                x = add_vec(x, scale_vec(-q, bech.cols[j]));
        }
        if (!is_zero_vec(x))
            throw internal_error("oracle containment bookkeeping failed");
        w.push_back(coeff);
    }
    Int expo = largest_invariant_factor(w, bech.cols.size());
    if (expo > budget.multiple_bound)
        throw budget_exceeded("torsion exponent of B/A exceeds the multiple bound");

    for (Int m = 2; m <= expo; ++m) {
        std::vector<Vec> mb;
        for (const Vec& c : bcols)
            mb.push_back(scale_vec(m, c));
        for (const Vec& c : matrix_columns(a.ambient()->relations()))
            mb.push_back(c);
        std::vector<Vec> meet = lattice_intersection(mb, acols, n);
        std::vector<Vec> ma;
        for (const Vec& c : acols)
            ma.push_back(scale_vec(m, c));
        for (const Vec& c : matrix_columns(a.ambient()->relations()))
            ma.push_back(c);
        NaiveEchelon maech(ma, n, false);
        if (!lattice_subset(meet, maech))
            return false;
    }
    return true;
}

std::optional<RefinementFailure> brute_refinement_failure(std::size_t size, const std::vector<int>& table,
                                                          const OracleBudget& budget) {
    if (size * size != table.size())
        throw validation_error("refinement oracle needs a square Cayley table");
    if (size > budget.element_bound)
        throw budget_exceeded("carrier exceeds the element bound");
    auto plus = [&](int x, int y) { return table[static_cast<std::size_t>(x) * size + y]; };
    const int k = static_cast<int>(size);
    for (int a0 = 0; a0 < k; ++a0)
        for (int a1 = 0; a1 < k; ++a1)
            for (int b0 = 0; b0 < k; ++b0)
                for (int b1 = 0; b1 < k; ++b1) {
                    if (plus(a0, a1) != plus(b0, b1))
                        continue;
                    bool refinable = false;
                    for (int c00 = 0; c00 < k && !refinable; ++c00)
                        for (int c01 = 0; c01 < k && !refinable; ++c01) {
                            if (plus(c00, c01) != a0)
                                continue;
                            for (int c10 = 0; c10 < k && !refinable; ++c10) {
                                if (plus(c00, c10) != b0)
                                    continue;
                                for (int c11 = 0; c11 < k && !refinable; ++c11)
                                    if (plus(c10, c11) == a1 && plus(c01, c11) == b1)
                                        refinable = true;
                            }
                        }
                    if (!refinable)
                        return RefinementFailure{a0, a1, b0, b1};
                }
    return std::nullopt;
}

bool brute_distributive(const Subgroup& a, const SubgroupHom& phi, const OracleBudget& budget) {
    if (!a.ambient()->same_group(*phi.ambient()))
        throw ambient_mismatch("distributivity oracle needs a common ambient group");
    const FinDistLattice& d = *phi.domain();
    const std::size_t n = a.ambient()->rank();
    NaiveEchelon rel(matrix_columns(a.ambient()->relations()), n, false);

    auto aset = enumerate_set(a, rel, budget.element_bound);
    if (!aset)
        throw budget_exceeded("element enumeration exceeded the budget");
    std::set<Vec> amem(aset->begin(), aset->end());

    std::vector<std::set<Vec>> met(d.size());
    for (int u = 0; u < static_cast<int>(d.size()); ++u) {
        auto uset = enumerate_set(phi.value(u), rel, budget.element_bound);
        if (!uset)
            throw budget_exceeded("element enumeration exceeded the budget");
        for (const Vec& x : *uset)
            if (amem.count(x))
                met[u].insert(x);
    }

    for (int x = 0; x < static_cast<int>(d.size()); ++x)
        for (int y = 0; y < static_cast<int>(d.size()); ++y) {
            // join law: sumset equality
            std::set<Vec> sumset;
            for (const Vec& p : met[x])
                for (const Vec& q : met[y])
                    sumset.insert(rel.reduce(add_vec(p, q)));
            if (sumset != met[d.join(x, y)])
                return false;
            // meet law: set intersection
            std::set<Vec> inter;
            for (const Vec& p : met[x])
                if (met[y].count(p))
                    inter.insert(p);
            if (inter != met[d.meet(x, y)])
                return false;
        }
    return true;
}

}  // namespace sogkit
