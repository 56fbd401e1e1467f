#include "sogkit/dlat.hpp"

#include <algorithm>
#include <bit>

#include "sogkit/errors.hpp"

namespace sogkit {

// ---- FinPoset ---------------------------------------------------------------

FinPoset::FinPoset(std::size_t size, const std::vector<std::pair<int, int>>& less) {
    if (size > 63)
        throw element_bound_exceeded("posets are limited to 63 elements");
    below_.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i)
        below_[i] = Mask{1} << i;
    for (auto [i, j] : less) {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= size || static_cast<std::size_t>(j) >= size)
            throw validation_error("poset relation index out of range");
        below_[j] |= Mask{1} << i;
    }
    // transitive closure
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t j = 0; j < size; ++j) {
            Mask acc = below_[j];
            Mask m = acc;
            while (m) {
                int i = std::countr_zero(m);
                m &= m - 1;
                acc |= below_[i];
            }
            if (acc != below_[j]) {
                below_[j] = acc;
                changed = true;
            }
        }
    }
    validate();
}

FinPoset FinPoset::antichain(std::size_t size) { return FinPoset(size, {}); }

FinPoset FinPoset::chain(std::size_t size) {
    std::vector<std::pair<int, int>> less;
    for (std::size_t i = 0; i + 1 < size; ++i)
        less.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return FinPoset(size, less);
}

FinPoset FinPoset::from_below(std::vector<Mask> below) {
    FinPoset p;
    p.below_ = std::move(below);
    p.validate();
    return p;
}

void FinPoset::validate() const {
    const std::size_t n = below_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!((below_[i] >> i) & 1u))
            throw validation_error("poset order is not reflexive");
        if (below_[i] >> n)
            throw validation_error("poset relation references elements out of range");
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq(static_cast<int>(i), static_cast<int>(j)) && leq(static_cast<int>(j), static_cast<int>(i)))
                throw validation_error("poset order is not antisymmetric");
            if (leq(static_cast<int>(i), static_cast<int>(j)) && (below_[i] & ~below_[j]) != 0)
                throw validation_error("poset order is not transitive");
        }
    }
}

// ---- FinDistLattice ----------------------------------------------------------

FinDistLattice FinDistLattice::downsets_of(const FinPoset& p, std::size_t bound) {
    const std::size_t n = p.size();
    // linear extension: predecessors have strictly smaller below-sets
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int pa = std::popcount(p.below(a));
        int pb = std::popcount(p.below(b));
        return pa != pb ? pa < pb : a < b;
    });

    std::vector<Mask> sets{0};
    for (int x : order) {
        Mask need = p.below(x) & ~(Mask{1} << x);
        const std::size_t cur = sets.size();
        for (std::size_t i = 0; i < cur; ++i) {
            if ((sets[i] & need) == need) {
                sets.push_back(sets[i] | (Mask{1} << x));
                if (sets.size() > bound)
                    throw element_bound_exceeded("down-set count exceeds the materialization bound");
            }
        }
    }
    std::sort(sets.begin(), sets.end());

    FinDistLattice l;
    l.jposet_ = p;
    l.elems_ = std::move(sets);
    return l;
}

FinDistLattice FinDistLattice::boolean(std::size_t atoms) { return downsets_of(FinPoset::antichain(atoms)); }

FinDistLattice FinDistLattice::chain_lattice(std::size_t length) { return downsets_of(FinPoset::chain(length)); }

int FinDistLattice::index_of(Mask m) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), m);
    if (it == elems_.end() || *it != m)
        return -1;
    return static_cast<int>(it - elems_.begin());
}

int FinDistLattice::ji_element(int p) const { return index_of(jposet_.below(p)); }

int FinDistLattice::ji_lower_star(int p) const { return index_of(jposet_.below(p) & ~(Mask{1} << p)); }

std::vector<int> FinDistLattice::ji_order() const {
    std::vector<int> order(jposet_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return jposet_.below(a) != jposet_.below(b) ? jposet_.below(a) < jposet_.below(b) : a < b; });
    return order;
}

std::vector<std::pair<int, int>> FinDistLattice::covers() const {
    // In a down-set lattice covers differ by exactly one join-irreducible.
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        Mask m = elems_[i];
        for (std::size_t p = 0; p < jposet_.size(); ++p) {
            if ((m >> p) & 1u)
                continue;
            Mask need = jposet_.below(static_cast<int>(p)) & ~(Mask{1} << p);
            if ((m & need) == need)
                out.emplace_back(static_cast<int>(i), index_of(m | (Mask{1} << p)));
        }
    }
    return out;
}

bool FinDistLattice::distributive_law_holds() const {
    for (std::size_t x = 0; x < elems_.size(); ++x)
        for (std::size_t y = 0; y < elems_.size(); ++y)
            for (std::size_t z = 0; z < elems_.size(); ++z) {
                Mask lhs = elems_[x] & (elems_[y] | elems_[z]);
                Mask rhs = (elems_[x] & elems_[y]) | (elems_[x] & elems_[z]);
                if (lhs != rhs)
                    return false;
            }
    return true;
}

FinDistLattice::Interval FinDistLattice::interval_below(int elem) const {
    Mask top = elems_[elem];
    std::vector<int> bits;
    for (std::size_t p = 0; p < jposet_.size(); ++p)
        if ((top >> p) & 1u)
            bits.push_back(static_cast<int>(p));
    std::vector<int> compress(jposet_.size(), -1);
    for (std::size_t k = 0; k < bits.size(); ++k)
        compress[bits[k]] = static_cast<int>(k);

    std::vector<Mask> below(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        Mask b = jposet_.below(bits[k]);
        Mask nb = 0;
        while (b) {
            int i = std::countr_zero(b);
            b &= b - 1;
            nb |= Mask{1} << compress[i];  // below(p) <= top for p <= top
        }
        below[k] = nb;
    }

    Interval out;
    out.lat.jposet_ = FinPoset::from_below(std::move(below));
    out.ji_to_parent = bits;
    for (Mask m : elems_) {
        if ((m & ~top) != 0)
            continue;
        Mask nm = 0;
        Mask b = m;
        while (b) {
            int i = std::countr_zero(b);
            b &= b - 1;
            nm |= Mask{1} << compress[i];
        }
        out.lat.elems_.push_back(nm);
        out.to_parent.push_back(index_of(m));
    }
    // bit compression is monotone on submasks of top, so order is preserved
    return out;
}

// ---- FinSemilattice ----------------------------------------------------------

FinSemilattice::FinSemilattice(std::size_t size, std::vector<int> table, int zero)
    : size_(size), table_(std::move(table)), zero_(zero) {
    if (size_ == 0 || size_ > 64)
        throw validation_error("semilattice carrier must have between 1 and 64 elements");
    if (table_.size() != size_ * size_)
        throw validation_error("semilattice table has the wrong shape");
    if (zero_ < 0 || static_cast<std::size_t>(zero_) >= size_)
        throw validation_error("semilattice zero index out of range");
    for (int v : table_)
        if (v < 0 || static_cast<std::size_t>(v) >= size_)
            throw validation_error("semilattice table entry out of range");
    for (std::size_t i = 0; i < size_; ++i) {
        if (join(static_cast<int>(i), static_cast<int>(i)) != static_cast<int>(i))
            throw validation_error("semilattice join is not idempotent");
        if (join(zero_, static_cast<int>(i)) != static_cast<int>(i))
            throw validation_error("semilattice zero is not neutral");
        for (std::size_t j = 0; j < size_; ++j) {
            if (join(static_cast<int>(i), static_cast<int>(j)) != join(static_cast<int>(j), static_cast<int>(i)))
                throw validation_error("semilattice join is not commutative");
            for (std::size_t k = 0; k < size_; ++k)
                if (join(join(static_cast<int>(i), static_cast<int>(j)), static_cast<int>(k)) !=
                    join(static_cast<int>(i), join(static_cast<int>(j), static_cast<int>(k))))
                    throw validation_error("semilattice join is not associative");
        }
    }
}

int FinSemilattice::top() const {
    int t = zero_;
    for (std::size_t i = 0; i < size_; ++i)
        t = join(t, static_cast<int>(i));
    return t;
}

Mask FinSemilattice::down_mask(int e) const {
    Mask m = 0;
    for (std::size_t x = 0; x < size_; ++x)
        if (leq(static_cast<int>(x), e))
            m |= Mask{1} << x;
    return m;
}

FinSemilattice FinSemilattice::from_lattice_joins(const FinDistLattice& l) {
    std::vector<int> table(l.size() * l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j)
            table[i * l.size() + j] = l.join(static_cast<int>(i), static_cast<int>(j));
    return FinSemilattice(l.size(), std::move(table), l.bottom());
}

// ---- Birkhoff construction ----------------------------------------------------

BirkhoffResult birkhoff_from_leq(std::size_t n, const std::function<bool(int, int)>& leq) {
    if (n == 0)
        throw validation_error("a lattice needs at least one element");
    auto upper_bounds = [&](int i, int j) {
        std::vector<int> ub;
        for (std::size_t k = 0; k < n; ++k)
            if (leq(i, static_cast<int>(k)) && leq(j, static_cast<int>(k)))
                ub.push_back(static_cast<int>(k));
        return ub;
    };
    auto lower_bounds = [&](int i, int j) {
        std::vector<int> lb;
        for (std::size_t k = 0; k < n; ++k)
            if (leq(static_cast<int>(k), i) && leq(static_cast<int>(k), j))
                lb.push_back(static_cast<int>(k));
        return lb;
    };

    std::vector<int> joinT(n * n, -1), meetT(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto ub = upper_bounds(static_cast<int>(i), static_cast<int>(j));
            int least = -1;
            for (int c : ub) {
                bool ok = true;
                for (int o : ub)
                    if (!leq(c, o)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    least = c;
                    break;
                }
            }
            auto lb = lower_bounds(static_cast<int>(i), static_cast<int>(j));
            int greatest = -1;
            for (int c : lb) {
                bool ok = true;
                for (int o : lb)
                    if (!leq(o, c)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    greatest = c;
                    break;
                }
            }
            if (least < 0 || greatest < 0)
                throw not_a_lattice("a pair of elements has no join or no meet");
            joinT[i * n + j] = least;
            meetT[i * n + j] = greatest;
        }

    BirkhoffResult res;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                int lhs = meetT[x * n + joinT[y * n + z]];
                int rhs = joinT[meetT[x * n + y] * n + meetT[x * n + z]];
                if (lhs != rhs) {
                    res.distributive = false;
                    res.witness = {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)};
                    return res;
                }
            }
    res.distributive = true;

    // join-irreducibles: exactly one lower cover
    std::vector<int> ji;
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<int> strictly_below;
        for (std::size_t x = 0; x < n; ++x)
            if (x != p && leq(static_cast<int>(x), static_cast<int>(p)))
                strictly_below.push_back(static_cast<int>(x));
        if (strictly_below.empty())
            continue;  // bottom
        int covers = 0;
        for (int u : strictly_below) {
            bool maximal = true;
            for (int w : strictly_below)
                if (w != u && leq(u, w)) {
                    maximal = false;
                    break;
                }
            if (maximal)
                ++covers;
        }
        if (covers == 1)
            ji.push_back(static_cast<int>(p));
    }
    if (ji.size() > 63)
        throw element_bound_exceeded("too many join-irreducibles for mask representation");

    std::vector<Mask> masks(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t k = 0; k < ji.size(); ++k)
            if (leq(ji[k], static_cast<int>(x)))
                masks[x] |= Mask{1} << k;

    std::vector<Mask> jbelow(ji.size());
    for (std::size_t k = 0; k < ji.size(); ++k)
        for (std::size_t l = 0; l < ji.size(); ++l)
            if (leq(ji[l], ji[k]))
                jbelow[k] |= Mask{1} << l;

    FinDistLattice lat = FinDistLattice::downsets_of(FinPoset::from_below(std::move(jbelow)));
    if (lat.size() != n)
        throw internal_error("Birkhoff reconstruction changed the element count");
    res.elem_index.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        int idx = lat.index_of(masks[x]);
        if (idx < 0)
            throw internal_error("Birkhoff image is not a down-set");
        res.elem_index[x] = idx;
    }
    // the image must be order-isomorphic
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (leq(static_cast<int>(x), static_cast<int>(y)) != lat.leq(res.elem_index[x], res.elem_index[y]))
                throw internal_error("Birkhoff image is not order-faithful");
    res.lattice = std::move(lat);
    return res;
}

// ---- ideals -------------------------------------------------------------------

IdealLattice ideal_lattice(const FinSemilattice& s) {
    const std::size_t n = s.size();
    IdealLattice out;

    if (n <= 20) {
        // exhaustive: nonempty subsets with x+y in A iff x,y in A
        for (Mask m = 1; m < (Mask{1} << n); ++m) {
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x)
                for (std::size_t y = x; y < n && ok; ++y) {
                    bool inx = (m >> x) & 1u, iny = (m >> y) & 1u;
                    bool insum = (m >> s.join(static_cast<int>(x), static_cast<int>(y))) & 1u;
                    if ((inx && iny) != insum)
                        ok = false;
                }
            if (ok)
                out.ideals.push_back(m);
        }
    } else {
        // every ideal of a finite semilattice is principal
        for (std::size_t e = 0; e < n; ++e)
            out.ideals.push_back(s.down_mask(static_cast<int>(e)));
        std::sort(out.ideals.begin(), out.ideals.end());
        out.ideals.erase(std::unique(out.ideals.begin(), out.ideals.end()), out.ideals.end());
    }
    std::sort(out.ideals.begin(), out.ideals.end());

    auto leq = [&](int i, int j) { return (out.ideals[i] & ~out.ideals[j]) == 0; };
    BirkhoffResult br = birkhoff_from_leq(out.ideals.size(), leq);
    out.distributive = br.distributive;
    if (!br.distributive) {
        out.note = "semilattice fails refinement: ideal lattice is not distributive";
        return out;
    }
    out.lattice = std::move(br.lattice);
    out.ideal_elem = br.elem_index;
    out.principal.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        Mask dm = s.down_mask(static_cast<int>(e));
        auto it = std::lower_bound(out.ideals.begin(), out.ideals.end(), dm);
        out.principal[e] = out.ideal_elem[static_cast<std::size_t>(it - out.ideals.begin())];
    }
    return out;
}

// ---- generated sublattice -------------------------------------------------------

GeneratedSublattice sublattice_generated(const FinDistLattice& l, const std::vector<int>& elems) {
    if (elems.empty())
        throw precondition_violated("sublattice generation needs at least one element");
    std::vector<Mask> closure;
    for (int e : elems) {
        if (e < 0 || static_cast<std::size_t>(e) >= l.size())
            throw validation_error("sublattice generator index out of range");
        closure.push_back(l.element(e));
    }
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    for (bool grew = true; grew;) {
        grew = false;
        const std::size_t cur = closure.size();
        for (std::size_t i = 0; i < cur; ++i)
            for (std::size_t j = i + 1; j < cur; ++j) {
                for (Mask m : {closure[i] | closure[j], closure[i] & closure[j]}) {
                    auto it = std::lower_bound(closure.begin(), closure.end(), m);
                    if (it == closure.end() || *it != m) {
                        closure.insert(it, m);
                        grew = true;
                    }
                }
            }
    }

    auto leq = [&](int i, int j) { return (closure[i] & ~closure[j]) == 0; };
    BirkhoffResult br = birkhoff_from_leq(closure.size(), leq);
    if (!br.distributive)
        throw internal_error("sublattice of a distributive lattice failed the distributive law");
    GeneratedSublattice out;
    out.lat = std::move(*br.lattice);
    out.to_parent.assign(out.lat.size(), -1);
    for (std::size_t i = 0; i < closure.size(); ++i)
        out.to_parent[br.elem_index[i]] = l.index_of(closure[i]);
    return out;
}

}  // namespace sogkit
