#include "sogkit/fgab.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sogkit/errors.hpp"

namespace sogkit {

namespace {

// Hermite data of a lattice given by arbitrary generating columns: h holds
// only the nonzero echelon columns, v is dropped.
HermiteDecomposition lattice_basis_of(const IntMatrix& cols) {
    HermiteDecomposition hd = column_hermite(cols);
    HermiteDecomposition out;
    std::vector<std::size_t> idx(hd.rank);
    for (std::size_t j = 0; j < hd.rank; ++j)
        idx[j] = j;
    out.h = hd.h.columns(idx);
    out.pivot_rows = hd.pivot_rows;
    out.rank = hd.rank;
    return out;
}

// Coefficients over the echelon basis columns solving basis * y == x.
std::optional<std::vector<Int>> solve_echelon(const HermiteDecomposition& basis, std::vector<Int> x) {
    std::vector<Int> y(basis.rank);
    for (std::size_t j = 0; j < basis.rank; ++j) {
        std::size_t r = basis.pivot_rows[j];
        const Int& piv = basis.h(r, j);
        if (x[r] % piv != 0)
            return std::nullopt;
        Int q = x[r] / piv;
        if (q != 0) {
            y[j] = q;
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] -= q * basis.h(i, j);
        }
    }
    for (const Int& e : x)
        if (e != 0)
            return std::nullopt;
    return y;
}

// W with basis * W == m (column-wise); every column of m must lie in the span.
IntMatrix express_in_basis(const HermiteDecomposition& basis, const IntMatrix& m) {
    IntMatrix w(basis.rank, m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto y = solve_echelon(basis, m.column(j));
        if (!y)
            throw internal_error("column outside the spanning lattice");
        for (std::size_t i = 0; i < basis.rank; ++i)
            w(i, j) = (*y)[i];
    }
    return w;
}

// Basis of { c : m*c lies in colspan(sub) }.
IntMatrix coefficient_lattice(const IntMatrix& m, const IntMatrix& sub) {
    IntMatrix stacked = IntMatrix::hstack(m, sub);
    IntMatrix ker = kernel_basis(stacked);
    IntMatrix top(m.cols(), ker.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j)
            top(i, j) = ker(i, j);
    return hermite_basis(top);
}

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
    if (!a.ambient()->same_group(*b.ambient()))
        throw ambient_mismatch("subgroups live in different ambient groups");
}

}  // namespace

// ---- FgAbGroup -------------------------------------------------------------

GroupPtr FgAbGroup::make(std::size_t rank, IntMatrix relations) {
    if (relations.cols() == 0)
        relations = IntMatrix(rank, 0);
    if (relations.rows() != rank)
        throw dimension_mismatch("relation matrix must have one row per ambient generator");
    auto g = std::shared_ptr<FgAbGroup>(new FgAbGroup());
    g->rank_ = rank;
    g->relations_ = relations;
    g->rel_hnf_ = lattice_basis_of(relations);
    SmithDecomposition sd = smith_normal_form(relations);
    g->smith_u_ = sd.u;
    g->smith_uinv_ = inverse_unimodular(sd.u);
    g->moduli_.assign(rank, Int(0));
    auto diag = sd.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i)
        g->moduli_[i] = diag[i];
    return g;
}

GroupPtr FgAbGroup::free_group(std::size_t rank) { return make(rank, IntMatrix(rank, 0)); }

GroupPtr FgAbGroup::from_factors(const std::vector<Int>& factors) {
    IntMatrix rel(factors.size(), factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        rel(i, i) = factors[i];
    return make(factors.size(), rel);
}

std::vector<Int> FgAbGroup::invariant_factors() const {
    std::vector<Int> out;
    for (const Int& m : moduli_)
        if (m > 1)
            out.push_back(m);
    for (const Int& m : moduli_)
        if (m == 0)
            out.push_back(0);
    return out;
}

std::size_t FgAbGroup::free_rank() const {
    std::size_t n = 0;
    for (const Int& m : moduli_)
        if (m == 0)
            ++n;
    return n;
}

std::optional<Int> FgAbGroup::order() const {
    if (free_rank() > 0)
        return std::nullopt;
    Int o = 1;
    for (const Int& m : moduli_)
        o *= m;
    return o;
}

std::vector<Int> FgAbGroup::canonical_rep(std::vector<Int> coords) const {
    if (coords.size() != rank_)
        throw dimension_mismatch("coordinate length does not match ambient rank");
    return reduce_mod_lattice(rel_hnf_, std::move(coords));
}

bool FgAbGroup::same_group(const FgAbGroup& other) const {
    return rank_ == other.rank_ && rel_hnf_.h == other.rel_hnf_.h;
}

// ---- GroupElement ----------------------------------------------------------

GroupElement::GroupElement(GroupPtr group, std::vector<Int> coords) : group_(std::move(group)) {
    coords_ = group_->canonical_rep(std::move(coords));
}

GroupElement GroupElement::zero(GroupPtr group) {
    std::vector<Int> c(group->rank());
    return GroupElement(std::move(group), std::move(c));
}

bool GroupElement::is_zero() const {
    for (const Int& c : coords_)
        if (c != 0)
            return false;
    return true;
}

std::optional<Int> GroupElement::order() const {
    std::vector<Int> y = group_->smith_u().apply(coords_);
    const auto& moduli = group_->coordinate_moduli();
    Int ord = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (moduli[i] == 0) {
            if (y[i] != 0)
                return std::nullopt;
        } else if (moduli[i] > 1) {
            ord = lcm_int(ord, moduli[i] / gcd_int(moduli[i], y[i]));
        }
    }
    return ord;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
    if (!group_->same_group(*o.group_))
        throw ambient_mismatch("adding elements of different groups");
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = coords_[i] + o.coords_[i];
    return GroupElement(group_, std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::operator-() const {
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = -coords_[i];
    return GroupElement(group_, std::move(c));
}

GroupElement GroupElement::times(const Int& k) const {
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = k * coords_[i];
    return GroupElement(group_, std::move(c));
}

bool GroupElement::operator==(const GroupElement& o) const {
    return group_->same_group(*o.group_) && coords_ == o.coords_;
}

// ---- Subgroup ---------------------------------------------------------------

Subgroup::Subgroup(GroupPtr ambient, IntMatrix generators) : ambient_(std::move(ambient)) {
    if (generators.cols() == 0)
        generators = IntMatrix(ambient_->rank(), 0);
    if (generators.rows() != ambient_->rank())
        throw dimension_mismatch("generator matrix must have one row per ambient generator");
    gens_ = std::move(generators);
    canon_ = lattice_basis_of(IntMatrix::hstack(gens_, ambient_->relation_basis().h));
}

Subgroup Subgroup::zero(GroupPtr ambient) {
    std::size_t n = ambient->rank();
    return Subgroup(std::move(ambient), IntMatrix(n, 0));
}

Subgroup Subgroup::full(GroupPtr ambient) {
    std::size_t n = ambient->rank();
    return Subgroup(std::move(ambient), IntMatrix::identity(n));
}

Subgroup Subgroup::span(GroupPtr ambient, const std::vector<GroupElement>& elems) {
    std::vector<std::vector<Int>> cols;
    cols.reserve(elems.size());
    for (const auto& e : elems) {
        if (!e.group()->same_group(*ambient))
            throw ambient_mismatch("span element from a different group");
        cols.push_back(e.coords());
    }
    return Subgroup(std::move(ambient), IntMatrix::from_columns(cols.empty() ? 0 : cols[0].size(), cols));
}

std::vector<GroupElement> Subgroup::canonical_generators() const {
    std::vector<GroupElement> out;
    for (std::size_t j = 0; j < canon_.h.cols(); ++j)
        out.emplace_back(ambient_, canon_.h.column(j));
    return out;
}

bool Subgroup::operator==(const Subgroup& o) const {
    return ambient_->same_group(*o.ambient_) && canon_.h == o.canon_.h;
}

bool Subgroup::is_zero() const { return canon_.h == ambient_->relation_basis().h; }

bool Subgroup::is_full() const { return canon_.h == IntMatrix::identity(ambient_->rank()); }

bool Subgroup::is_torsion() const {
    for (std::size_t j = 0; j < canon_.h.cols(); ++j)
        if (!GroupElement(ambient_, canon_.h.column(j)).is_torsion())
            return false;
    return true;
}

std::optional<Int> Subgroup::order() const {
    // Present the subgroup on its canonical basis: coefficients mapping into
    // the relation lattice are the presentation relations.
    IntMatrix w = coefficient_lattice(canon_.h, ambient_->relation_basis().h);
    if (w.cols() < canon_.h.cols())
        return std::nullopt;
    Int o = 1;
    for (const Int& d : smith_normal_form(w).diagonal())
        o *= d;
    return abs(o);
}

bool Subgroup::contains(const GroupElement& x) const {
    if (!x.group()->same_group(*ambient_))
        throw ambient_mismatch("membership test across different groups");
    return solve_echelon(canon_, x.coords()).has_value();
}

// ---- subgroup algebra --------------------------------------------------------

std::optional<std::vector<Int>> subgroup_membership(const GroupElement& x, const Subgroup& h) {
    if (!x.group()->same_group(*h.ambient()))
        throw ambient_mismatch("membership test across different groups");
    IntMatrix stacked = IntMatrix::hstack(h.generators(), h.ambient()->relation_basis().h);
    auto c = solve_columns(stacked, x.coords());
    if (!c)
        return std::nullopt;
    return std::vector<Int>(c->begin(), c->begin() + static_cast<long>(h.generators().cols()));
}

bool subgroup_leq(const Subgroup& a, const Subgroup& b) {
    require_same_ambient(a, b);
    const auto& basis = b.canonical_basis();
    for (std::size_t j = 0; j < a.canonical_form().cols(); ++j)
        if (!solve_echelon(basis, a.canonical_form().column(j)))
            return false;
    return true;
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    require_same_ambient(a, b);
    return Subgroup(a.ambient(), IntMatrix::hstack(a.canonical_form(), b.canonical_form()));
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
    require_same_ambient(a, b);
    IntMatrix ker = kernel_basis(IntMatrix::hstack(a.canonical_form(), b.canonical_form().scaled(-1)));
    IntMatrix coeff(a.canonical_form().cols(), ker.cols());
    for (std::size_t i = 0; i < coeff.rows(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j)
            coeff(i, j) = ker(i, j);
    return Subgroup(a.ambient(), a.canonical_form() * coeff);
}

Subgroup subgroup_multiple(const Int& n, const Subgroup& a) {
    return Subgroup(a.ambient(), a.canonical_form().scaled(n));
}

Subgroup subgroup_m_torsion(const Subgroup& a, const Int& m) {
    if (m <= 0)
        throw precondition_violated("m-torsion requires a positive m");
    IntMatrix coeff = coefficient_lattice(a.canonical_form().scaled(m), a.ambient()->relation_basis().h);
    return Subgroup(a.ambient(), a.canonical_form() * coeff);
}

namespace {

// Splitting solve for B ->> B/A: returns a complement of a in b, or nullopt
// when the quotient admits no section (a is not a summand).
std::optional<Subgroup> splitting_complement(const Subgroup& a, const Subgroup& b) {
    require_same_ambient(a, b);
    if (!subgroup_leq(a, b))
        throw not_contained("first subgroup is not contained in the second");
    const GroupPtr& g = a.ambient();
    const std::size_t s = b.canonical_form().cols();
    if (s == 0)
        return Subgroup::zero(g);

    IntMatrix w = express_in_basis(b.canonical_basis(), a.canonical_form());
    IntMatrix wl = express_in_basis(b.canonical_basis(), g->relation_basis().h);
    const std::size_t t = w.cols();

    SmithDecomposition sd = smith_normal_form(w);
    IntMatrix uinv = inverse_unimodular(sd.u);

    IntMatrix section(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Int> fi = uinv.column(i);
        if (i < t) {
            const Int& di = sd.d(i, i);
            std::vector<Int> rhs(s);
            for (std::size_t r = 0; r < s; ++r)
                rhs[r] = di * fi[r];
            auto sol = solve_columns(IntMatrix::hstack(w.scaled(di), wl), rhs);
            if (!sol)
                return std::nullopt;
            // v_i = f_i - w * z, with z the w-block of the solution
            for (std::size_t r = 0; r < s; ++r) {
                Int acc = fi[r];
                for (std::size_t k = 0; k < t; ++k)
                    acc -= w(r, k) * (*sol)[k];
                section(r, i) = acc;
            }
        } else {
            for (std::size_t r = 0; r < s; ++r)
                section(r, i) = fi[r];
        }
    }
    Subgroup k(g, b.canonical_form() * section);
    if (!(subgroup_sum(a, k) == b) || !subgroup_intersection(a, k).is_zero())
        throw internal_error("splitting section failed verification");
    return k;
}

}  // namespace

bool is_pure(const Subgroup& a, const Subgroup& b) { return splitting_complement(a, b).has_value(); }

Subgroup direct_complement(const Subgroup& a, const Subgroup& b) {
    auto k = splitting_complement(a, b);
    if (!k)
        throw not_a_summand("subgroup is not a direct summand");
    return *k;
}

// ---- TorsionSplit -------------------------------------------------------------

TorsionSplit::TorsionSplit(GroupPtr g) : g_(std::move(g)), torsion_(Subgroup::zero(g_)) {
    const auto& moduli = g_->coordinate_moduli();
    std::vector<std::vector<Int>> tor_cols;
    for (std::size_t i = 0; i < g_->rank(); ++i) {
        if (moduli[i] == 0)
            free_pos_.push_back(i);
        else
            tor_cols.push_back(g_->smith_u_inverse().column(i));
    }
    torsion_ = Subgroup(g_, IntMatrix::from_columns(g_->rank(), tor_cols));
    quotient_ = FgAbGroup::free_group(free_pos_.size());
}

Subgroup TorsionSplit::m_torsion(const Int& m) const {
    if (m <= 0)
        throw precondition_violated("m-torsion requires a positive m");
    const auto& moduli = g_->coordinate_moduli();
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < g_->rank(); ++i) {
        if (moduli[i] == 0)
            continue;
        Int k = moduli[i] / gcd_int(m, moduli[i]);
        std::vector<Int> c = g_->smith_u_inverse().column(i);
        for (Int& e : c)
            e *= k;
        cols.push_back(std::move(c));
    }
    return Subgroup(g_, IntMatrix::from_columns(g_->rank(), cols));
}

GroupElement TorsionSplit::project(const GroupElement& x) const {
    if (!x.group()->same_group(*g_))
        throw ambient_mismatch("projecting an element of a different group");
    std::vector<Int> y = g_->smith_u().apply(x.coords());
    std::vector<Int> out(free_pos_.size());
    for (std::size_t i = 0; i < free_pos_.size(); ++i)
        out[i] = y[free_pos_[i]];
    return GroupElement(quotient_, std::move(out));
}

Subgroup TorsionSplit::project_subgroup(const Subgroup& h) const {
    if (!h.ambient()->same_group(*g_))
        throw ambient_mismatch("projecting a subgroup of a different group");
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < h.canonical_form().cols(); ++j)
        cols.push_back(project(GroupElement(g_, h.canonical_form().column(j))).coords());
    return Subgroup(quotient_, IntMatrix::from_columns(free_pos_.size(), cols));
}

GroupElement TorsionSplit::lift(const GroupElement& xbar, const Subgroup& h) const {
    if (!xbar.group()->same_group(*quotient_))
        throw ambient_mismatch("lift target must live in the free quotient");
    if (!h.ambient()->same_group(*g_))
        throw ambient_mismatch("lift source subgroup has the wrong ambient group");
    const IntMatrix& m = h.canonical_form();
    IntMatrix projected(free_pos_.size(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<Int> y = g_->smith_u().apply(m.column(j));
        for (std::size_t i = 0; i < free_pos_.size(); ++i)
            projected(i, j) = y[free_pos_[i]];
    }
    auto c = solve_columns(projected, xbar.coords());
    if (!c)
        throw no_preimage("element has no preimage in the given subgroup");
    return GroupElement(g_, m.apply(*c));
}

std::vector<Int> subgroup_invariants(const Subgroup& a) {
    IntMatrix w = coefficient_lattice(a.canonical_form(), a.ambient()->relation_basis().h);
    const std::size_t s = a.canonical_form().cols();
    std::vector<Int> moduli(s, Int(0));
    auto diag = smith_normal_form(w).diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i)
        moduli[i] = diag[i];
    std::vector<Int> out;
    for (const Int& m : moduli)
        if (m > 1)
            out.push_back(m);
    for (const Int& m : moduli)
        if (m == 0)
            out.push_back(0);
    return out;
}

CyclicData cyclic_generator(const Subgroup& a) {
    IntMatrix w = coefficient_lattice(a.canonical_form(), a.ambient()->relation_basis().h);
    const std::size_t s = a.canonical_form().cols();
    std::vector<Int> moduli(s, Int(0));
    SmithDecomposition sd = smith_normal_form(w);
    auto diag = sd.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i)
        moduli[i] = diag[i];
    std::vector<std::size_t> nontrivial;
    for (std::size_t i = 0; i < s; ++i)
        if (moduli[i] != 1)
            nontrivial.push_back(i);
    CyclicData out;
    if (nontrivial.size() > 1)
        return out;
    out.cyclic = true;
    if (nontrivial.empty()) {
        out.order = 1;
        out.generator = GroupElement::zero(a.ambient());
        return out;
    }
    out.order = moduli[nontrivial[0]];
    IntMatrix uinv = inverse_unimodular(sd.u);
    out.generator = GroupElement(a.ambient(), a.canonical_form().apply(uinv.column(nontrivial[0])));
    return out;
}

// ---- enumeration ----------------------------------------------------------------

std::optional<std::vector<GroupElement>> enumerate_elements(const Subgroup& h, std::size_t bound) {
    std::vector<GroupElement> gens = h.canonical_generators();
    std::vector<GroupElement> step;
    for (const auto& g : gens) {
        step.push_back(g);
        step.push_back(-g);
    }
    std::set<std::vector<Int>> seen;
    std::vector<std::vector<Int>> work;
    std::vector<Int> origin(h.ambient()->rank());
    seen.insert(origin);
    work.push_back(origin);
    while (!work.empty()) {
        std::vector<Int> x = std::move(work.back());
        work.pop_back();
        GroupElement ex(h.ambient(), x);
        for (const auto& s : step) {
            GroupElement y = ex + s;
            if (seen.insert(y.coords()).second) {
                if (seen.size() > bound)
                    return std::nullopt;
                work.push_back(y.coords());
            }
        }
    }
    std::vector<GroupElement> out;
    out.reserve(seen.size());
    for (const auto& c : seen)
        out.emplace_back(h.ambient(), c);
    return out;
}

std::optional<std::vector<Subgroup>> all_subgroups(const GroupPtr& g, std::size_t bound) {
    auto elems = enumerate_elements(Subgroup::full(g), bound);
    if (!elems)
        return std::nullopt;

    auto key_of = [](const Subgroup& s) {
        std::vector<Int> key;
        key.push_back(Int(s.canonical_form().cols()));
        for (std::size_t i = 0; i < s.canonical_form().rows(); ++i)
            for (std::size_t j = 0; j < s.canonical_form().cols(); ++j)
                key.push_back(s.canonical_form()(i, j));
        return key;
    };

    std::map<std::vector<Int>, Subgroup> found;
    Subgroup z = Subgroup::zero(g);
    found.emplace(key_of(z), z);
    std::vector<Subgroup> work{z};
    while (!work.empty()) {
        Subgroup s = std::move(work.back());
        work.pop_back();
        for (const auto& x : *elems) {
            if (s.contains(x))
                continue;
            std::vector<std::vector<Int>> cols;
            for (std::size_t j = 0; j < s.canonical_form().cols(); ++j)
                cols.push_back(s.canonical_form().column(j));
            cols.push_back(x.coords());
            Subgroup bigger(g, IntMatrix::from_columns(g->rank(), cols));
            auto key = key_of(bigger);
            if (found.emplace(key, bigger).second)
                work.push_back(bigger);
        }
    }
    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& [k, v] : found)
        out.push_back(std::move(v));
    return out;
}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
    const IntMatrix& x = a.canonical_form();
    const IntMatrix& y = b.canonical_form();
    if (x.cols() != y.cols())
        return x.cols() < y.cols();
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (x(i, j) != y(i, j))
                return x(i, j) < y(i, j);
    return false;
}

}  // namespace sogkit
