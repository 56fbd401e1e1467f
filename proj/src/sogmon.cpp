#include "sogkit/sogmon.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "sogkit/errors.hpp"
#include "sogkit/lathom.hpp"
#include "sogkit/pureapprox.hpp"

namespace sogkit {

namespace {

std::vector<int> mask_bits(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// first unrefinable equation in a commutative Cayley table, or nullopt
std::optional<std::array<int, 4>> refinement_scan(std::size_t size, const std::vector<int>& table) {
    auto plus = [&](int x, int y) { return table[static_cast<std::size_t>(x) * size + y]; };
    const int k = static_cast<int>(size);
    for (int a0 = 0; a0 < k; ++a0)
        for (int a1 = a0; a1 < k; ++a1)
            for (int b0 = 0; b0 < k; ++b0)
                for (int b1 = b0; b1 < k; ++b1) {
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
                        return std::array<int, 4>{a0, a1, b0, b1};
                }
    return std::nullopt;
}

}  // namespace

// ---- FinMonoid ------------------------------------------------------------------

FinMonoid::FinMonoid(std::size_t size, std::vector<int> table, int zero)
    : size_(size), table_(std::move(table)), zero_(zero) {
    if (size_ == 0)
        throw validation_error("monoid carrier must be nonempty");
    if (table_.size() != size_ * size_)
        throw validation_error("monoid table has the wrong shape");
    if (zero_ < 0 || static_cast<std::size_t>(zero_) >= size_)
        throw validation_error("monoid zero index out of range");
    for (int v : table_)
        if (v < 0 || static_cast<std::size_t>(v) >= size_)
            throw validation_error("monoid table entry out of range");
    for (std::size_t i = 0; i < size_; ++i) {
        if (plus(zero_, static_cast<int>(i)) != static_cast<int>(i))
            throw validation_error("monoid zero is not neutral");
        for (std::size_t j = 0; j < size_; ++j) {
            if (plus(static_cast<int>(i), static_cast<int>(j)) != plus(static_cast<int>(j), static_cast<int>(i)))
                throw validation_error("monoid addition is not commutative");
            for (std::size_t l = 0; l < size_; ++l)
                if (plus(plus(static_cast<int>(i), static_cast<int>(j)), static_cast<int>(l)) !=
                    plus(static_cast<int>(i), plus(static_cast<int>(j), static_cast<int>(l))))
                    throw validation_error("monoid addition is not associative");
        }
    }
}

bool FinMonoid::leq(int x, int y) const {
    for (std::size_t z = 0; z < size_; ++z)
        if (plus(x, static_cast<int>(z)) == y)
            return true;
    return false;
}

std::vector<int> FinMonoid::idempotents() const {
    std::vector<int> out;
    for (std::size_t x = 0; x < size_; ++x)
        if (is_idempotent(static_cast<int>(x)))
            out.push_back(static_cast<int>(x));
    return out;
}

// ---- SogPresentation --------------------------------------------------------------

int SogPresentation::meet_like(int e, int f) const {
    int best = lam.zero();
    for (std::size_t g = 0; g < lam.size(); ++g)
        if (lam.leq(static_cast<int>(g), e) && lam.leq(static_cast<int>(g), f))
            best = lam.join(best, static_cast<int>(g));
    return best;
}

SogPresentation::Report SogPresentation::validate() const {
    if (groups.size() != lam.size())
        return {false, "group table does not cover the semilattice"};
    for (const Subgroup& s : groups)
        if (!s.ambient()->same_group(*ambient))
            return {false, "group value lives in a different ambient group"};
    if (!groups[static_cast<std::size_t>(lam.zero())].is_zero())
        return {false, "the group at the zero idempotent is not trivial"};
    const int n = static_cast<int>(lam.size());
    for (int e = 0; e < n; ++e)
        for (int f = e; f < n; ++f) {
            if (subgroup_sum(groups[e], groups[f]) != groups[static_cast<std::size_t>(lam.join(e, f))])
                return {false, "join law G_e + G_f = G_{e+f} fails at (" + std::to_string(e) + "," +
                                   std::to_string(f) + ")"};
            if (subgroup_intersection(groups[e], groups[f]) != groups[static_cast<std::size_t>(meet_like(e, f))])
                return {false, "meet law G_e ^ G_f = G_{e^f} fails at (" + std::to_string(e) + "," +
                                   std::to_string(f) + ")"};
        }
    // purity along covering pairs of the semilattice order
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
            if (e == f || !lam.leq(e, f))
                continue;
            bool cover = true;
            for (int g = 0; g < n && cover; ++g)
                if (g != e && g != f && lam.leq(e, g) && lam.leq(g, f))
                    cover = false;
            if (!cover)
                continue;
            if (!is_pure(groups[e], groups[f]))
                return {false, "purity fails on the covering pair (" + std::to_string(e) + "," +
                                   std::to_string(f) + ")"};
        }
    return {};
}

void SogPresentation::require_valid() const {
    Report r = validate();
    if (!r.ok)
        throw invalid_presentation(r.detail);
}

SogElement sog_element(const SogPresentation& p, int idem, std::vector<Int> coords) {
    if (idem < 0 || static_cast<std::size_t>(idem) >= p.lam.size())
        throw invalid_element("idempotent index out of range");
    GroupElement g(p.ambient, std::move(coords));
    if (!p.groups[static_cast<std::size_t>(idem)].contains(g))
        throw invalid_element("group part lies outside the assigned subgroup");
    return {idem, g.coords()};
}

SogElement sog_add(const SogElement& x, const SogElement& y, const SogPresentation& p) {
    SogElement vx = sog_element(p, x.idem, x.coords);
    SogElement vy = sog_element(p, y.idem, y.coords);
    int e = p.lam.join(vx.idem, vy.idem);
    GroupElement g = GroupElement(p.ambient, vx.coords) + GroupElement(p.ambient, vy.coords);
    if (!p.groups[static_cast<std::size_t>(e)].contains(g))
        throw internal_error("sum escaped the group at the joined idempotent");
    return {e, g.coords()};
}

bool sog_leq(const SogElement& x, const SogElement& y, const SogPresentation& p) {
    SogElement vx = sog_element(p, x.idem, x.coords);
    SogElement vy = sog_element(p, y.idem, y.coords);
    GroupElement diff = GroupElement(p.ambient, vy.coords) - GroupElement(p.ambient, vx.coords);
    for (std::size_t z = 0; z < p.lam.size(); ++z)
        if (p.lam.join(vx.idem, static_cast<int>(z)) == vy.idem && p.groups[z].contains(diff))
            return true;
    return false;
}

// ---- axiom checks -------------------------------------------------------------------

AxiomReport check_axioms(const FinMonoid& m) {
    AxiomReport rep;
    const int n = static_cast<int>(m.size());

    rep.regular = true;
    for (int x = 0; x < n && rep.regular; ++x)
        if (!m.leq(m.plus(x, x), x)) {
            rep.regular = false;
            rep.witness = "2x is not below x for x=" + std::to_string(x);
        }

    rep.conical = true;
    for (int x = 0; x < n && rep.conical; ++x)
        for (int y = 0; y < n && rep.conical; ++y)
            if (m.plus(x, y) == m.zero() && (x != m.zero() || y != m.zero())) {
                rep.conical = false;
                if (rep.witness.empty())
                    rep.witness = "x+y=0 with (x,y)=(" + std::to_string(x) + "," + std::to_string(y) + ")";
            }

    auto fail = refinement_scan(m.size(), m.table());
    rep.refinement = !fail.has_value();
    if (fail && rep.witness.empty())
        rep.witness = "unrefinable equation " + std::to_string((*fail)[0]) + "+" + std::to_string((*fail)[1]) +
                      " = " + std::to_string((*fail)[2]) + "+" + std::to_string((*fail)[3]);

    // components over the idempotents
    std::vector<int> idems = m.idempotents();
    std::vector<std::vector<int>> comp(idems.size());
    for (std::size_t i = 0; i < idems.size(); ++i)
        for (int x = 0; x < n; ++x)
            if (m.leq(idems[i], x) && m.leq(x, idems[i]))
                comp[i].push_back(x);

    rep.emb = true;
    rep.pur = true;
    for (std::size_t i = 0; i < idems.size(); ++i)
        for (std::size_t j = 0; j < idems.size(); ++j) {
            if (!m.leq(idems[i], idems[j]))
                continue;
            // injectivity of x -> x + f on the component of e
            for (std::size_t s = 0; s < comp[i].size() && rep.emb; ++s)
                for (std::size_t t = s + 1; t < comp[i].size() && rep.emb; ++t)
                    if (m.plus(comp[i][s], idems[j]) == m.plus(comp[i][t], idems[j])) {
                        rep.emb = false;
                        if (rep.witness.empty())
                            rep.witness = "natural map " + std::to_string(idems[i]) + "->" +
                                          std::to_string(idems[j]) + " identifies " + std::to_string(comp[i][s]) +
                                          " and " + std::to_string(comp[i][t]);
                    }
            // purity of the range inside the component of f
            std::set<int> range;
            for (int x : comp[i])
                range.insert(m.plus(x, idems[j]));
            const auto& gf = comp[j];
            auto mul = [&](int c, int x) {
                int acc = idems[j];
                for (int t = 0; t < c; ++t)
                    acc = m.plus(acc, x);
                return acc;
            };
            for (int c = 1; c <= static_cast<int>(gf.size()) && rep.pur; ++c) {
                std::set<int> c_range;
                for (int r : range)
                    c_range.insert(mul(c, r));
                for (int y : gf) {
                    int cy = mul(c, y);
                    if (range.count(cy) && !c_range.count(cy)) {
                        rep.pur = false;
                        if (rep.witness.empty())
                            rep.witness = "range of " + std::to_string(idems[i]) + "->" + std::to_string(idems[j]) +
                                          " is not pure: n=" + std::to_string(c) + ", y=" + std::to_string(y);
                        break;
                    }
                }
            }
        }
    return rep;
}

AxiomReport check_axioms(const SogPresentation& p) {
    AxiomReport rep;
    const int n = static_cast<int>(p.lam.size());

    rep.regular = true;  // every piece is a group by construction
    rep.conical = p.groups[static_cast<std::size_t>(p.lam.zero())].is_zero();
    if (!rep.conical)
        rep.witness = "the group at the zero idempotent is nontrivial";

    // refinement: the semilattice must refine and the value laws must hold
    std::vector<int> table(p.lam.size() * p.lam.size());
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f)
            table[static_cast<std::size_t>(e) * p.lam.size() + f] = p.lam.join(e, f);
    auto fail = refinement_scan(p.lam.size(), table);
    bool laws = true;
    for (int e = 0; e < n && laws; ++e)
        for (int f = e; f < n && laws; ++f)
            laws = subgroup_sum(p.groups[e], p.groups[f]) == p.groups[static_cast<std::size_t>(p.lam.join(e, f))] &&
                   subgroup_intersection(p.groups[e], p.groups[f]) ==
                       p.groups[static_cast<std::size_t>(p.meet_like(e, f))];
    rep.refinement = !fail.has_value() && laws;
    if (!rep.refinement && rep.witness.empty())
        rep.witness = fail ? "semilattice fails refinement" : "presentation value laws fail";

    rep.emb = true;
    rep.pur = true;
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
            if (!p.lam.leq(e, f) || e == f)
                continue;
            if (!subgroup_leq(p.groups[e], p.groups[f])) {
                rep.emb = false;
                if (rep.witness.empty())
                    rep.witness = "natural map at (" + std::to_string(e) + "," + std::to_string(f) +
                                  ") is not an inclusion";
            } else if (rep.pur && !is_pure(p.groups[e], p.groups[f])) {
                rep.pur = false;
                if (rep.witness.empty())
                    rep.witness = "G_" + std::to_string(e) + " is not pure in G_" + std::to_string(f);
            }
        }
    return rep;
}

// ---- regular decomposition -----------------------------------------------------------

RegularDecomposition decompose_regular(const FinMonoid& m) {
    const int n = static_cast<int>(m.size());
    for (int x = 0; x < n; ++x)
        if (!m.leq(m.plus(x, x), x))
            throw not_regular("2x is not below x for x=" + std::to_string(x));

    std::vector<int> idems = m.idempotents();
    std::map<int, int> idem_index;
    for (std::size_t i = 0; i < idems.size(); ++i)
        idem_index[idems[i]] = static_cast<int>(i);

    std::vector<int> table(idems.size() * idems.size());
    for (std::size_t i = 0; i < idems.size(); ++i)
        for (std::size_t j = 0; j < idems.size(); ++j)
            table[i * idems.size() + j] = idem_index.at(m.plus(idems[i], idems[j]));
    FinSemilattice lam(idems.size(), std::move(table), idem_index.at(m.zero()));

    std::vector<int> component_of(m.size(), -1);
    std::vector<std::vector<int>> components(idems.size());
    for (int x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < idems.size(); ++i)
            if (m.leq(idems[i], x) && m.leq(x, idems[i])) {
                if (component_of[static_cast<std::size_t>(x)] != -1)
                    throw internal_error("element belongs to two components");
                component_of[static_cast<std::size_t>(x)] = static_cast<int>(i);
            }
        if (component_of[static_cast<std::size_t>(x)] == -1)
            throw not_regular("element " + std::to_string(x) + " has no idempotent component");
        components[static_cast<std::size_t>(component_of[static_cast<std::size_t>(x)])].push_back(x);
    }

    // each component must be a group with its idempotent as identity
    for (std::size_t i = 0; i < idems.size(); ++i) {
        for (int x : components[i]) {
            if (m.plus(idems[i], x) != x)
                throw internal_error("idempotent is not neutral on its component");
            bool inverse = false;
            for (int y : components[i])
                if (m.plus(x, y) == idems[i])
                    inverse = true;
            if (!inverse)
                throw internal_error("component element has no inverse");
        }
    }
    return {m, std::move(lam), std::move(idems), std::move(component_of), std::move(components)};
}

MonoidPresentation presentation_from_monoid(const FinMonoid& m) {
    RegularDecomposition dec = decompose_regular(m);
    const int zero_idem = dec.lam.zero();
    if (dec.components[static_cast<std::size_t>(zero_idem)].size() != 1)
        throw precondition_violated("monoid is not conical");

    const int top = dec.lam.top();
    const std::vector<int>& t = dec.components[static_cast<std::size_t>(top)];
    const std::size_t r = t.size();
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < r; ++i)
        pos[t[i]] = i;

    std::vector<std::vector<Int>> rel_cols;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            std::vector<Int> col(r, Int(0));
            col[i] += 1;
            col[j] += 1;
            col[pos.at(m.plus(t[i], t[j]))] -= 1;
            rel_cols.push_back(std::move(col));
        }
    GroupPtr g = FgAbGroup::make(r, IntMatrix::from_columns(r, rel_cols));

    auto mu = [&](int x) {
        std::vector<Int> c(r, Int(0));
        c[pos.at(x)] = 1;
        return GroupElement(g, std::move(c));
    };
    if (g->order() != Int(r))
        throw internal_error("top-component presentation has the wrong order");

    const int top_carrier = dec.idem_carrier[static_cast<std::size_t>(top)];
    std::vector<Subgroup> groups;
    for (std::size_t e = 0; e < dec.lam.size(); ++e) {
        std::vector<std::vector<Int>> cols;
        for (int y : dec.components[e])
            cols.push_back(mu(m.plus(y, top_carrier)).coords());
        groups.push_back(Subgroup(g, IntMatrix::from_columns(r, cols)));
    }

    SogPresentation pres{dec.lam, g, std::move(groups)};
    pres.require_valid();
    MonoidPresentation out{std::move(dec), std::move(pres), {}};

    std::set<SogElement> seen;
    for (int x = 0; x < static_cast<int>(m.size()); ++x) {
        int e = out.dec.component_of[static_cast<std::size_t>(x)];
        SogElement sx = sog_element(out.pres, e, mu(m.plus(x, top_carrier)).coords());
        if (!seen.insert(sx).second)
            throw precondition_violated("monoid does not satisfy (emb): presentation is not faithful");
        out.element_of.push_back(sx);
    }
    for (int x = 0; x < static_cast<int>(m.size()); ++x)
        for (int y = 0; y < static_cast<int>(m.size()); ++y) {
            SogElement lhs = out.element_of[static_cast<std::size_t>(m.plus(x, y))];
            SogElement rhs = sog_add(out.element_of[static_cast<std::size_t>(x)],
                                     out.element_of[static_cast<std::size_t>(y)], out.pres);
            if (!(lhs == rhs))
                throw internal_error("presentation does not reproduce the Cayley table");
        }
    return out;
}

// ---- block monoids ----------------------------------------------------------------------

FinSemilattice boolean_semilattice(std::size_t atoms) {
    if (atoms > 6)
        throw bad_spec("boolean semilattices are limited to 6 atoms");
    const std::size_t size = std::size_t{1} << atoms;
    std::vector<int> table(size * size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            table[i * size + j] = static_cast<int>(i | j);
    return FinSemilattice(size, std::move(table), 0);
}

BlockSum block_monoid(const std::vector<BlockEntry>& spec) {
    const std::size_t k = spec.size();
    if (k > 6)
        throw bad_spec("block sums are limited to 6 blocks");
    std::size_t with_unit = 0;
    for (const BlockEntry& b : spec) {
        if (!b.infinite && b.order < 1)
            throw bad_spec("cyclic blocks need n >= 1");
        if (b.unit)
            ++with_unit;
    }
    if (with_unit != 0 && with_unit != k)
        throw bad_spec("order-unit labels must be given for all blocks or none");

    std::vector<std::vector<Int>> rel_cols;
    for (std::size_t i = 0; i < k; ++i)
        if (!spec[i].infinite) {
            std::vector<Int> col(k, Int(0));
            col[i] = spec[i].order;
            rel_cols.push_back(std::move(col));
        }
    GroupPtr g = FgAbGroup::make(k, IntMatrix::from_columns(k, rel_cols));

    std::vector<Subgroup> groups;
    const std::size_t size = std::size_t{1} << k;
    for (std::size_t mask = 0; mask < size; ++mask) {
        std::vector<std::vector<Int>> cols;
        for (int i : mask_bits(mask)) {
            std::vector<Int> c(k, Int(0));
            c[static_cast<std::size_t>(i)] = 1;
            cols.push_back(std::move(c));
        }
        groups.push_back(Subgroup(g, IntMatrix::from_columns(k, cols)));
    }
    std::vector<Subgroup> blocks;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Int> c(k, Int(0));
        c[i] = 1;
        blocks.push_back(Subgroup(g, IntMatrix::from_columns(k, {c})));
    }

    BlockSum out{SogPresentation{boolean_semilattice(k), g, std::move(groups)}, std::move(blocks), std::nullopt};
    out.pres.require_valid();
    if (with_unit == k && k > 0) {
        std::vector<Int> u(k);
        for (std::size_t i = 0; i < k; ++i)
            u[i] = *spec[i].unit;
        out.unit = sog_element(out.pres, static_cast<int>(size - 1), std::move(u));
    }
    return out;
}

BlockSum direct_sum(const BlockSum& a, const BlockSum& b) {
    const std::size_t ka = a.blocks.size(), kb = b.blocks.size();
    if (ka + kb > 6)
        throw bad_spec("block sums are limited to 6 blocks");
    const std::size_t ra = a.pres.ambient->rank(), rb = b.pres.ambient->rank();
    const std::size_t n = ra + rb;

    auto pad_low = [&](const std::vector<Int>& c) {
        std::vector<Int> out(n, Int(0));
        for (std::size_t i = 0; i < ra; ++i)
            out[i] = c[i];
        return out;
    };
    auto pad_high = [&](const std::vector<Int>& c) {
        std::vector<Int> out(n, Int(0));
        for (std::size_t i = 0; i < rb; ++i)
            out[ra + i] = c[i];
        return out;
    };

    std::vector<std::vector<Int>> rel_cols;
    for (std::size_t j = 0; j < a.pres.ambient->relations().cols(); ++j)
        rel_cols.push_back(pad_low(a.pres.ambient->relations().column(j)));
    for (std::size_t j = 0; j < b.pres.ambient->relations().cols(); ++j)
        rel_cols.push_back(pad_high(b.pres.ambient->relations().column(j)));
    GroupPtr g = FgAbGroup::make(n, IntMatrix::from_columns(n, rel_cols));

    auto embed_group = [&](const Subgroup& s, bool low) {
        std::vector<std::vector<Int>> cols;
        for (std::size_t j = 0; j < s.canonical_form().cols(); ++j)
            cols.push_back(low ? pad_low(s.canonical_form().column(j)) : pad_high(s.canonical_form().column(j)));
        return cols;
    };

    const std::size_t size = std::size_t{1} << (ka + kb);
    const std::size_t low_mask = (std::size_t{1} << ka) - 1;
    std::vector<Subgroup> groups;
    for (std::size_t mask = 0; mask < size; ++mask) {
        std::vector<std::vector<Int>> cols = embed_group(a.pres.groups[mask & low_mask], true);
        for (auto& c : embed_group(b.pres.groups[mask >> ka], false))
            cols.push_back(std::move(c));
        groups.push_back(Subgroup(g, IntMatrix::from_columns(n, cols)));
    }
    std::vector<Subgroup> blocks;
    for (const Subgroup& s : a.blocks)
        blocks.push_back(Subgroup(g, IntMatrix::from_columns(n, embed_group(s, true))));
    for (const Subgroup& s : b.blocks)
        blocks.push_back(Subgroup(g, IntMatrix::from_columns(n, embed_group(s, false))));

    BlockSum out{SogPresentation{boolean_semilattice(ka + kb), g, std::move(groups)}, std::move(blocks),
                 std::nullopt};
    out.pres.require_valid();
    if (a.unit && b.unit) {
        GroupElement u = GroupElement(g, pad_low(a.unit->coords)) + GroupElement(g, pad_high(b.unit->coords));
        out.unit = sog_element(out.pres, static_cast<int>(size - 1), u.coords());
    }
    return out;
}

std::optional<BlockSum> as_block_sum(const SogPresentation& p, std::optional<SogElement> unit) {
    if (!p.validate().ok)
        return std::nullopt;
    const int n = static_cast<int>(p.lam.size());
    // atoms: minimal nonzero elements
    std::vector<int> atoms;
    for (int e = 0; e < n; ++e) {
        if (e == p.lam.zero())
            continue;
        bool minimal = true;
        for (int f = 0; f < n && minimal; ++f)
            if (f != e && f != p.lam.zero() && p.lam.leq(f, e))
                minimal = false;
        if (minimal)
            atoms.push_back(e);
    }
    const std::size_t k = atoms.size();
    if (k > 6 || p.lam.size() != (std::size_t{1} << k))
        return std::nullopt;

    std::vector<int> elem_of_mask(std::size_t{1} << k, -1);
    std::vector<Mask> mask_of_elem(p.lam.size(), 0);
    for (int e = 0; e < n; ++e) {
        Mask mask = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (p.lam.leq(atoms[i], e))
                mask |= Mask{1} << i;
        mask_of_elem[static_cast<std::size_t>(e)] = mask;
        if (elem_of_mask[mask] != -1)
            return std::nullopt;
        elem_of_mask[mask] = e;
    }
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f)
            if (mask_of_elem[static_cast<std::size_t>(p.lam.join(e, f))] !=
                (mask_of_elem[static_cast<std::size_t>(e)] | mask_of_elem[static_cast<std::size_t>(f)]))
                return std::nullopt;

    std::vector<Subgroup> blocks;
    for (std::size_t i = 0; i < k; ++i)
        blocks.push_back(p.groups[static_cast<std::size_t>(atoms[i])]);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Subgroup acc = Subgroup::zero(p.ambient);
        for (int i : mask_bits(mask))
            acc = subgroup_sum(acc, blocks[static_cast<std::size_t>(i)]);
        if (!(acc == p.groups[static_cast<std::size_t>(elem_of_mask[mask])]))
            return std::nullopt;
    }
    // independence of the blocks
    for (std::size_t i = 0; i < k; ++i) {
        Subgroup others = Subgroup::zero(p.ambient);
        for (std::size_t j = 0; j < k; ++j)
            if (j != i)
                others = subgroup_sum(others, blocks[j]);
        if (!subgroup_intersection(blocks[i], others).is_zero())
            return std::nullopt;
    }

    // canonical re-indexing: element index == atom mask
    std::vector<Subgroup> groups;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask)
        groups.push_back(p.groups[static_cast<std::size_t>(elem_of_mask[mask])]);
    BlockSum out{SogPresentation{boolean_semilattice(k), p.ambient, std::move(groups)}, std::move(blocks),
                 std::nullopt};
    out.pres.require_valid();
    if (unit) {
        SogElement u = sog_element(p, unit->idem, unit->coords);
        out.unit = sog_element(out.pres, static_cast<int>(mask_of_elem[static_cast<std::size_t>(u.idem)]),
                               u.coords);
    }
    return out;
}

// ---- cover ----------------------------------------------------------------------------

CoverResult fg_submonoid_cover(const SogPresentation& p, std::vector<SogElement> xs) {
    p.require_valid();
    IdealLattice idl = ideal_lattice(p.lam);
    if (!idl.distributive)
        throw invalid_presentation("semilattice of the presentation fails refinement");
    const FinDistLattice& lid = *idl.lattice;

    for (auto& x : xs) {
        if (x.idem < 0 || static_cast<std::size_t>(x.idem) >= p.lam.size() ||
            !p.groups[static_cast<std::size_t>(x.idem)].contains(GroupElement(p.ambient, x.coords)))
            throw element_not_in_monoid("cover input element is not in the presentation");
        x = sog_element(p, x.idem, x.coords);
    }
    xs.push_back(SogElement{p.lam.zero(), std::vector<Int>(p.ambient->rank(), Int(0))});

    std::vector<int> gens;
    for (const auto& x : xs)
        gens.push_back(idl.principal[static_cast<std::size_t>(x.idem)]);
    GeneratedSublattice d = sublattice_generated(lid, gens);

    // max element of the ideal behind each sublattice element
    std::vector<Mask> mask_of_elem(lid.size(), 0);
    for (std::size_t pos = 0; pos < idl.ideals.size(); ++pos)
        mask_of_elem[static_cast<std::size_t>(idl.ideal_elem[pos])] = idl.ideals[pos];
    std::vector<int> dmax(d.lat.size());
    for (std::size_t i = 0; i < d.lat.size(); ++i) {
        Mask ideal = mask_of_elem[static_cast<std::size_t>(d.to_parent[i])];
        int mx = p.lam.zero();
        for (int e : mask_bits(ideal))
            mx = p.lam.join(mx, e);
        if (!((ideal >> mx) & 1u))
            throw internal_error("ideal join escaped the ideal");
        dmax[i] = mx;
    }

    auto dom = std::make_shared<FinDistLattice>(d.lat);
    std::vector<Subgroup> table;
    for (std::size_t i = 0; i < d.lat.size(); ++i)
        table.push_back(p.groups[static_cast<std::size_t>(dmax[i])]);
    SubgroupHom hom(dom, p.ambient, std::move(table));

    std::vector<std::vector<Int>> kcols;
    for (const auto& x : xs)
        kcols.push_back(x.coords);
    Subgroup k(p.ambient, IntMatrix::from_columns(p.ambient->rank(), kcols));

    ApproxResult approx = pure_approximation(hom, k);

    // assemble N on the sub-semilattice {max A : A in D}
    std::vector<int> carrier = dmax;
    std::sort(carrier.begin(), carrier.end());
    if (std::unique(carrier.begin(), carrier.end()) != carrier.end())
        throw internal_error("distinct ideals shared a maximum");
    std::map<int, int> new_index;
    for (std::size_t i = 0; i < carrier.size(); ++i)
        new_index[carrier[i]] = static_cast<int>(i);

    std::vector<int> sl_table(carrier.size() * carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i)
        for (std::size_t j = 0; j < carrier.size(); ++j) {
            auto it = new_index.find(p.lam.join(carrier[i], carrier[j]));
            if (it == new_index.end())
                throw internal_error("cover carrier is not join-closed");
            sl_table[i * carrier.size() + j] = it->second;
        }
    FinSemilattice lam_n(carrier.size(), std::move(sl_table), new_index.at(p.lam.zero()));

    std::vector<Subgroup> groups_n(carrier.size(), Subgroup::zero(p.ambient));
    for (std::size_t i = 0; i < d.lat.size(); ++i)
        groups_n[static_cast<std::size_t>(new_index.at(dmax[i]))] = approx.psi.value(static_cast<int>(i));

    CoverResult out{SogPresentation{std::move(lam_n), p.ambient, std::move(groups_n)}, carrier};
    out.cover.require_valid();

    // postconditions: xs inside N, N inside p
    for (const auto& x : xs) {
        auto it = new_index.find(x.idem);
        if (it == new_index.end() ||
            !out.cover.groups[static_cast<std::size_t>(it->second)].contains(GroupElement(p.ambient, x.coords)))
            throw internal_error("cover lost one of its defining elements");
    }
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (!subgroup_leq(out.cover.groups[i], p.groups[static_cast<std::size_t>(carrier[i])]))
            throw internal_error("cover escaped the parent presentation");
    return out;
}

// ---- retract --------------------------------------------------------------------------

RetractWitness retract_witness(const SogPresentation& p) {
    p.require_valid();
    const int n = static_cast<int>(p.lam.size());
    BirkhoffResult br = birkhoff_from_leq(p.lam.size(), [&](int i, int j) { return p.lam.leq(i, j); });
    if (!br.distributive)
        throw not_a_lattice("semilattice is not a distributive lattice");
    const FinDistLattice& lat = *br.lattice;

    std::vector<int> carrier_of_elem(lat.size(), -1);
    for (int e = 0; e < n; ++e)
        carrier_of_elem[static_cast<std::size_t>(br.elem_index[static_cast<std::size_t>(e)])] = e;

    const std::size_t k = lat.ji_count();
    if (k > 6)
        throw element_bound_exceeded("retract target would need more than 6 blocks");

    std::vector<int> ji_carrier(k), ji_star_carrier(k);
    for (std::size_t j = 0; j < k; ++j) {
        ji_carrier[j] = carrier_of_elem[static_cast<std::size_t>(lat.ji_element(static_cast<int>(j)))];
        ji_star_carrier[j] = carrier_of_elem[static_cast<std::size_t>(lat.ji_lower_star(static_cast<int>(j)))];
    }

    std::vector<Subgroup> complements;
    for (std::size_t j = 0; j < k; ++j) {
        try {
            complements.push_back(direct_complement(p.groups[static_cast<std::size_t>(ji_star_carrier[j])],
                                                    p.groups[static_cast<std::size_t>(ji_carrier[j])]));
        } catch (const Error& e) {
            throw purity_failure("no complement over join-irreducible " + std::to_string(j) + ": " + e.what());
        }
    }

    // every value must split along its join-irreducibles
    for (int e = 0; e < n; ++e) {
        Subgroup acc = Subgroup::zero(p.ambient);
        for (int j : mask_bits(lat.jset(br.elem_index[static_cast<std::size_t>(e)])))
            acc = subgroup_sum(acc, complements[static_cast<std::size_t>(j)]);
        if (!(acc == p.groups[static_cast<std::size_t>(e)]))
            throw internal_error("presentation value does not split along the complements");
    }

    std::vector<Subgroup> groups_b;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Subgroup acc = Subgroup::zero(p.ambient);
        for (int j : mask_bits(mask))
            acc = subgroup_sum(acc, complements[static_cast<std::size_t>(j)]);
        groups_b.push_back(acc);
    }
    BlockSum b{SogPresentation{boolean_semilattice(k), p.ambient, std::move(groups_b)}, complements,
               std::nullopt};
    b.pres.require_valid();

    RetractWitness out{std::move(b), std::move(ji_carrier), std::move(complements), {}, {}};
    out.f_idem.resize(p.lam.size());
    for (int e = 0; e < n; ++e)
        out.f_idem[static_cast<std::size_t>(e)] = lat.jset(br.elem_index[static_cast<std::size_t>(e)]);
    out.g_idem.resize(std::size_t{1} << k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        int acc = p.lam.zero();
        for (int j : mask_bits(mask))
            acc = p.lam.join(acc, out.ji_carrier[static_cast<std::size_t>(j)]);
        out.g_idem[mask] = acc;
    }

    // structural homomorphism laws
    for (int e = 0; e < n; ++e) {
        if (out.g_idem[out.f_idem[static_cast<std::size_t>(e)]] != e)
            throw internal_error("retract does not restore the idempotents");
        for (int f = 0; f < n; ++f)
            if (out.f_idem[static_cast<std::size_t>(p.lam.join(e, f))] !=
                (out.f_idem[static_cast<std::size_t>(e)] | out.f_idem[static_cast<std::size_t>(f)]))
                throw internal_error("embedding is not a semilattice homomorphism");
    }
    for (std::size_t s = 0; s < out.g_idem.size(); ++s)
        for (std::size_t t = 0; t < out.g_idem.size(); ++t)
            if (out.g_idem[s | t] != p.lam.join(out.g_idem[s], out.g_idem[t]))
                throw internal_error("projection is not a semilattice homomorphism");
    return out;
}

SogElement retract_f(const RetractWitness& w, const SogElement& x) {
    return sog_element(w.b.pres, static_cast<int>(w.f_idem[static_cast<std::size_t>(x.idem)]), x.coords);
}

SogElement retract_g(const RetractWitness& w, const SogElement& x) {
    // the group part is unchanged; only the idempotent is re-labelled
    return SogElement{w.g_idem[static_cast<std::size_t>(x.idem)], x.coords};
}

// ---- materialization -------------------------------------------------------------------

std::optional<Materialized> materialize(const SogPresentation& p, std::size_t bound) {
    p.require_valid();
    std::vector<SogElement> labels;
    for (std::size_t e = 0; e < p.lam.size(); ++e) {
        auto elems = enumerate_elements(p.groups[e], bound);
        if (!elems)
            return std::nullopt;
        for (const auto& g : *elems)
            labels.push_back(SogElement{static_cast<int>(e), g.coords()});
        if (labels.size() > bound)
            return std::nullopt;
    }
    std::map<SogElement, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        index[labels[i]] = static_cast<int>(i);

    std::vector<int> table(labels.size() * labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j) {
            auto it = index.find(sog_add(labels[i], labels[j], p));
            if (it == index.end())
                throw internal_error("materialized sum escaped the carrier");
            table[i * labels.size() + j] = it->second;
        }
    SogElement zero{p.lam.zero(), std::vector<Int>(p.ambient->rank(), Int(0))};
    return Materialized{FinMonoid(labels.size(), std::move(table), index.at(zero)), std::move(labels)};
}

}  // namespace sogkit
