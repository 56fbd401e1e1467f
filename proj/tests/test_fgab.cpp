#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "sogkit/errors.hpp"
#include "sogkit/fgab.hpp"
#include "sogkit/normal_forms.hpp"

using namespace sogkit;

namespace {

// Independent oracle for Smith diagonals: d_1 * ... * d_k equals the gcd of
// all k x k minors.  Determinants by cofactor expansion, no shared code with
// the kernel under test.
Int det_expand(const IntMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.empty())
        return 1;
    Int acc = 0;
    Int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Int& e = m(rows[0], cols[k]);
        if (e != 0) {
            std::vector<std::size_t> r2(rows.begin() + 1, rows.end());
            std::vector<std::size_t> c2;
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (j != k)
                    c2.push_back(cols[j]);
            acc += sign * e * det_expand(m, r2, c2);
        }
        sign = -sign;
    }
    return acc;
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

std::vector<Int> smith_diag_oracle(const IntMatrix& a) {
    std::size_t n = std::min(a.rows(), a.cols());
    std::vector<Int> d(n);
    Int prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<std::size_t>> rsel, csel;
        combinations(a.rows(), k, rsel);
        combinations(a.cols(), k, csel);
        Int g = 0;
        for (const auto& rs : rsel)
            for (const auto& cs : csel)
                g = gcd_int(g, det_expand(a, rs, cs));
        if (g == 0) {
            for (std::size_t i = k; i <= n; ++i)
                d[i - 1] = 0;
            break;
        }
        d[k - 1] = g / prev;
        prev = g;
    }
    return d;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long span) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(rng() % (2 * span + 1)) - span;
    return m;
}

GroupElement elem(const GroupPtr& g, std::vector<long long> c) {
    std::vector<Int> v(c.begin(), c.end());
    return GroupElement(g, v);
}

Subgroup sub(const GroupPtr& g, std::vector<std::vector<long long>> cols) {
    std::vector<std::vector<Int>> cc;
    for (auto& c : cols)
        cc.emplace_back(c.begin(), c.end());
    return Subgroup(g, IntMatrix::from_columns(g->rank(), cc));
}

}  // namespace

TEST_CASE("smith normal form on small named matrices") {
    SUBCASE("zero 1x1 is a fixed point") {
        IntMatrix a(1, 1, {0});
        auto s = smith_normal_form(a);
        CHECK(s.d == a);
        CHECK(s.u == IntMatrix::identity(1));
        CHECK(s.v == IntMatrix::identity(1));
    }
    SUBCASE("diag(2,3) has invariant chain 1,6") {
        IntMatrix a(2, 2, {2, 0, 0, 3});
        auto s = smith_normal_form(a);
        CHECK(s.diagonal() == std::vector<Int>{1, 6});
        CHECK(smith_diag_oracle(a) == std::vector<Int>{1, 6});
        CHECK(s.u * a * s.v == s.d);
    }
    SUBCASE("[[2,4],[6,8]] has chain 2,4") {
        IntMatrix a(2, 2, {2, 4, 6, 8});
        auto s = smith_normal_form(a);
        CHECK(s.diagonal() == std::vector<Int>{2, 4});
        CHECK(smith_diag_oracle(a) == std::vector<Int>{2, 4});
        CHECK(s.u * a * s.v == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.v));
    }
}

TEST_CASE("smith certificate on random matrices") {
    std::mt19937_64 rng(20240901);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t rows = 1 + rng() % 5;
        std::size_t cols = 1 + rng() % 5;
        IntMatrix a = random_matrix(rng, rows, cols, 20);
        auto s = smith_normal_form(a);
        REQUIRE(s.u * a * s.v == s.d);
        REQUIRE(is_unimodular(s.u));
        REQUIRE(is_unimodular(s.v));
        auto diag = s.diagonal();
        for (std::size_t i = 0; i < diag.size(); ++i) {
            REQUIRE(diag[i] >= 0);
            if (i + 1 < diag.size()) {
                if (diag[i] == 0)
                    REQUIRE(diag[i + 1] == 0);
                else
                    REQUIRE(diag[i + 1] % diag[i] == 0);
            }
        }
        for (std::size_t i = 0; i < s.d.rows(); ++i)
            for (std::size_t j = 0; j < s.d.cols(); ++j)
                if (i != j)
                    REQUIRE(s.d(i, j) == 0);
        // small instances also get the independent minor oracle
        if (rows <= 4 && cols <= 4)
            REQUIRE(diag == smith_diag_oracle(a));
    }
}

TEST_CASE("column hermite form is canonical for the spanned lattice") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t rows = 1 + rng() % 4;
        std::size_t cols = 1 + rng() % 5;
        IntMatrix a = random_matrix(rng, rows, cols, 9);
        auto hd = column_hermite(a);
        REQUIRE(hd.h == a * hd.v);
        REQUIRE(is_unimodular(hd.v));
        // augmenting with random combinations of existing columns keeps the basis
        IntMatrix extra(rows, cols + 2);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                extra(i, j) = a(i, j);
        for (std::size_t jj = 0; jj < 2; ++jj) {
            std::size_t c1 = rng() % cols, c2 = rng() % cols;
            long k1 = static_cast<long>(rng() % 7) - 3, k2 = static_cast<long>(rng() % 7) - 3;
            for (std::size_t i = 0; i < rows; ++i)
                extra(i, cols + jj) = k1 * a(i, c1) + k2 * a(i, c2);
        }
        REQUIRE(hermite_basis(a) == hermite_basis(extra));
    }
}

TEST_CASE("group presentations and invariant factors") {
    auto z = FgAbGroup::make(1, IntMatrix(1, 0));
    CHECK(z->invariant_factors() == std::vector<Int>{0});
    CHECK(z->free_rank() == 1);

    auto z4 = FgAbGroup::make(1, IntMatrix(1, 1, {4}));
    CHECK(z4->invariant_factors() == std::vector<Int>{4});
    CHECK(z4->order() == Int(4));

    auto z6 = FgAbGroup::make(2, IntMatrix(2, 2, {2, 0, 0, 3}));
    CHECK(z6->invariant_factors() == std::vector<Int>{6});
    CHECK(z6->order() == Int(6));

    CHECK_THROWS_AS(FgAbGroup::make(2, IntMatrix(3, 1, {1, 1, 1})), Error);
}

TEST_CASE("membership with witness") {
    auto z2 = FgAbGroup::free_group(2);
    Subgroup h = sub(z2, {{1, 1}, {1, -1}});

    SUBCASE("zero always has the all-zero witness") {
        auto w = subgroup_membership(GroupElement::zero(z2), h);
        REQUIRE(w.has_value());
        CHECK(*w == std::vector<Int>{0, 0});
    }
    SUBCASE("(2,0) decomposes as (1,1)+(1,-1)") {
        auto w = subgroup_membership(elem(z2, {2, 0}), h);
        REQUIRE(w.has_value());
        CHECK(*w == std::vector<Int>{1, 1});
    }
    SUBCASE("(1,0) is outside the index-2 sublattice") {
        CHECK(!subgroup_membership(elem(z2, {1, 0}), h).has_value());
    }
}

TEST_CASE("subgroup sum and intersection") {
    auto z = FgAbGroup::free_group(1);
    Subgroup two = sub(z, {{2}});
    Subgroup three = sub(z, {{3}});
    CHECK(subgroup_sum(two, three) == Subgroup::full(z));
    CHECK(subgroup_intersection(two, three) == sub(z, {{6}}));
    CHECK(subgroup_sum(two, Subgroup::zero(z)) == two);
    CHECK(subgroup_intersection(two, two) == two);

    auto z2 = FgAbGroup::free_group(2);
    CHECK(subgroup_sum(sub(z2, {{1, 0}}), sub(z2, {{0, 1}})) == Subgroup::full(z2));
    CHECK(subgroup_intersection(sub(z2, {{1, 1}}), sub(z2, {{1, 0}})).is_zero());
}

TEST_CASE("canonical form ignores the choice of generators") {
    std::mt19937_64 rng(5150);
    auto g = FgAbGroup::make(3, IntMatrix(3, 1, {0, 0, 12}));
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix gens = random_matrix(rng, 3, 3, 8);
        Subgroup s1(g, gens);
        // shuffle and augment by random combinations
        IntMatrix more(3, 5);
        for (std::size_t i = 0; i < 3; ++i) {
            more(i, 0) = gens(i, 2);
            more(i, 1) = gens(i, 0);
            more(i, 2) = gens(i, 1);
            more(i, 3) = 2 * gens(i, 0) - 3 * gens(i, 1);
            more(i, 4) = gens(i, 0) + gens(i, 1) + gens(i, 2);
        }
        Subgroup s2(g, more);
        REQUIRE(s1.canonical_form() == s2.canonical_form());
    }
}

TEST_CASE("purity and complements") {
    auto z = FgAbGroup::free_group(1);
    auto z2 = FgAbGroup::free_group(2);
    auto z4 = FgAbGroup::make(1, IntMatrix(1, 1, {4}));

    SUBCASE("trivial and full subgroups are pure") {
        Subgroup full = Subgroup::full(z4);
        CHECK(is_pure(Subgroup::zero(z4), full));
        CHECK(is_pure(full, full));
    }
    SUBCASE("2Z is not pure in Z") {
        CHECK(!is_pure(sub(z, {{2}}), Subgroup::full(z)));
    }
    SUBCASE("an axis is pure in the plane, with complement") {
        Subgroup axis = sub(z2, {{1, 0}});
        CHECK(is_pure(axis, Subgroup::full(z2)));
        Subgroup k = direct_complement(axis, Subgroup::full(z2));
        CHECK(subgroup_sum(axis, k) == Subgroup::full(z2));
        CHECK(subgroup_intersection(axis, k).is_zero());
    }
    SUBCASE("diagonal of the plane completes unimodularly") {
        Subgroup diag = sub(z2, {{1, 1}});
        Subgroup k = direct_complement(diag, Subgroup::full(z2));
        IntMatrix joint = IntMatrix::hstack(diag.canonical_form(), k.canonical_form());
        CHECK(is_unimodular(joint));
    }
    SUBCASE("<2> in Z/4 has no complement") {
        CHECK_THROWS_AS(direct_complement(sub(z4, {{2}}), Subgroup::full(z4)), Error);
    }
    SUBCASE("containment is checked") {
        CHECK_THROWS_AS(is_pure(Subgroup::full(z), sub(z, {{2}})), Error);
    }
}

TEST_CASE("torsion split") {
    SUBCASE("free group has trivial torsion") {
        auto z2 = FgAbGroup::free_group(2);
        TorsionSplit ts(z2);
        CHECK(ts.torsion().is_zero());
        CHECK(ts.quotient()->rank() == 2);
        CHECK(ts.project(elem(z2, {3, -1})).coords().size() == 2);
    }
    SUBCASE("Z + Z/4") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 1, {0, 4}));
        TorsionSplit ts(g);
        CHECK(ts.torsion() == sub(g, {{0, 1}}));
        CHECK(ts.m_torsion(2) == sub(g, {{0, 2}}));
        CHECK(ts.quotient()->rank() == 1);

        // lift of 1 through H = <(1,3)> lands on (1,3)
        Subgroup h = sub(g, {{1, 3}});
        GroupElement xbar = elem(ts.quotient(), {1});
        CHECK(ts.lift(xbar, h) == elem(g, {1, 3}));

        GroupElement bad = elem(ts.quotient(), {1});
        Subgroup h2 = sub(g, {{2, 1}});
        CHECK_THROWS_AS(ts.lift(bad, h2), Error);
    }
    SUBCASE("m = 1 torsion is trivial") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
        TorsionSplit ts(g);
        CHECK(ts.m_torsion(1).is_zero());
        CHECK(ts.m_torsion(2) == sub(g, {{2, 0}, {0, 1}}));
    }
}

TEST_CASE("modular law and purity hierarchy on random subgroups") {
    std::mt19937_64 rng(424242);
    auto g = FgAbGroup::make(3, IntMatrix(3, 1, {0, 0, 8}));
    std::vector<Subgroup> subs;
    for (int i = 0; i < 12; ++i)
        subs.push_back(Subgroup(g, random_matrix(rng, 3, 2, 4)));
    subs.push_back(Subgroup::zero(g));
    subs.push_back(Subgroup::full(g));

    for (const auto& a : subs)
        for (const auto& b : subs)
            for (const auto& c : subs) {
                if (!subgroup_leq(c, a))
                    continue;
                // a ^ (b + c) == (a ^ b) + c
                Subgroup lhs = subgroup_intersection(a, subgroup_sum(b, c));
                Subgroup rhs = subgroup_sum(subgroup_intersection(a, b), c);
                REQUIRE(lhs == rhs);
            }

    for (const auto& a : subs)
        for (const auto& b : subs) {
            if (!subgroup_leq(a, b))
                continue;
            bool summand = true;
            try {
                direct_complement(a, b);
            } catch (const Error&) {
                summand = false;
            }
            bool pure = is_pure(a, b);
            if (summand)
                REQUIRE(pure);
            if (pure)
                REQUIRE(subgroup_leq(a, b));
            // f.g. case: pure and summand coincide
            REQUIRE(summand == pure);
        }
}

TEST_CASE("exhaustive laws on all abelian groups of order <= 16") {
    // invariant-factor chains with product n
    std::vector<std::vector<Int>> groups;
    for (long n = 1; n <= 16; ++n) {
        std::function<void(long, long, std::vector<Int>&)> rec = [&](long rest, long prev, std::vector<Int>& cur) {
            if (rest == 1) {
                groups.push_back(cur);
                return;
            }
            for (long d = 2; d <= rest; ++d) {
                if (rest % d != 0 || (prev != 1 && d % prev != 0))
                    continue;
                cur.push_back(d);
                rec(rest / d, d, cur);
                cur.pop_back();
            }
        };
        std::vector<Int> cur;
        rec(n, 1, cur);
    }
    CHECK(groups.size() == 25);

    for (const auto& factors : groups) {
        GroupPtr g = FgAbGroup::from_factors(factors);
        auto subs = all_subgroups(g, 4000);
        REQUIRE(subs.has_value());

        // modular law: C <= A implies A ^ (B + C) == (A ^ B) + C
        for (const auto& a : *subs)
            for (const auto& c : *subs) {
                if (!subgroup_leq(c, a))
                    continue;
                for (const auto& b : *subs)
                    REQUIRE(subgroup_intersection(a, subgroup_sum(b, c)) ==
                            subgroup_sum(subgroup_intersection(a, b), c));
            }

        // hierarchy: summand implies pure implies contained
        for (const auto& a : *subs)
            for (const auto& b : *subs) {
                if (!subgroup_leq(a, b))
                    continue;
                bool summand = true;
                try {
                    direct_complement(a, b);
                } catch (const Error&) {
                    summand = false;
                }
                bool pure = is_pure(a, b);
                if (summand)
                    REQUIRE(pure);
                REQUIRE(summand == pure);  // finite case
            }

        // purity transitivity along chains
        for (const auto& a : *subs)
            for (const auto& b : *subs) {
                if (!subgroup_leq(a, b) || !is_pure(a, b))
                    continue;
                for (const auto& c : *subs) {
                    if (!subgroup_leq(b, c) || !is_pure(b, c))
                        continue;
                    REQUIRE(is_pure(a, c));
                }
            }
    }
}

TEST_CASE("element enumeration and subgroup listing") {
    auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
    auto elems = enumerate_elements(Subgroup::full(g), 100);
    REQUIRE(elems.has_value());
    CHECK(elems->size() == 8);
    auto subs = all_subgroups(g, 100);
    REQUIRE(subs.has_value());
    // Z/4 + Z/2 has 8 subgroups
    CHECK(subs->size() == 8);

    auto zfree = FgAbGroup::free_group(1);
    CHECK(!enumerate_elements(Subgroup::full(zfree), 50).has_value());
}
