#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sogkit/errors.hpp"
#include "sogkit/oracle.hpp"
#include "sogkit/pureapprox.hpp"
#include "support/generators.hpp"

using namespace sogkit;

namespace {

LatticePtr chain(int n) { return std::make_shared<FinDistLattice>(FinDistLattice::chain_lattice(n)); }

Subgroup sub(const GroupPtr& g, std::vector<std::vector<long long>> cols) {
    std::vector<std::vector<Int>> cc;
    for (auto& c : cols)
        cc.emplace_back(c.begin(), c.end());
    return Subgroup(g, IntMatrix::from_columns(g->rank(), cc));
}

}  // namespace

TEST_CASE("hom m-torsion") {
    SUBCASE("torsion-free ambient gives the zero map") {
        auto z2 = FgAbGroup::free_group(2);
        SubgroupHom phi(chain(1), z2, {sub(z2, {{1, 0}}), Subgroup::full(z2)});
        SubgroupHom phim = hom_m_torsion(phi, 6);
        for (const auto& s : phim.table())
            CHECK(s.is_zero());
    }
    SUBCASE("Z/4 + Z/2 with the diagonal chain") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
        SubgroupHom phi(chain(1), g, {sub(g, {{1, 1}}), Subgroup::full(g)});
        REQUIRE(check_purity_condition(phi));
        SubgroupHom phim = hom_m_torsion(phi, 2);
        CHECK(phim.value(0) == sub(g, {{2, 0}}));
        CHECK(phim.value(1) == sub(g, {{2, 0}, {0, 1}}));
        SubgroupHom phi1 = hom_m_torsion(phi, 1);
        CHECK(phi1.value(0).is_zero());
        CHECK(phi1.value(1).is_zero());
    }
    SUBCASE("purity is a hypothesis") {
        auto z = FgAbGroup::free_group(1);
        SubgroupHom bad(chain(1), z, {sub(z, {{2}}), Subgroup::full(z)});
        CHECK_THROWS_WITH_AS(hom_m_torsion(bad, 2), doctest::Contains("purity_required"), Error);
    }
}

TEST_CASE("hom torsion parts") {
    SUBCASE("torsion-free ambient") {
        auto z2 = FgAbGroup::free_group(2);
        SubgroupHom phi(chain(1), z2, {sub(z2, {{1, 0}}), Subgroup::full(z2)});
        auto parts = hom_torsion_parts(phi);
        for (const auto& s : parts.torsion_hom.table())
            CHECK(s.is_zero());
        CHECK(parts.free_hom.ambient()->rank() == 2);
        CHECK(parts.free_hom.value(1).is_full());
    }
    SUBCASE("finite ambient") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
        SubgroupHom phi(chain(1), g, {sub(g, {{0, 1}}), Subgroup::full(g)});
        auto parts = hom_torsion_parts(phi);
        CHECK(parts.torsion_hom.value(0) == phi.value(0));
        CHECK(parts.torsion_hom.value(1) == phi.value(1));
        CHECK(parts.free_hom.ambient()->rank() == 0);
    }
    SUBCASE("Z + Z/2 with the diagonal") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 1, {0, 2}));
        SubgroupHom phi(chain(1), g, {sub(g, {{1, 1}}), Subgroup::full(g)});
        REQUIRE(check_purity_condition(phi));
        auto parts = hom_torsion_parts(phi);
        CHECK(parts.torsion_hom.value(0).is_zero());
        CHECK(parts.torsion_hom.value(1) == sub(g, {{0, 1}}));
        CHECK(parts.free_hom.value(0).is_full());
        CHECK(parts.free_hom.value(1).is_full());
    }
}

TEST_CASE("torsion approximation") {
    auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
    SubgroupHom phi(chain(1), g, {sub(g, {{1, 1}}), Subgroup::full(g)});

    SUBCASE("trivial h gives the zero approximation") {
        auto res = approx_torsion(phi, Subgroup::zero(g));
        for (const auto& s : res.psi.table())
            CHECK(s.is_zero());
    }
    SUBCASE("h = G reproduces phi") {
        auto res = approx_torsion(phi, Subgroup::full(g));
        CHECK(res.psi.value(0) == phi.value(0));
        CHECK(res.psi.value(1) == phi.value(1));
    }
    SUBCASE("h = <(0,1)>") {
        Subgroup h = sub(g, {{0, 1}});
        auto res = approx_torsion(phi, h);
        CHECK(subgroup_leq(h, res.psi.value(1)));
        CHECK(res.purity.pure);
    }
    SUBCASE("free ambient values are rejected") {
        auto z = FgAbGroup::free_group(1);
        SubgroupHom psi(chain(1), z, {Subgroup::zero(z), Subgroup::full(z)});
        CHECK_THROWS_WITH_AS(approx_torsion(psi, Subgroup::zero(z)),
                             doctest::Contains("torsion_required"), Error);
    }
}

TEST_CASE("pure approximation on mixed groups") {
    SUBCASE("torsion-free two-chain") {
        auto z2 = FgAbGroup::free_group(2);
        SubgroupHom phi(chain(1), z2, {sub(z2, {{1, 0}}), Subgroup::full(z2)});
        Subgroup h = sub(z2, {{1, 1}});
        auto res = pure_approximation(phi, h);
        CHECK(subgroup_leq(h, res.psi.value(1)));
        CHECK(is_pure(res.psi.value(0), res.psi.value(1)));
    }
    SUBCASE("trivial h") {
        auto z2 = FgAbGroup::free_group(2);
        SubgroupHom phi(chain(1), z2, {sub(z2, {{1, 0}}), Subgroup::full(z2)});
        auto res = pure_approximation(phi, Subgroup::zero(z2));
        for (const auto& e : res.certificate)
            CHECK(subgroup_leq(e.h_meet_phi, e.psi_value));
    }
    SUBCASE("finite ambient defers to the torsion case") {
        auto g = FgAbGroup::make(2, IntMatrix(2, 2, {4, 0, 0, 2}));
        SubgroupHom phi(chain(1), g, {sub(g, {{1, 1}}), Subgroup::full(g)});
        auto res = pure_approximation(phi, sub(g, {{0, 1}}));
        CHECK(subgroup_leq(sub(g, {{0, 1}}), res.psi.value(1)));
    }
}

TEST_CASE("randomized pure approximation postconditions") {
    testgen::Rng rng(5557);
    int done = 0;
    while (done < 60) {
        auto built = testgen::random_pure_hom(rng, 3, true, true, 8);
        Subgroup h = testgen::random_subgroup_of(rng, built.hom.top_value(), 3);
        auto res = pure_approximation(built.hom, h);
        const FinDistLattice& d = *built.hom.domain();
        for (int u = 0; u < static_cast<int>(d.size()); ++u) {
            REQUIRE(subgroup_leq(res.certificate[u].h_meet_phi, res.psi.value(u)));
            REQUIRE(subgroup_leq(res.psi.value(u), built.hom.value(u)));
        }
        REQUIRE(validate_hom(res.psi).valid());
        REQUIRE(res.purity.pure);

        // monotone consistency: a larger h keeps the certified containments
        Subgroup h2 = subgroup_sum(h, testgen::random_subgroup_of(rng, built.hom.top_value(), 2));
        auto res2 = pure_approximation(built.hom, h2);
        for (int u = 0; u < static_cast<int>(d.size()); ++u)
            REQUIRE(subgroup_leq(subgroup_intersection(h, built.hom.value(u)), res2.psi.value(u)));
        ++done;
    }
}

TEST_CASE("pure witness") {
    auto z2 = FgAbGroup::free_group(2);
    auto z = FgAbGroup::free_group(1);

    SUBCASE("trivial h") {
        auto w = pure_witness(sub(z2, {{1, 0}}), Subgroup::full(z2), Subgroup::zero(z2));
        CHECK(subgroup_leq(w.a_prime, sub(z2, {{1, 0}})));
        CHECK(subgroup_sum(w.a_prime, w.complement) == w.b_prime);
    }
    SUBCASE("diagonal h in the plane") {
        Subgroup a = sub(z2, {{1, 0}});
        Subgroup h = sub(z2, {{1, 1}});
        auto w = pure_witness(a, Subgroup::full(z2), h);
        CHECK(subgroup_leq(subgroup_intersection(a, h), w.a_prime));
        CHECK(subgroup_leq(w.a_prime, a));
        CHECK(subgroup_leq(h, w.b_prime));
        CHECK(subgroup_sum(w.a_prime, w.complement) == w.b_prime);
        CHECK(subgroup_intersection(w.a_prime, w.complement).is_zero());
    }
    SUBCASE("non-pure pairs are rejected, agreeing with the oracle") {
        Subgroup a = sub(z, {{2}});
        CHECK(!brute_purity(a, Subgroup::full(z)));
        CHECK_THROWS_WITH_AS(pure_witness(a, Subgroup::full(z), Subgroup::full(z)),
                             doctest::Contains("not_pure"), Error);
    }
}
