#include <gtest/gtest.h>

#include <twinforge/org.hpp>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace twinforge;

namespace {

TwinshipParam singleton_param() {
    TwinshipParam p;
    p.T = FinPoset::from_relation(1, {}, {"eta"});
    p.frontier = make_set(1, {0});
    p.B = {make_set(1, {0})};
    return p;
}

/// eta < nu, both frontier, B = {{eta, nu}, {nu}}.
TwinshipParam two_chain_param() {
    TwinshipParam p;
    p.T = FinPoset::from_relation(2, {{0, 1}}, {"eta", "nu"});
    p.frontier = make_set(2, {1});
    p.B = {make_set(2, {0, 1}), make_set(2, {1})};
    return p;
}

OrgStructure one_map(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
    OrgStructure j(n, 1);
    for (auto [a, b] : pairs) j.maps.set(0, a, b);
    return j;
}

} // namespace

TEST(Org, EClosureClasses) {
    OrgStructure j(5, 2);
    j.maps.set(0, 0, 1);
    j.maps.set(1, 1, 2);
    j.maps.set(1, 3, 4);
    auto e = e_closure(j);
    EXPECT_EQ(e.classes.size(), 2u);
    EXPECT_EQ(e.class_of[0], e.class_of[2]);
    EXPECT_NE(e.class_of[0], e.class_of[3]);
    EXPECT_EQ(e.class_of[3], e.class_of[4]);
}

TEST(Org, K1FindsTwoCycle) {
    auto r = check_K1(one_map(2, {{0, 1}, {1, 0}}));
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.word && r.point);
    EXPECT_EQ(r.word->size(), 2u);
    EXPECT_TRUE(is_formally_reduced(*r.word));
    EXPECT_EQ(eval_word(one_map(2, {{0, 1}, {1, 0}}).maps, *r.word, *r.point), *r.point);
}

TEST(Org, K1FindsFixedPoint) {
    auto r = check_K1(one_map(2, {{1, 1}}));
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.word->size(), 1u);
    EXPECT_EQ(r.point, 1);
}

TEST(Org, K1HoldsOnPath) {
    auto r = check_K1(one_map(4, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.cap_exceeded);
    // Going forward and back is not formally reduced, so the path has no cycle.
    EXPECT_GT(r.atlas_size, 1u);
}

TEST(Org, K1CapReported) {
    OrgStructure j(6, 3);
    for (int e = 0; e < 3; ++e)
        for (int a = 0; a + 1 < 6; ++a) j.maps.set(e, a, a + 1);
    auto r = check_K1(j, 3);
    EXPECT_TRUE(r.cap_exceeded || !r.holds);
}

TEST(Org, SingletonBlock) {
    auto p = singleton_param();
    auto b = build_block(p, 0, 2);
    // <>, (eta,+1), (eta,-1), (eta,+1)^2, (eta,-1)^2
    EXPECT_EQ(b.J.size(), 5u);
    EXPECT_EQ(b.J.frontier.count(), 2u);
    auto k0 = check_K0(b.J, p);
    EXPECT_TRUE(k0.holds()) << k0.text();
    auto k2 = check_K2(b.J, p);
    EXPECT_TRUE(k2.holds()) << k2.text();
    EXPECT_TRUE(is_orbit_generated(b.J));
    auto gm = generic_map(b.J, p, make_set(1, {0}));
    EXPECT_TRUE(gm.report.holds()) << gm.report.text();
    ASSERT_TRUE(gm.map);
    // The seed moves to (eta,+1).
    EXPECT_EQ(b.J.name(*(*gm.map)(0)), "<(eta,+1)>");
}

TEST(Org, EmptyBlock) {
    auto p = singleton_param();
    auto b = build_block(p, 0, 0);
    EXPECT_EQ(b.J.size(), 1u);
    EXPECT_TRUE(b.J.frontier.test(0));
    EXPECT_TRUE(b.J.maps.pos[0].empty());
    EXPECT_THROW(build_block(p, 1, 1), Error);
}

TEST(Org, OmegaOracle) {
    auto p = singleton_param();
    auto b = build_block(p, 0, 3);
    auto om = omega_s(b.J, 0);
    EXPECT_TRUE(om.contains({{0, 1}, {0, 1}}));
    EXPECT_FALSE(om.contains({{0, 1}, {0, -1}}));
    EXPECT_TRUE(om.equals_omega_of(make_set(1, {0})));
    EXPECT_FALSE(om.equals_omega_of(make_set(1, {})));
    EXPECT_EQ(om.letters_used().count(), 1u);
}

TEST(Org, BrokenEdgeFailsPreservation) {
    auto p = singleton_param();
    auto b = build_block(p, 0, 2);
    auto j = b.J;
    // Put an edge between the seed and (eta,+1) but not between their images.
    const int seed = 0;
    const int up = *j.maps.pos[0](seed);
    j.add_edge(seed, up);
    auto rep = check_K0(j, p);
    EXPECT_TRUE(rep.failed("B")) << rep.text();
}

TEST(Org, DomainMustBeInB) {
    auto p = singleton_param();
    auto j = build_block(p, 0, 2).J;
    j.maps.erase(0, 0);
    auto rep = check_K0(j, p);
    EXPECT_TRUE(rep.failed("B(b)")) << rep.text();
}

// On eta < nu a free generator per node keeps K1 but breaks monotonicity; sharing one generator
// keeps monotonicity but <(nu,-1),(eta,+1)> fixes every point of the domain.
TEST(Org, ComparableNodesCannotSatisfyBoth) {
    auto p = two_chain_param();
    auto each = build_block(p, 0, 2);
    EXPECT_TRUE(check_K1(each.J).holds);
    EXPECT_TRUE(check_K0(each.J, p).failed("B(d)"));

    BlockOptions mono;
    mono.letters = LetterMode::Monotone;
    auto shared = build_block(p, 0, 2, mono);
    EXPECT_TRUE(check_K0(shared.J, p).passed("B(d)"));
    auto k1 = check_K1(shared.J);
    EXPECT_FALSE(k1.holds);
    EXPECT_EQ(k1.word->size(), 2u);

    // Exhaustively: every pair of maps on three points with F_eta contained in F_nu, F_eta nonempty,
    // has a fixed point of a formally reduced word.
    const std::size_t n = 3;
    std::vector<PartialMap> all;
    std::vector<int> img(n);
    auto rec = [&](auto&& self, std::size_t a) -> void {
        if (a == n) {
            PartialMap m(n);
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x)
                if (img[x] >= 0) {
                    if (m.in_range(img[x])) ok = false;
                    else m.set(static_cast<int>(x), img[x]);
                }
            if (ok) all.push_back(m);
            return;
        }
        for (int b = -1; b < static_cast<int>(n); ++b) {
            img[a] = b;
            self(self, a + 1);
        }
    };
    rec(rec, 0);
    for (const auto& fe : all) {
        if (fe.empty()) continue;
        for (const auto& fn : all) {
            if (!fe.subset_of(fn)) continue;
            OrgStructure j(n, 2);
            j.maps = MapFamily::from_positive({fe, fn});
            ASSERT_FALSE(check_K1(j).holds);
        }
    }
}

TEST(Org, RestrictionKeepsClosedSets) {
    auto p = singleton_param();
    auto j = build_block(p, 0, 2).J;
    EXPECT_TRUE(closed_under_maps(j, NodeSet(j.size()).set()));
    NodeSet seed_only = make_set(j.size(), {0});
    EXPECT_FALSE(closed_under_maps(j, seed_only));
    auto r = restrict_to(j, seed_only);
    EXPECT_EQ(r.size(), 1u);
    EXPECT_TRUE(r.maps.pos[0].empty());
}

// The atlas BFS against enumeration of formally reduced words.
TEST(OrgProperty, K1MatchesWordEnumeration) {
    tf_test::Rng rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = static_cast<std::size_t>(tf_test::uniform(rng, 1, 4));
        const std::size_t nodes = static_cast<std::size_t>(tf_test::uniform(rng, 1, 2));
        auto j = tf_test::random_org(rng, n, nodes, 0.5, 0.0);
        auto r = check_K1(j);
        ASSERT_EQ(r.holds, !tf_test::naive_has_cycle(j, 8)) << "trial " << trial;
        if (!r.holds) {
            ASSERT_TRUE(is_formally_reduced(*r.word));
            ASSERT_EQ(eval_word(j.maps, *r.word, *r.point), *r.point);
        }
    }
}

TEST(OrgProperty, EClosureMatchesRelabeling) {
    tf_test::Rng rng(31338);
    for (int trial = 0; trial < 200; ++trial) {
        auto j = tf_test::random_org(rng, static_cast<std::size_t>(tf_test::uniform(rng, 1, 8)), 2, 0.3, 0.0);
        auto e = e_closure(j);
        auto naive = tf_test::naive_components(j);
        for (std::size_t a = 0; a < j.size(); ++a)
            for (std::size_t b = 0; b < j.size(); ++b) ASSERT_EQ(e.class_of[a] == e.class_of[b], naive[a] == naive[b]);
    }
}
