#include <gtest/gtest.h>

#include <twinforge/entangle.hpp>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace twinforge;

namespace {

Coloring pentagon() {
    Coloring c(5);
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) c.set(a, b, (b - a == 1 || b - a == 4) ? 1 : 0);
    return c;
}

TupleFamily singletons(int n) {
    TupleFamily f;
    for (int a = 0; a < n; ++a) f.push_back({a});
    return f;
}

} // namespace

TEST(Entangle, PathIsEntangled) {
    auto p4 = ordered_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    auto r = graph_entangled(p4, singletons(4));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.admissible, 2u);
}

TEST(Entangle, CompleteGraphMissesEmptyPattern) {
    auto k4 = ordered_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto r = graph_entangled(k4, singletons(4));
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.failing);
    EXPECT_EQ(*r.failing, 0u);
    EXPECT_TRUE(pattern_pairs(*r.failing, 1).empty());
}

TEST(Entangle, PairsNeedAllSixteenPatterns) {
    // Two tuples give one pattern; sixteen are required.
    auto g = ordered_graph(4, {{0, 2}});
    auto r = graph_entangled(g, {{0, 1}, {2, 3}});
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(pattern_pairs(0b0001, 2), (std::vector<std::pair<int, int>>{{0, 0}}));
    EXPECT_EQ(pattern_pairs(0b0110, 2), (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
}

TEST(Entangle, FamilyValidation) {
    auto g = ordered_graph(4, {});
    auto kind_of = [&](const TupleFamily& f) {
        try {
            graph_entangled(g, f);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    };
    EXPECT_EQ(kind_of({{0, 1}, {1, 2}}), ErrorKind::FamilyInvalid);
    EXPECT_EQ(kind_of({{0, 0}, {1, 2}}), ErrorKind::FamilyInvalid);
    EXPECT_EQ(kind_of({{0}, {1, 2}}), ErrorKind::FamilyInvalid);
    EXPECT_EQ(kind_of({{0}, {7}}), ErrorKind::FamilyInvalid);
}

TEST(Entangle, OrgVariantNeedsUniformity) {
    TwinshipParam p;
    p.T = FinPoset::from_relation(1, {});
    p.B = {make_set(1, {0})};
    OrgStructure j(4, 1);
    j.maps.set(0, 0, 1);
    // Inside tuple (0, 1) the map links the entries; inside (2, 3) it does not.
    try {
        org_entangled(j, {{0, 1}, {2, 3}}, p);
        FAIL() << "expected FamilyViolatesUniformity";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FamilyViolatesUniformity);
    }
    j.maps.set(0, 2, 3);
    auto r = org_entangled(j, {{0, 1}, {2, 3}}, p);
    EXPECT_FALSE(r.holds);
    // Order reversal between tuples breaks order uniformity.
    OrgStructure k(3, 1);
    k.set_order({1, 0, 2});
    EXPECT_THROW(org_entangled(k, {{0}, {1}, {2}}, p), Error);
}

TEST(Pr0, Pentagon) {
    auto r = pr0_check(pentagon(), 1, 3, 2);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.families, 10u);
    // Two points carry one color only.
    auto two = pr0_check(pentagon(), 1, 2, 2);
    EXPECT_FALSE(two.holds);
    ASSERT_TRUE(two.family && two.missing);
    EXPECT_EQ(two.family->size(), 2u);
    // The threaded sweep agrees.
    EXPECT_EQ(pr0_check(pentagon(), 1, 3, 2, 3).holds, true);
    EXPECT_EQ(pr0_check(pentagon(), 1, 3, 2, 3).families, 10u);
}

TEST(Pr0, ConstantFails) {
    auto r = pr0_check(Coloring::constant(6, 1), 1, 3, 2);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ((*r.missing)[0][0], 0);
    Coloring partial(3);
    EXPECT_THROW(pr0_check(partial, 1, 2, 2), Error);
}

TEST(Unembed, EdgeCannotCollapseOntoAPoint) {
    auto i = ordered_graph(3, {{0, 1}});
    auto j = ordered_graph(1, {});
    auto r = unembeddable_oracle(i, j, {identity_shape()}, gamma_org());
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.maps_checked, 1u);
}

TEST(Unembed, FaithfulCopyEmbeds) {
    auto i = ordered_graph(3, {{0, 1}});
    auto r = unembeddable_oracle(i, i, {identity_shape()}, gamma_org());
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.embedding);
    EXPECT_EQ(r.embedding->size(), 3u);
}

// eps = 1 entanglement against a scan for one edge and one non-edge, every graph on <= 6 vertices
// and every subset of size >= 2.
TEST(EntangleProperty, SingletonFamiliesMatchPairScan) {
    tf_test::Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = tf_test::uniform(rng, 2, 6);
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (tf_test::coin(rng)) edges.emplace_back(a, b);
        auto g = ordered_graph(static_cast<std::size_t>(n), edges);
        std::vector<int> pts;
        for (int a = 0; a < n; ++a)
            if (tf_test::coin(rng, 0.7)) pts.push_back(a);
        if (pts.size() < 2) continue;
        TupleFamily fam;
        for (int a : pts) fam.push_back({a});
        ASSERT_EQ(graph_entangled(g, fam).holds, tf_test::pair_scan_entangled(g, pts)) << "trial " << trial;
    }
}

TEST(EntangleProperty, ColoringTriangles) {
    tf_test::Rng rng(5151);
    for (int trial = 0; trial < 100; ++trial) {
        Coloring c(5);
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) c.set(a, b, tf_test::coin(rng) ? 1 : 0);
        ASSERT_EQ(pr0_check(c, 1, 3, 2).holds, !tf_test::has_monochromatic_triangle(c));
    }
}
