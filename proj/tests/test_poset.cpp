#include <gtest/gtest.h>

#include <twinforge/poset.hpp>

#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace twinforge;

namespace {

int id(const SeqTree& t, const std::string& label) { return *t.poset.find(label); }

FinPoset n_poset() {
    // Two minimal elements under two maximal ones: the maximal pair has two maximal lower bounds.
    return FinPoset::from_relation(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

} // namespace

TEST(Poset, ClosureAndAxioms) {
    auto p = FinPoset::from_relation(3, {{0, 1}, {1, 2}});
    EXPECT_TRUE(p.le(0, 2));
    EXPECT_TRUE(p.lt(0, 2));
    EXPECT_FALSE(p.le(2, 0));
    EXPECT_TRUE(p.is_partial_order());
    EXPECT_EQ(p.level(2), 2);
    auto cyc = FinPoset::from_relation(2, {{0, 1}, {1, 0}});
    EXPECT_FALSE(cyc.is_partial_order());
}

TEST(Poset, SeqTreeShape) {
    auto t = make_seq_tree(2, 3);
    ASSERT_EQ(t.poset.size(), 7u);
    EXPECT_EQ(t.poset.label(0), "");
    EXPECT_EQ(t.poset.label(1), "0");
    EXPECT_EQ(t.poset.label(3), "00");
    EXPECT_TRUE(t.poset.is_tree_like());
    EXPECT_EQ(t.length(id(t, "01")), 2);
    EXPECT_EQ(t.node({1, 0}), id(t, "10"));
    EXPECT_EQ(make_seq_tree(2, 4).poset.size(), 15u);
}

TEST(Poset, DensityAndDirectedness) {
    auto t = make_seq_tree(2, 3);
    const auto& p = t.poset;
    NodeSet leaves = make_set(7, p.maximal_elements());
    EXPECT_TRUE(is_dense(p, leaves));
    NodeSet one_leaf = make_set(7, {id(t, "00")});
    EXPECT_FALSE(is_dense(p, one_leaf));
    // Relative to a frontier that contains the other leaves, only interior nodes need an extension.
    NodeSet left = make_set(7, {id(t, "00"), id(t, "01")});
    NodeSet frontier = leaves;
    EXPECT_FALSE(is_dense_rel(p, left, frontier));
    frontier.set(static_cast<std::size_t>(id(t, "1")));
    frontier.set(0);
    EXPECT_TRUE(is_dense_rel(p, left, frontier));

    EXPECT_TRUE(is_directed(p, p.down(id(t, "01"))));
    EXPECT_FALSE(is_directed(p, make_set(7, {id(t, "00"), id(t, "01")})));
    EXPECT_TRUE(is_directed(p, p.empty_set()));
}

TEST(Poset, MeetInTree) {
    auto t = make_seq_tree(2, 3);
    EXPECT_EQ(meet(t.poset, id(t, "01"), id(t, "00")), id(t, "0"));
    EXPECT_EQ(meet(t.poset, id(t, "01"), id(t, "1")), id(t, ""));
    EXPECT_EQ(meet(t.poset, id(t, "0"), id(t, "01")), id(t, "0"));
}

TEST(Poset, MeetNotUnique) {
    auto p = n_poset();
    EXPECT_EQ(maximal_lower_bounds(p, 2, 3).size(), 2u);
    try {
        (void)meet(p, 2, 3);
        FAIL() << "expected NonUniqueMaximalLowerBound";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonUniqueMaximalLowerBound);
    }
    // Two roots: no lower bound at all.
    EXPECT_FALSE(meet(p, 0, 1).has_value());
}

TEST(Poset, Antichains) {
    auto t = make_seq_tree(2, 3);
    auto all = maximal_antichains(t.poset);
    EXPECT_FALSE(all.truncated);
    // Maximal antichains of the complete binary tree of height 2: f(h) = 1 + f(h-1)^2 with f(0) = 1.
    EXPECT_EQ(all.antichains.size(), 5u);
    for (const auto& a : all.antichains) {
        EXPECT_TRUE(is_antichain(t.poset, a));
        EXPECT_TRUE(is_maximal_antichain(t.poset, a));
    }
    EXPECT_FALSE(is_maximal_antichain(t.poset, make_set(7, {id(t, "00")})));
    auto capped = maximal_antichains(t.poset, 2);
    EXPECT_TRUE(capped.truncated);
}

TEST(Poset, AntichainDecomposition) {
    // A chain: every up-set is directed, so the least-level admissible antichain is the bottom.
    auto chain = FinPoset::from_relation(3, {{0, 1}, {1, 2}});
    auto c = trivial_decomposition(chain);
    EXPECT_EQ(members(c.antichain), std::vector<int>{0});
    ASSERT_EQ(c.classification.size(), 1u);
    EXPECT_EQ(c.classification[0].second, AboveKind::Trivial);

    // A binary tree: the root's up-set is not directed but the leaves are, so the root is
    // excluded and the answer is the leaf level.
    auto t = make_seq_tree(2, 3);
    auto d = trivial_decomposition(t.poset);
    EXPECT_TRUE(is_maximal_antichain(t.poset, d.antichain));
    EXPECT_FALSE(d.antichain.test(0));
    for (auto [e, kind] : d.classification) EXPECT_EQ(kind, AboveKind::Trivial) << t.poset.label(e);
}

TEST(Poset, RestrictAndLabels) {
    auto t = make_seq_tree(2, 3);
    NodeSet s = t.poset.down(id(t, "01"));
    auto r = t.poset.restrict_to(s);
    EXPECT_EQ(r.size(), 3u);
    EXPECT_TRUE(r.is_partial_order());
    EXPECT_EQ(format_set(t.poset, s), "{<>, 0, 01}");
}

// Directedness against a brute-force upper-bound search, over every subset of random small posets.
TEST(PosetProperty, DirectedMatchesPairSearch) {
    tf_test::Rng rng(20260301);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = tf_test::uniform(rng, 1, 6);
        auto p = tf_test::random_poset(rng, n);
        for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
            NodeSet g(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1) g.set(static_cast<std::size_t>(i));
            bool brute = true;
            for (int a = 0; a < n && brute; ++a)
                for (int b = 0; b < n && brute; ++b) {
                    if (!g.test(a) || !g.test(b)) continue;
                    bool bound = false;
                    for (int c = 0; c < n && !bound; ++c) bound = g.test(c) && p.le(a, c) && p.le(b, c);
                    brute = bound;
                }
            ASSERT_EQ(is_directed(p, g), brute) << "trial " << trial << " mask " << mask;
        }
    }
}

TEST(PosetProperty, EnumerationCounts) {
    // Unlabeled posets on n points, n = 0..6.
    const std::vector<std::size_t> expected{1, 1, 2, 5, 16, 63, 318};
    auto all = tf_test::enumerate_posets(6);
    for (std::size_t n = 0; n < expected.size(); ++n) EXPECT_EQ(all[n].size(), expected[n]) << "n = " << n;
}
