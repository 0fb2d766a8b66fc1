#pragma once

// Seeded generators for property tests. Every generator takes the RNG by reference so a
// single seed reproduces a whole run.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <twinforge/org.hpp>
#include <twinforge/poset.hpp>
#include <twinforge/twinship.hpp>

namespace tf_test {

using namespace twinforge;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Forest: each node i > 0 picks a parent below it or becomes a root.
inline FinPoset random_forest(Rng& rng, int n, double root_prob = 0.15) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 1; i < n; ++i)
        if (!coin(rng, root_prob)) rel.emplace_back(uniform(rng, 0, i - 1), i);
    return FinPoset::from_relation(static_cast<std::size_t>(n), rel);
}

/// Natural-order DAG with edge probability p, transitively closed.
inline FinPoset random_poset(Rng& rng, int n, double p = 0.35) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng, p)) rel.emplace_back(i, j);
    return FinPoset::from_relation(static_cast<std::size_t>(n), rel);
}

/// Clause (A): no pair has two maximal lower bounds.
inline bool has_meets(const FinPoset& t) {
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
            if (maximal_lower_bounds(t, static_cast<int>(a), static_cast<int>(b)).size() > 1) return false;
    return true;
}

/// A parameter that passes validate_param. The frontier is the set of maximal elements, which every
/// dense set must contain, so B always includes them and intersections stay dense.
inline TwinshipParam random_param(Rng& rng, int n, bool forest_only = false) {
    while (true) {
        TwinshipParam p;
        p.T = forest_only || coin(rng) ? random_forest(rng, n) : random_poset(rng, n);
        if (!has_meets(p.T)) continue;
        const std::size_t sz = p.T.size();
        NodeSet top = make_set(sz, p.T.maximal_elements());
        p.frontier = top;
        p.theta = coin(rng, 0.3) ? Theta::Uncountable : Theta::Omega;
        std::set<NodeSet> fam{top};
        const int extra = uniform(rng, 0, 2);
        for (int k = 0; k < extra; ++k) {
            NodeSet r(sz);
            for (std::size_t i = 0; i < sz; ++i)
                if (coin(rng, 0.3)) r.set(i);
            fam.insert(p.T.upward_closure(r) | top);
        }
        p.B.assign(fam.begin(), fam.end());
        if (validate_param(p).holds()) return p;
    }
}

/// Random partial injection on [0, n): a random permutation with each pair kept with probability fill.
inline PartialMap random_injection(Rng& rng, std::size_t n, double fill) {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    PartialMap m(n);
    for (std::size_t i = 0; i < n; ++i)
        if (coin(rng, fill)) m.set(static_cast<int>(i), perm[i]);
    return m;
}

inline OrgStructure random_org(Rng& rng, std::size_t n, std::size_t nodes, double fill = 0.4, double edge_prob = 0.3) {
    OrgStructure s(n, nodes);
    std::vector<int> ord(n);
    for (std::size_t i = 0; i < n; ++i) ord[i] = static_cast<int>(i);
    std::shuffle(ord.begin(), ord.end(), rng);
    s.set_order(ord);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng, edge_prob)) s.add_edge(static_cast<int>(a), static_cast<int>(b));
    for (std::size_t e = 0; e < nodes; ++e) {
        s.maps.pos[e] = random_injection(rng, n, fill);
        s.maps.neg[e] = s.maps.pos[e].inverse();
    }
    return s;
}

} // namespace tf_test
