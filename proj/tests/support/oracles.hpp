#pragma once

// Brute-force reference implementations. They share no code paths with the library beyond the
// plain data types, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <twinforge/entangle.hpp>
#include <twinforge/org.hpp>
#include <twinforge/poset.hpp>
#include <twinforge/relational.hpp>

namespace tf_test {

using namespace twinforge;

/// Posets on [0, n) as bit matrices le[a] (bit b set iff a <= b).
using PosetRows = std::vector<std::uint16_t>;

/// Canonical code: lexicographically least relation bit string over vertex orderings that respect a
/// refined (down-count, up-count) coloring. Pruned on prefixes, so large cells stay cheap in practice.
inline std::string canonical_code(const PosetRows& le) {
    const int n = static_cast<int>(le.size());
    auto up_count = [&](int a) { return __builtin_popcount(le[a]); };
    auto down_count = [&](int a) {
        int c = 0;
        for (int x = 0; x < n; ++x) c += (le[x] >> a) & 1;
        return c;
    };
    std::vector<long long> color(n);
    for (int a = 0; a < n; ++a) color[a] = down_count(a) * 64 + up_count(a);
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<long long>> sig(n);
        for (int a = 0; a < n; ++a) {
            sig[a].push_back(color[a]);
            std::vector<long long> ups, downs;
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                if ((le[a] >> b) & 1) ups.push_back(color[b]);
                if ((le[b] >> a) & 1) downs.push_back(color[b]);
            }
            std::sort(ups.begin(), ups.end());
            std::sort(downs.begin(), downs.end());
            sig[a].push_back(-1);
            sig[a].insert(sig[a].end(), ups.begin(), ups.end());
            sig[a].push_back(-2);
            sig[a].insert(sig[a].end(), downs.begin(), downs.end());
        }
        std::vector<std::vector<long long>> sorted(sig);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<long long> next(n);
        for (int a = 0; a < n; ++a) next[a] = std::lower_bound(sorted.begin(), sorted.end(), sig[a]) - sorted.begin();
        bool same = true;
        for (int a = 0; a < n && same; ++a)
            for (int b = 0; b < n && same; ++b) same = (color[a] == color[b]) == (next[a] == next[b]);
        color = next;
        if (same) break;
    }
    std::vector<int> slot_color;
    for (int a = 0; a < n; ++a) slot_color.push_back(static_cast<int>(color[a]));
    std::sort(slot_color.begin(), slot_color.end());

    std::string best, cur;
    std::vector<int> placed;
    std::vector<char> used(n, 0);
    bool have_best = false;
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            if (!have_best || cur < best) {
                best = cur;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || color[v] != slot_color[k]) continue;
            const std::size_t mark = cur.size();
            for (int i = 0; i < k; ++i) {
                cur += ((le[placed[i]] >> v) & 1) ? '1' : '0';
                cur += ((le[v] >> placed[i]) & 1) ? '1' : '0';
            }
            bool worse = have_best && cur.compare(0, cur.size(), best, 0, cur.size()) > 0;
            if (!worse) {
                used[v] = 1;
                placed.push_back(v);
                rec(k + 1);
                placed.pop_back();
                used[v] = 0;
            }
            cur.resize(mark);
        }
    };
    rec(0);
    return best;
}

/// Unlabeled posets of size 0..max_n, one representative each. Every poset arises from a smaller one
/// by adding a new maximal element above a down-closed set.
inline std::vector<std::vector<PosetRows>> enumerate_posets(int max_n) {
    std::vector<std::vector<PosetRows>> out(static_cast<std::size_t>(max_n) + 1);
    out[0].push_back({});
    for (int n = 0; n < max_n; ++n) {
        std::unordered_set<std::string> seen;
        for (const auto& le : out[n]) {
            for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
                bool closed = true;
                for (int a = 0; a < n && closed; ++a)
                    if ((mask >> a) & 1)
                        for (int b = 0; b < n; ++b)
                            if (((le[b] >> a) & 1) && !((mask >> b) & 1)) {
                                closed = false;
                                break;
                            }
                if (!closed) continue;
                PosetRows next(le);
                next.push_back(static_cast<std::uint16_t>(1U << n));
                for (int a = 0; a < n; ++a)
                    if ((mask >> a) & 1) next[a] |= static_cast<std::uint16_t>(1U << n);
                if (seen.insert(canonical_code(next)).second) out[n + 1].push_back(std::move(next));
            }
        }
    }
    return out;
}

inline FinPoset to_poset(const PosetRows& le) {
    std::vector<std::pair<int, int>> rel;
    for (std::size_t a = 0; a < le.size(); ++a)
        for (std::size_t b = 0; b < le.size(); ++b)
            if ((le[a] >> b) & 1) rel.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return FinPoset::from_relation(le.size(), rel);
}

/// Some formally reduced o with 1 <= lg(o) <= max_len fixes a point.
inline bool naive_has_cycle(const OrgStructure& j, std::size_t max_len) {
    bool found = false;
    for_each_word(all_letters(j.nodes()), max_len, true, [&](const Word& o) {
        if (found || o.empty()) return;
        for (std::size_t a = 0; a < j.size() && !found; ++a)
            if (eval_word(j.maps, o, static_cast<int>(a)) == static_cast<int>(a)) found = true;
    });
    return found;
}

/// Components of the graph with an edge a - F(a) for every map pair, by repeated relabeling.
inline std::vector<int> naive_components(const OrgStructure& j) {
    std::vector<int> label(j.size());
    for (std::size_t a = 0; a < j.size(); ++a) label[a] = static_cast<int>(a);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& m : j.maps.pos)
            for (auto [a, b] : m.pairs()) {
                int lo = std::min(label[a], label[b]);
                if (label[a] != lo || label[b] != lo) {
                    label[a] = label[b] = lo;
                    changed = true;
                }
            }
    }
    return label;
}

inline bool has_monochromatic_triangle(const Coloring& c) {
    for (int a = 0; a < c.lambda; ++a)
        for (int b = a + 1; b < c.lambda; ++b)
            for (int d = b + 1; d < c.lambda; ++d)
                if (c(a, b) == c(a, d) && c(a, b) == c(b, d)) return true;
    return false;
}

/// eps = 1 entanglement: the family's points carry both an edge and a non-edge.
inline bool pair_scan_entangled(const RelStructure& g, const std::vector<int>& pts) {
    bool edge = false, non_edge = false;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) (g.holds("R", pts[a], pts[b]) ? edge : non_edge) = true;
    return edge && non_edge;
}

/// Some word of the same length lies above both (searching all words of that shape).
inline bool brute_compatible(const FinPoset& t, const Word& o1, const Word& o2) {
    if (o1.size() != o2.size()) return false;
    for (std::size_t i = 0; i < o1.size(); ++i) {
        if (o1[i].sign != o2[i].sign) return false;
        bool bound = false;
        for (std::size_t v = 0; v < t.size() && !bound; ++v)
            bound = t.le(o1[i].node, static_cast<int>(v)) && t.le(o2[i].node, static_cast<int>(v));
        if (!bound) return false;
    }
    return true;
}

} // namespace tf_test
