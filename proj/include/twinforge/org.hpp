#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "free_order.hpp"
#include "poset.hpp"
#include "report.hpp"
#include "twinship.hpp"
#include "union_find.hpp"
#include "word.hpp"

namespace twinforge {

/// Ordered graph with partial maps F_{eta,+1} indexed by the nodes of T.
struct OrgStructure {
    std::vector<int> order;              ///< elements in increasing order
    std::vector<int> rank;               ///< position of each element in `order`
    std::vector<std::vector<char>> adj;  ///< symmetric adjacency
    MapFamily maps;
    NodeSet frontier;
    std::vector<std::string> names;      ///< optional display names

    OrgStructure() = default;
    OrgStructure(std::size_t n, std::size_t nodes)
        : order(n), rank(n), adj(n, std::vector<char>(n, 0)), maps(nodes, n), frontier(n) {
        std::iota(order.begin(), order.end(), 0);
        std::iota(rank.begin(), rank.end(), 0);
    }

    std::size_t size() const { return adj.size(); }
    std::size_t nodes() const { return maps.nodes(); }

    /// Accepts any list; check_K0 reports when it is not a permutation.
    void set_order(std::vector<int> ord) {
        order = std::move(ord);
        rank.assign(size(), -1);
        for (std::size_t k = 0; k < order.size(); ++k)
            if (order[k] >= 0 && static_cast<std::size_t>(order[k]) < size()) rank[order[k]] = static_cast<int>(k);
    }
    bool order_is_linear() const {
        if (order.size() != size()) return false;
        std::vector<char> seen(size(), 0);
        for (int a : order) {
            if (a < 0 || static_cast<std::size_t>(a) >= size() || seen[a]) return false;
            seen[a] = 1;
        }
        return true;
    }

    bool less(int a, int b) const { return rank[a] < rank[b]; }
    bool edge(int a, int b) const { return adj[a][b] != 0; }
    void add_edge(int a, int b) {
        require(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < size() && static_cast<std::size_t>(b) < size(), ErrorKind::InvalidElement, "edge endpoint out of range");
        adj[a][b] = adj[b][a] = 1;
    }
    void remove_edge(int a, int b) { adj[a][b] = adj[b][a] = 0; }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = a; b < size(); ++b)
                if (adj[a][b]) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
        return out;
    }

    std::string name(int a) const { return names.empty() ? std::to_string(a) : names[a]; }
};

/// (<, R) and equality are preserved both ways by f on its domain.
inline std::string partial_automorphism_defect(const OrgStructure& j, const PartialMap& f) {
    auto pairs = f.pairs();
    for (const auto& [a, fa] : pairs)
        for (const auto& [b, fb] : pairs) {
            if (a == b) continue;
            if (j.less(a, b) != j.less(fa, fb))
                return "order between " + j.name(a) + " and " + j.name(b) + " is not preserved";
            if (j.edge(a, b) != j.edge(fa, fb))
                return "edge relation between " + j.name(a) + " and " + j.name(b) + " is not preserved";
        }
    return {};
}

/// {eta : a in dom F_{eta,iota}}.
inline NodeSet domain_nodes(const OrgStructure& j, int a, int iota) {
    NodeSet s(j.nodes());
    for (std::size_t e = 0; e < j.nodes(); ++e)
        if (j.maps.map({static_cast<int>(e), iota}).defined(a)) s.set(e);
    return s;
}

struct K0Options {
    std::size_t word_bound = 2; ///< (B)(c)/(e) checked for words up to this length
};

inline ClauseReport check_K0(const OrgStructure& j, const TwinshipParam& p, const K0Options& opt = {}) {
    ClauseReport rep;
    rep.subject = "K0 membership (|J| = " + std::to_string(j.size()) + ")";
    require(j.nodes() == p.T.size(), ErrorKind::InvalidInput, "maps are not indexed by the nodes of T");
    const std::size_t n = j.size();

    rep.add("A", j.order_is_linear(), j.order_is_linear() ? "" : "order is not a permutation of the universe");
    {
        std::string bad;
        for (std::size_t a = 0; a < n && bad.empty(); ++a) {
            if (j.adj[a][a]) bad = "loop at " + j.name(static_cast<int>(a));
            for (std::size_t b = 0; b < n && bad.empty(); ++b)
                if (j.adj[a][b] != j.adj[b][a]) bad = "edge relation not symmetric";
        }
        rep.add("C", bad.empty(), bad);
    }
    if (!j.order_is_linear()) {
        rep.skip("B", "order invalid");
        return rep;
    }
    {
        std::string bad;
        for (std::size_t e = 0; e < j.nodes() && bad.empty(); ++e) {
            auto d = partial_automorphism_defect(j, j.maps.pos[e]);
            if (!d.empty()) bad = "F_" + p.T.label(static_cast<int>(e)) + ": " + d;
        }
        rep.add("B", bad.empty(), bad);
    }
    {
        std::string bad;
        for (std::size_t e = 0; e < j.nodes() && bad.empty(); ++e)
            if (!(j.maps.neg[e] == j.maps.pos[e].inverse())) bad = "F_{" + p.T.label(static_cast<int>(e)) + ",-1} is not the inverse";
        rep.add("B(a)", bad.empty(), bad);
    }
    {
        std::string bad;
        for (std::size_t a = 0; a < n && bad.empty(); ++a) {
            if (j.frontier.test(a)) continue;
            for (int iota : {1, -1}) {
                NodeSet d = domain_nodes(j, static_cast<int>(a), iota);
                if (std::find(p.B.begin(), p.B.end(), d) == p.B.end()) {
                    bad = "D_{" + std::to_string(iota) + "," + j.name(static_cast<int>(a)) + "} = " + format_set(p.T, d) + " is not in B";
                    break;
                }
            }
        }
        rep.add("B(b)", bad.empty(), bad);
    }
    {
        std::string bad;
        auto letters = all_letters(j.nodes());
        for_each_word(letters, opt.word_bound, false, [&](const Word& o) {
            if (!bad.empty() || o.empty()) return;
            auto d = partial_automorphism_defect(j, eval_map(j.maps, o));
            if (!d.empty()) bad = "F_" + format_word(o, &p.T) + ": " + d;
        });
        rep.add("B(c)", bad.empty(), bad.empty() ? "derived; words of length <= " + std::to_string(opt.word_bound) : bad);
    }
    {
        std::string bad;
        for (std::size_t e = 0; e < j.nodes() && bad.empty(); ++e)
            for (std::size_t v = 0; v < j.nodes() && bad.empty(); ++v)
                if (e != v && p.T.le(static_cast<int>(e), static_cast<int>(v)) && !j.maps.pos[e].subset_of(j.maps.pos[v]))
                    bad = "F_" + p.T.label(static_cast<int>(e)) + " is not contained in F_" + p.T.label(static_cast<int>(v));
        rep.add("B(d)", bad.empty(), bad);
    }
    rep.info("B(e)", "follows from (B) for partial automorphisms");
    return rep;
}

struct EClosure {
    std::vector<int> class_of;
    std::vector<std::vector<int>> classes;
};

inline EClosure e_closure(const OrgStructure& j) {
    DisjointSets ds(j.size());
    for (const auto& m : j.maps.pos)
        for (auto [a, b] : m.pairs()) ds.unite(a, b);
    EClosure out;
    out.classes = ds.classes();
    out.class_of.assign(j.size(), -1);
    for (std::size_t c = 0; c < out.classes.size(); ++c)
        for (int a : out.classes[c]) out.class_of[a] = static_cast<int>(c);
    return out;
}

/// Letter codes: 2*node for +1, 2*node+1 for -1; -1 means the empty word.
inline int letter_code(const Letter& l) { return 2 * l.node + (l.sign > 0 ? 0 : 1); }
inline Letter code_letter(int c) { return {c / 2, c % 2 ? -1 : 1}; }
/// New leftmost letter `next` may precede `first`.
inline bool may_prepend(int first, const Letter& next) {
    if (first < 0) return true;
    Letter f = code_letter(first);
    return f.node != next.node || f.sign == next.sign;
}

struct AtlasState {
    PartialMap map;
    int first = -1; ///< code of the leftmost letter
    Word word;      ///< representative formally reduced word
};

struct Atlas {
    std::vector<AtlasState> states;
    bool cap_exceeded = false;
};

struct K1Result {
    bool holds = true;
    std::optional<Word> word;
    std::optional<int> point;
    bool cap_exceeded = false;
    std::size_t atlas_size = 0;
};

/// BFS over (F_o, leftmost letter) for formally reduced o, extending words by prepending.
/// Stops at the first fixed point F_o(a) = a with lg(o) >= 1.
inline K1Result check_K1(const OrgStructure& j, std::size_t atlas_cap = 1'000'000, Atlas* atlas_out = nullptr) {
    K1Result res;
    Atlas atlas;
    std::map<std::pair<std::vector<int>, int>, std::size_t> seen;
    PartialMap id(j.size());
    for (std::size_t a = 0; a < j.size(); ++a) id.set(static_cast<int>(a), static_cast<int>(a));
    atlas.states.push_back({id, -1, {}});
    seen[{id.images(), -1}] = 0;
    auto letters = all_letters(j.nodes());
    for (std::size_t head = 0; head < atlas.states.size() && res.holds; ++head) {
        for (const auto& l : letters) {
            const AtlasState& cur = atlas.states[head];
            if (!may_prepend(cur.first, l)) continue;
            PartialMap next = PartialMap::compose(j.maps.map(l), cur.map);
            if (next.empty()) continue;
            Word w;
            w.reserve(cur.word.size() + 1);
            w.push_back(l);
            w.insert(w.end(), cur.word.begin(), cur.word.end());
            for (auto [a, b] : next.pairs())
                if (a == b) {
                    res.holds = false;
                    res.word = w;
                    res.point = a;
                    break;
                }
            if (!res.holds) break;
            auto key = std::make_pair(next.images(), letter_code(l));
            if (seen.count(key)) continue;
            if (atlas.states.size() >= atlas_cap) {
                atlas.cap_exceeded = true;
                break;
            }
            seen.emplace(key, atlas.states.size());
            atlas.states.push_back({std::move(next), letter_code(l), std::move(w)});
        }
        if (atlas.cap_exceeded) break;
    }
    res.cap_exceeded = atlas.cap_exceeded;
    res.atlas_size = atlas.states.size();
    if (atlas_out) *atlas_out = std::move(atlas);
    return res;
}

/// Omega_s as a finite automaton: states (F_o(s), leftmost letter) over formally reduced o.
struct OmegaOracle {
    const OrgStructure* j = nullptr;
    int s = 0;
    std::vector<std::pair<int, int>> states; ///< reachable (element, leftmost code)

    bool contains(const Word& o) const { return is_formally_reduced(o) && eval_word(j->maps, o, s).has_value(); }

    /// Nodes carried by some transition from a reachable state.
    NodeSet letters_used() const {
        NodeSet used(j->nodes());
        for (auto [a, first] : states)
            for (const auto& l : all_letters(j->nodes()))
                if (may_prepend(first, l) && j->maps.map(l).defined(a)) used.set(static_cast<std::size_t>(l.node));
        return used;
    }

    /// Omega_s == Omega_D up to truncation: no letter outside D is ever applicable, and every
    /// admissible D-letter is applicable at every reachable non-frontier state.
    bool equals_omega_of(const NodeSet& d) const {
        for (auto [a, first] : states)
            for (const auto& l : all_letters(j->nodes())) {
                if (!may_prepend(first, l)) continue;
                bool defined = j->maps.map(l).defined(a);
                if (defined && !d.test(static_cast<std::size_t>(l.node))) return false;
                if (!defined && d.test(static_cast<std::size_t>(l.node)) && !j->frontier.test(static_cast<std::size_t>(a))) return false;
            }
        return true;
    }
};

inline OmegaOracle omega_s(const OrgStructure& j, int s, std::size_t cap = 1'000'000) {
    require(s >= 0 && static_cast<std::size_t>(s) < j.size(), ErrorKind::InvalidElement, "element out of range");
    OmegaOracle o;
    o.j = &j;
    o.s = s;
    std::set<std::pair<int, int>> seen{{s, -1}};
    o.states.push_back({s, -1});
    auto letters = all_letters(j.nodes());
    for (std::size_t head = 0; head < o.states.size(); ++head) {
        auto [a, first] = o.states[head];
        for (const auto& l : letters) {
            if (!may_prepend(first, l)) continue;
            auto b = j.maps.map(l)(a);
            if (!b) continue;
            std::pair<int, int> st{*b, letter_code(l)};
            if (seen.insert(st).second) {
                require(o.states.size() < cap, ErrorKind::BudgetExceeded, "Omega_s automaton exceeds cap");
                o.states.push_back(st);
            }
        }
    }
    return o;
}

inline ClauseReport check_K2(const OrgStructure& j, const TwinshipParam& p, std::size_t atlas_cap = 1'000'000) {
    ClauseReport rep;
    rep.subject = "K2 membership (|J| = " + std::to_string(j.size()) + ")";
    rep.append(check_K0(j, p), "K0:");
    auto k1 = check_K1(j, atlas_cap);
    if (k1.cap_exceeded && k1.holds)
        rep.add("K1", false, "atlas cap exceeded after " + std::to_string(k1.atlas_size) + " states");
    else
        rep.add("K1", k1.holds, k1.holds ? "" : "F_" + format_word(*k1.word, &p.T) + " fixes " + j.name(*k1.point));
    std::string bad;
    for (std::size_t s = 0; s < j.size() && bad.empty(); ++s) {
        if (j.frontier.test(s)) continue;
        auto oracle = omega_s(j, static_cast<int>(s), atlas_cap);
        bool found = std::any_of(p.B.begin(), p.B.end(), [&](const NodeSet& d) { return oracle.equals_omega_of(d); });
        if (!found) bad = "Omega_" + j.name(static_cast<int>(s)) + " matches no Omega_D";
    }
    rep.add("A", bad.empty(), bad);
    rep.add("B", true, "automatic: a finite T is well-founded");
    return rep;
}

struct GenericMapResult {
    std::optional<PartialMap> map;
    ClauseReport report;
};

/// F_G = union of F_{eta,1} over eta in G, with its four obligations as named clauses.
inline GenericMapResult generic_map(const OrgStructure& j, const TwinshipParam& p, const NodeSet& g) {
    GenericMapResult out;
    auto& rep = out.report;
    rep.subject = "generic map F_G for G = " + format_set(p.T, g);
    bool solving = solves(p, g);
    rep.add("G solves p", solving, solving ? "" : "G does not solve p");

    PartialMap f(j.size());
    std::string conflict;
    for (int e : members(g))
        for (auto [a, b] : j.maps.pos[e].pairs()) {
            if (auto cur = f(a)) {
                if (*cur != b && conflict.empty()) conflict = "maps disagree at " + j.name(a);
                continue;
            }
            if (auto pre = f.preimage(b)) {
                if (conflict.empty()) conflict = "two points map to " + j.name(b) + " (first " + j.name(*pre) + ")";
                continue;
            }
            f.set(a, b);
        }
    rep.add("well-defined", conflict.empty(), conflict);
    if (!conflict.empty()) {
        rep.skip("partial automorphism", "F_G inconsistent");
        rep.skip("domain", "F_G inconsistent");
        rep.skip("range", "F_G inconsistent");
        return out;
    }
    auto defect = partial_automorphism_defect(j, f);
    rep.add("partial automorphism", defect.empty(), defect);
    std::string dom_bad, ran_bad;
    for (std::size_t a = 0; a < j.size(); ++a) {
        if (j.frontier.test(a)) continue;
        if (dom_bad.empty() && !f.defined(static_cast<int>(a))) dom_bad = j.name(static_cast<int>(a)) + " not in domain";
        if (ran_bad.empty() && !f.in_range(static_cast<int>(a))) ran_bad = j.name(static_cast<int>(a)) + " not in range";
    }
    rep.add("domain", dom_bad.empty(), dom_bad);
    rep.add("range", ran_bad.empty(), ran_bad);
    out.map = std::move(f);
    return out;
}

enum class OrderRule { Magnus, Shortlex };
enum class LetterMode { EachNode, Monotone };

struct BlockOptions {
    OrderRule order = OrderRule::Magnus;
    LetterMode letters = LetterMode::EachNode;
};

struct Block {
    OrgStructure J;
    std::vector<Word> words; ///< element -> reduced word over generator letters
    std::vector<int> generators; ///< node carrying each generator
};

inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto ka = std::make_pair(a[i].node, -a[i].sign);
        auto kb = std::make_pair(b[i].node, -b[i].sign);
        if (ka != kb) return ka < kb;
    }
    return false;
}

/// Truncated free-group ball for D: reduced words of length <= L over the generators, seed = empty word.
/// F_g(w) = red(g w) whenever that has length <= L. Length-L words are frontier.
inline Block build_block(const TwinshipParam& p, std::size_t d_index, int L, const BlockOptions& opt = {}) {
    require(d_index < p.B.size(), ErrorKind::InvalidInput, "block set index outside B");
    require(L >= 0, ErrorKind::InvalidInput, "block depth must be nonnegative");
    const NodeSet& d = p.B[d_index];
    const FinPoset& t = p.T;
    Block blk;
    std::vector<int> gen_of_node(t.size(), -1);
    if (opt.letters == LetterMode::EachNode) {
        for (int v : members(d)) {
            gen_of_node[v] = static_cast<int>(blk.generators.size());
            blk.generators.push_back(v);
        }
    } else {
        require(t.is_tree_like(), ErrorKind::InvalidInput, "monotone letters need a tree-like T");
        require(t.upward_closure(d) == d, ErrorKind::InvalidInput, "monotone letters need an upward closed block set");
        for (int v : members(d)) {
            NodeSet below = t.down(v) & d;
            int mu = -1;
            for (int u : members(below))
                if ((t.down(u) & d).count() == 1) mu = u;
            if (gen_of_node[mu] < 0) {
                gen_of_node[mu] = static_cast<int>(blk.generators.size());
                blk.generators.push_back(mu);
            }
            gen_of_node[v] = gen_of_node[mu];
        }
    }
    const int k = static_cast<int>(blk.generators.size());

    std::vector<Word> words{{}};
    for (std::size_t head = 0; head < words.size(); ++head) {
        if (static_cast<int>(words[head].size()) == L) continue;
        for (int g = 0; g < k; ++g)
            for (int s : {1, -1}) {
                if (!words[head].empty() && words[head].front().node == g && words[head].front().sign == -s) continue;
                Word w{{g, s}};
                w.insert(w.end(), words[head].begin(), words[head].end());
                words.push_back(std::move(w));
            }
    }
    std::map<Word, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);

    const std::size_t n = words.size();
    blk.J = OrgStructure(n, t.size());
    blk.words = words;
    blk.J.names.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Word over_t = words[i];
        for (auto& l : over_t) l.node = blk.generators[l.node];
        blk.J.names[i] = format_word(over_t, &t);
        if (static_cast<int>(words[i].size()) == L) blk.J.frontier.set(i);
    }
    std::vector<int> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    if (opt.order == OrderRule::Shortlex) {
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return shortlex_less(words[a], words[b]); });
    } else {
        std::vector<MagnusKey> keys;
        for (const auto& w : words) keys.push_back(magnus_key(w, static_cast<std::size_t>(2 * L)));
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return magnus_compare(keys[a], keys[b]) < 0; });
    }
    blk.J.set_order(ord);

    for (int g = 0; g < k; ++g) {
        PartialMap m(n);
        for (std::size_t i = 0; i < n; ++i) {
            Word w{{g, 1}};
            w.insert(w.end(), words[i].begin(), words[i].end());
            w = free_reduce(w);
            if (static_cast<int>(w.size()) <= L) m.set(static_cast<int>(i), index.at(w));
        }
        for (std::size_t v = 0; v < t.size(); ++v)
            if (gen_of_node[v] == g) {
                blk.J.maps.pos[v] = m;
                blk.J.maps.neg[v] = m.inverse();
            }
    }
    return blk;
}

/// Elements reachable from s under all F_{eta,iota}.
inline NodeSet reachable_from(const OrgStructure& j, int s) {
    NodeSet seen(j.size());
    seen.set(static_cast<std::size_t>(s));
    std::deque<int> q{s};
    auto letters = all_letters(j.nodes());
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (const auto& l : letters)
            if (auto b = j.maps.map(l)(a); b && !seen.test(static_cast<std::size_t>(*b))) {
                seen.set(static_cast<std::size_t>(*b));
                q.push_back(*b);
            }
    }
    return seen;
}

inline bool is_orbit_generated(const OrgStructure& j) {
    if (j.size() == 0) return true;
    for (std::size_t s = 0; s < j.size(); ++s)
        if (reachable_from(j, static_cast<int>(s)).count() != j.size()) return false;
    return true;
}

inline bool closed_under_maps(const OrgStructure& j, const NodeSet& sub) {
    for (int a : members(sub))
        for (const auto& l : all_letters(j.nodes()))
            if (auto b = j.maps.map(l)(a); b && !sub.test(static_cast<std::size_t>(*b))) return false;
    return true;
}

/// Induced substructure on `sub`, renumbered in increasing id order.
inline OrgStructure restrict_to(const OrgStructure& j, const NodeSet& sub) {
    auto ids = members(sub);
    std::vector<int> pos(j.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    OrgStructure r(ids.size(), j.nodes());
    std::vector<int> ord;
    for (int a : j.order)
        if (pos[a] >= 0) ord.push_back(pos[a]);
    r.set_order(ord);
    for (std::size_t x = 0; x < ids.size(); ++x) {
        if (j.frontier.test(static_cast<std::size_t>(ids[x]))) r.frontier.set(x);
        for (std::size_t y = 0; y < ids.size(); ++y)
            if (j.edge(ids[x], ids[y])) r.adj[x][y] = 1;
    }
    for (std::size_t e = 0; e < j.nodes(); ++e)
        for (auto [a, b] : j.maps.pos[e].pairs())
            if (pos[a] >= 0 && pos[b] >= 0) r.maps.set(static_cast<int>(e), pos[a], pos[b]);
    if (!j.names.empty())
        for (int a : ids) r.names.push_back(j.names[a]);
    return r;
}

} // namespace twinforge
