#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "error.hpp"

namespace twinforge {

using NodeSet = boost::dynamic_bitset<>;

inline std::vector<int> members(const NodeSet& s) {
    std::vector<int> out;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

inline NodeSet make_set(std::size_t n, const std::vector<int>& ids) {
    NodeSet s(n);
    for (int i : ids) {
        require(i >= 0 && static_cast<std::size_t>(i) < n, ErrorKind::InvalidElement, "element " + std::to_string(i) + " out of range");
        s.set(static_cast<std::size_t>(i));
    }
    return s;
}

/// Finite preorder on [0, n) stored as up-set and down-set rows.
/// Rows are always reflexively and transitively closed.
class FinPoset {
public:
    static constexpr std::size_t default_cap = 64;

    FinPoset() = default;

    /// Discrete order on n elements.
    explicit FinPoset(std::size_t n, std::size_t cap = default_cap) : n_(n) {
        require(n <= cap, ErrorKind::InvalidInput, "poset of size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
        up_.assign(n, NodeSet(n));
        down_.assign(n, NodeSet(n));
        for (std::size_t i = 0; i < n; ++i) {
            up_[i].set(i);
            down_[i].set(i);
        }
    }

    /// Closes `pairs` (a <= b) reflexively and transitively.
    static FinPoset from_relation(std::size_t n, const std::vector<std::pair<int, int>>& pairs,
                                  std::vector<std::string> labels = {}, std::size_t cap = default_cap) {
        FinPoset p(n, cap);
        for (auto [a, b] : pairs) {
            p.check(a);
            p.check(b);
            p.up_[a].set(b);
        }
        // Warshall on rows: if k in up(i) then up(k) is in up(i).
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];
        p.rebuild_down();
        if (!labels.empty()) p.set_labels(std::move(labels));
        return p;
    }

    std::size_t size() const { return n_; }

    bool le(int a, int b) const { return up_[idx(a)].test(idx(b)); }
    bool lt(int a, int b) const { return le(a, b) && !le(b, a); }
    bool comparable(int a, int b) const { return le(a, b) || le(b, a); }
    /// Common upper bound exists.
    bool compatible(int a, int b) const { return up_[idx(a)].intersects(up_[idx(b)]); }

    const NodeSet& up(int a) const { return up_[idx(a)]; }
    const NodeSet& down(int a) const { return down_[idx(a)]; }

    NodeSet empty_set() const { return NodeSet(n_); }
    NodeSet full_set() const {
        NodeSet s(n_);
        s.set();
        return s;
    }

    bool is_partial_order() const {
        for (std::size_t i = 0; i < n_; ++i)
            if ((up_[i] & down_[i]).count() != 1) return false;
        return true;
    }

    NodeSet upward_closure(const NodeSet& s) const {
        NodeSet out(n_);
        for (int i : members(s)) out |= up_[i];
        return out;
    }
    NodeSet downward_closure(const NodeSet& s) const {
        NodeSet out(n_);
        for (int i : members(s)) out |= down_[i];
        return out;
    }

    std::vector<int> maximal_elements() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (up_[i].count() == 1) out.push_back(static_cast<int>(i));
        return out;
    }
    std::vector<int> minimal_elements() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (down_[i].count() == 1) out.push_back(static_cast<int>(i));
        return out;
    }

    /// Number of strict predecessors; the depth of a node in a tree.
    int level(int a) const { return static_cast<int>(down_[idx(a)].count()) - 1; }

    /// Every principal down-set is a chain.
    bool is_tree_like() const {
        for (std::size_t i = 0; i < n_; ++i) {
            auto d = members(down_[i]);
            for (std::size_t x = 0; x < d.size(); ++x)
                for (std::size_t y = x + 1; y < d.size(); ++y)
                    if (!comparable(d[x], d[y])) return false;
        }
        return true;
    }

    /// Induced sub-preorder on the members of s, renumbered in increasing id order.
    FinPoset restrict_to(const NodeSet& s) const {
        auto ids = members(s);
        FinPoset p(ids.size(), std::max(ids.size(), default_cap));
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j)
                if (le(ids[i], ids[j])) p.up_[i].set(j);
        p.rebuild_down();
        if (!labels_.empty()) {
            std::vector<std::string> l;
            for (int i : ids) l.push_back(labels_[i]);
            p.labels_ = std::move(l);
        }
        return p;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        require(labels.size() == n_, ErrorKind::InvalidInput, "label count does not match poset size");
        labels_ = std::move(labels);
    }
    std::string label(int a) const { return labels_.empty() ? std::to_string(idx(a)) : labels_[idx(a)]; }
    std::optional<int> find(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<int>(i);
        return std::nullopt;
    }

    void check(int a) const {
        require(a >= 0 && static_cast<std::size_t>(a) < n_, ErrorKind::InvalidElement,
                "element " + std::to_string(a) + " not in poset of size " + std::to_string(n_));
    }

    friend bool operator==(const FinPoset& a, const FinPoset& b) { return a.n_ == b.n_ && a.up_ == b.up_; }

private:
    std::size_t idx(int a) const {
        check(a);
        return static_cast<std::size_t>(a);
    }

    void rebuild_down() {
        down_.assign(n_, NodeSet(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (auto j = up_[i].find_first(); j != NodeSet::npos; j = up_[i].find_next(j)) down_[j].set(i);
    }

    std::size_t n_ = 0;
    std::vector<NodeSet> up_;
    std::vector<NodeSet> down_;
    std::vector<std::string> labels_;
};

inline std::string format_set(const FinPoset& p, const NodeSet& s) {
    std::string out = "{";
    bool first = true;
    for (int i : members(s)) {
        if (!first) out += ", ";
        first = false;
        out += p.label(i).empty() ? "<>" : p.label(i);
    }
    return out + "}";
}

/// Every p has some q >= p in d.
inline bool is_dense(const FinPoset& p, const NodeSet& d) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.up(static_cast<int>(i)).intersects(d)) return false;
    return true;
}

/// Density required only below elements outside `frontier`.
inline bool is_dense_rel(const FinPoset& p, const NodeSet& d, const NodeSet& frontier) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!frontier.test(i) && !p.up(static_cast<int>(i)).intersects(d)) return false;
    return true;
}

/// Every two members of g have a common upper bound inside g. The empty set is directed.
inline bool is_directed(const FinPoset& p, const NodeSet& g) {
    auto m = members(g);
    for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = x + 1; y < m.size(); ++y)
            if (!(p.up(m[x]) & p.up(m[y])).intersects(g)) return false;
    return true;
}

inline NodeSet down_set(const FinPoset& p, int m) { return p.down(m); }
inline NodeSet up_set(const FinPoset& p, int m) { return p.up(m); }

inline std::vector<int> maximal_in(const FinPoset& p, const NodeSet& s) {
    std::vector<int> out;
    for (int i : members(s)) {
        NodeSet above = p.up(i) & s;
        above.reset(static_cast<std::size_t>(i));
        bool maximal = true;
        for (int j : members(above))
            if (!p.le(j, i)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(i);
    }
    return out;
}

inline std::vector<int> maximal_lower_bounds(const FinPoset& p, int a, int b) {
    return maximal_in(p, p.down(a) & p.down(b));
}

/// Greatest lower bound; nullopt when a and b have no common lower bound.
/// Two or more maximal lower bounds raise NonUniqueMaximalLowerBound.
inline std::optional<int> meet(const FinPoset& p, int a, int b) {
    require(p.is_partial_order(), ErrorKind::NotPartialOrder, "meet requires an antisymmetric order");
    auto mlb = maximal_lower_bounds(p, a, b);
    if (mlb.empty()) return std::nullopt;
    if (mlb.size() > 1)
        throw Error(ErrorKind::NonUniqueMaximalLowerBound,
                    "elements " + p.label(a) + " and " + p.label(b) + " have " + std::to_string(mlb.size()) + " maximal lower bounds");
    return mlb.front();
}

struct AntichainList {
    std::vector<NodeSet> antichains;
    bool truncated = false;
};

/// Maximal antichains = maximal cliques of the incomparability graph (Bron-Kerbosch with pivot).
inline AntichainList maximal_antichains(const FinPoset& p, std::size_t cap = 100000) {
    const std::size_t n = p.size();
    std::vector<NodeSet> incomparable(n, NodeSet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !p.comparable(static_cast<int>(i), static_cast<int>(j))) incomparable[i].set(j);

    AntichainList out;
    auto rec = [&](auto&& self, NodeSet r, NodeSet cand, NodeSet excl) -> void {
        if (out.truncated) return;
        if (cand.none() && excl.none()) {
            if (out.antichains.size() >= cap) {
                out.truncated = true;
                return;
            }
            out.antichains.push_back(r);
            return;
        }
        NodeSet both = cand | excl;
        std::size_t pivot = both.find_first();
        std::size_t best = 0;
        for (auto u = both.find_first(); u != NodeSet::npos; u = both.find_next(u)) {
            std::size_t c = (cand & incomparable[u]).count();
            if (c >= best) {
                best = c;
                pivot = u;
            }
        }
        NodeSet todo = cand - incomparable[pivot];
        for (auto v = todo.find_first(); v != NodeSet::npos; v = todo.find_next(v)) {
            NodeSet r2 = r;
            r2.set(v);
            self(self, r2, cand & incomparable[v], excl & incomparable[v]);
            cand.reset(v);
            excl.set(v);
        }
    };
    if (n == 0) {
        out.antichains.push_back(NodeSet(0));
        return out;
    }
    rec(rec, NodeSet(n), p.full_set(), NodeSet(n));
    std::sort(out.antichains.begin(), out.antichains.end());
    return out;
}

inline bool is_antichain(const FinPoset& p, const NodeSet& s) {
    auto m = members(s);
    for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = x + 1; y < m.size(); ++y)
            if (p.comparable(m[x], m[y])) return false;
    return true;
}

inline bool is_maximal_antichain(const FinPoset& p, const NodeSet& s) {
    if (!is_antichain(p, s)) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool touched = false;
        for (int j : members(s))
            if (p.comparable(static_cast<int>(i), j)) {
                touched = true;
                break;
            }
        if (!touched) return false;
    }
    return true;
}

enum class AboveKind { Trivial, NoDirectedAbove };

struct AntichainCert {
    NodeSet antichain;
    std::vector<std::pair<int, AboveKind>> classification;
};

/// Maximal antichain I in which every p has P_{>=p} directed (Trivial) or no q >= p with
/// P_{>=q} directed (NoDirectedAbove). Among the admissible maximal antichains the one with
/// the least total level is returned.
inline AntichainCert trivial_decomposition(const FinPoset& p, std::size_t cap = 100000) {
    const std::size_t n = p.size();
    NodeSet trivial(n), directed_above(n);
    for (std::size_t i = 0; i < n; ++i)
        if (is_directed(p, p.up(static_cast<int>(i)))) trivial.set(i);
    for (std::size_t i = 0; i < n; ++i)
        if (p.up(static_cast<int>(i)).intersects(trivial)) directed_above.set(i);
    NodeSet admissible = trivial | ~directed_above;

    auto all = maximal_antichains(p, cap);
    std::optional<NodeSet> best;
    int best_cost = 0;
    for (const auto& a : all.antichains) {
        if (!a.is_subset_of(admissible)) continue;
        int cost = 0;
        for (int i : members(a)) cost += p.level(i);
        if (!best || cost < best_cost) {
            best = a;
            best_cost = cost;
        }
    }
    if (!best) {
        // The maximal elements always qualify: P_{>=m} = {m} is directed.
        best = make_set(n, p.maximal_elements());
    }
    AntichainCert cert{*best, {}};
    for (int i : members(*best))
        cert.classification.emplace_back(i, trivial.test(i) ? AboveKind::Trivial : AboveKind::NoDirectedAbove);
    return cert;
}

/// Sequences of length < depth over [0, alphabet), ordered by prefix.
struct SeqTree {
    int alphabet = 0;
    int depth = 0;
    std::vector<std::vector<int>> seqs;
    FinPoset poset;

    int node(const std::vector<int>& s) const {
        auto it = std::find(seqs.begin(), seqs.end(), s);
        require(it != seqs.end(), ErrorKind::InvalidElement, "sequence not in tree");
        return static_cast<int>(it - seqs.begin());
    }
    int length(int id) const { return static_cast<int>(seqs.at(static_cast<std::size_t>(id)).size()); }
};

inline std::string seq_label(const std::vector<int>& s, int alphabet) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (alphabet > 10 && i > 0) out += '.';
        out += std::to_string(s[i]);
    }
    return out;
}

/// Breadth-first numbering: the root is 0, then length-1 sequences in lexicographic order, and so on.
inline SeqTree make_seq_tree(int alphabet, int depth, std::size_t cap = FinPoset::default_cap) {
    require(alphabet >= 1 && depth >= 1, ErrorKind::InvalidInput, "SeqTree needs alphabet >= 1 and depth >= 1");
    SeqTree t;
    t.alphabet = alphabet;
    t.depth = depth;
    std::vector<std::vector<int>> layer{{}};
    for (int len = 0; len < depth; ++len) {
        std::vector<std::vector<int>> next;
        for (auto& s : layer) {
            t.seqs.push_back(s);
            if (t.seqs.size() > cap) throw Error(ErrorKind::InvalidInput, "SeqTree exceeds poset cap");
            for (int a = 0; a < alphabet; ++a) {
                auto c = s;
                c.push_back(a);
                next.push_back(std::move(c));
            }
        }
        layer = std::move(next);
    }
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < t.seqs.size(); ++i) {
        labels.push_back(seq_label(t.seqs[i], alphabet));
        for (std::size_t j = 0; j < t.seqs.size(); ++j) {
            const auto& a = t.seqs[i];
            const auto& b = t.seqs[j];
            if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin()))
                rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    t.poset = FinPoset::from_relation(t.seqs.size(), rel, std::move(labels), cap);
    return t;
}

} // namespace twinforge
