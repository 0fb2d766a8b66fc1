#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "poset.hpp"
#include "report.hpp"

namespace twinforge {

enum class Theta { Omega, Uncountable };

inline const char* to_string(Theta t) { return t == Theta::Omega ? "omega" : "uncountable"; }

/// (T, B, theta) plus the truncation boundary. Density and clause (C)(b) are only
/// demanded at elements outside `frontier`.
struct TwinshipParam {
    FinPoset T;
    std::vector<NodeSet> B;
    Theta theta = Theta::Omega;
    NodeSet frontier;

    NodeSet non_frontier() const { return ~frontier; }
};

struct ValidateOptions {
    bool verbatim = false;      ///< ignore the frontier
    bool demand_levels = false; ///< extra demand (D) for tree parameters
};

/// Some member of B is a subset of s.
inline std::optional<std::size_t> member_inside(const std::vector<NodeSet>& b, const NodeSet& s) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].is_subset_of(s)) return i;
    return std::nullopt;
}

/// {nu : eta < nu or eta incompatible with nu}.
inline NodeSet above_or_incompatible(const FinPoset& t, int eta) {
    NodeSet s(t.size());
    for (std::size_t v = 0; v < t.size(); ++v) {
        int nu = static_cast<int>(v);
        if (t.lt(eta, nu) || !t.compatible(eta, nu)) s.set(v);
    }
    return s;
}

inline bool is_tree_like_param(const TwinshipParam& p) {
    if (!p.T.is_tree_like()) return false;
    for (const auto& d : p.B)
        if (p.T.upward_closure(d) != d) return false;
    return true;
}

struct StrongResult {
    bool strong = false;
    std::optional<int> top; ///< m with down(m) solving p when not strong
    NodeSet witness;
};

/// A directed subset of a finite order has a top m and lies inside down(m), so down(m)
/// ranges over the maximal candidates.
inline StrongResult is_strong(const TwinshipParam& p) {
    StrongResult r;
    if (p.B.empty()) {
        r.witness = p.T.empty_set();
        return r;
    }
    for (std::size_t m = 0; m < p.T.size(); ++m) {
        const auto& g = p.T.down(static_cast<int>(m));
        bool meets_all = std::all_of(p.B.begin(), p.B.end(), [&](const NodeSet& d) { return g.intersects(d); });
        if (meets_all) {
            r.top = static_cast<int>(m);
            r.witness = g;
            return r;
        }
    }
    r.strong = true;
    return r;
}

inline bool solves(const TwinshipParam& p, const NodeSet& g) {
    require(g.size() == p.T.size(), ErrorKind::InvalidElement, "G is not a subset of T");
    if (!is_directed(p.T, g)) return false;
    return std::all_of(p.B.begin(), p.B.end(), [&](const NodeSet& d) { return g.intersects(d); });
}

inline ClauseReport validate_param(const TwinshipParam& p, const ValidateOptions& opt = {}) {
    const FinPoset& t = p.T;
    const std::size_t n = t.size();
    ClauseReport rep;
    rep.subject = "twinship parameter (|T| = " + std::to_string(n) + ", |B| = " + std::to_string(p.B.size()) + ")";
    NodeSet frontier = opt.verbatim ? NodeSet(n) : p.frontier;
    require(frontier.size() == n, ErrorKind::InvalidInput, "frontier is not a subset of T");
    for (const auto& d : p.B) require(d.size() == n, ErrorKind::InvalidInput, "member of B is not a subset of T");

    {
        std::string bad;
        if (!t.is_partial_order()) bad = "T is not antisymmetric";
        for (std::size_t a = 0; a < n && bad.empty(); ++a)
            for (std::size_t b = a + 1; b < n && bad.empty(); ++b) {
                auto mlb = maximal_lower_bounds(t, static_cast<int>(a), static_cast<int>(b));
                if (mlb.size() > 1)
                    bad = t.label(static_cast<int>(a)) + " and " + t.label(static_cast<int>(b)) + " have " + std::to_string(mlb.size()) + " maximal lower bounds";
            }
        rep.add("A", bad.empty(), bad);
    }
    rep.add("B", true, std::string("theta = ") + to_string(p.theta) + " (symbolic)");

    {
        std::string bad;
        for (std::size_t i = 0; i < p.B.size() && bad.empty(); ++i)
            if (!is_dense_rel(t, p.B[i], frontier)) bad = "member " + std::to_string(i) + " " + format_set(t, p.B[i]) + " is not dense";
        rep.add("C(a)-density", bad.empty(), bad);
    }
    {
        std::string bad;
        bool literal = true;
        for (std::size_t i = 0; i < p.B.size(); ++i)
            for (std::size_t j = i + 1; j < p.B.size(); ++j) {
                NodeSet both = p.B[i] & p.B[j];
                if (std::find(p.B.begin(), p.B.end(), both) == p.B.end()) literal = false;
                if (bad.empty() && !member_inside(p.B, both))
                    bad = "no member inside the intersection of members " + std::to_string(i) + " and " + std::to_string(j);
            }
        rep.add("C(a)-intersection", bad.empty(), bad);
        rep.info("C(a)-literal-closure", literal ? "B is closed under pairwise intersection" : "B is not literally closed under pairwise intersection");
    }
    {
        std::string bad;
        for (std::size_t e = 0; e < n && bad.empty(); ++e) {
            if (frontier.test(e)) continue;
            if (!member_inside(p.B, above_or_incompatible(t, static_cast<int>(e))))
                bad = "no member of B avoids the cone at " + t.label(static_cast<int>(e));
        }
        rep.add("C(b)", bad.empty(), bad);
    }
    if (p.theta == Theta::Uncountable) {
        NodeSet all = t.full_set();
        for (const auto& d : p.B) all &= d;
        bool ok = p.B.empty() || member_inside(p.B, all).has_value();
        rep.add("C(c)", ok, ok ? "" : "intersection of all members contains no member");
    } else {
        rep.skip("C(c)", "theta = omega");
    }
    if (opt.demand_levels) {
        int top = 0;
        for (std::size_t e = 0; e < n; ++e) top = std::max(top, t.level(static_cast<int>(e)));
        std::string bad;
        for (int eps = 0; eps <= top && bad.empty(); ++eps) {
            bool found = std::any_of(p.B.begin(), p.B.end(), [&](const NodeSet& d) {
                for (int v : members(d))
                    if (t.level(v) < eps) return false;
                return true;
            });
            if (!found) bad = "no member of B lies at level >= " + std::to_string(eps);
        }
        rep.add("D", bad.empty(), bad);
    }
    rep.info("tree-like", is_tree_like_param(p) ? "yes" : "no");
    rep.info("well-founded", "yes (finite)");
    auto s = is_strong(p);
    rep.info("strong", s.strong ? "yes" : "no: down(" + t.label(*s.top) + ") solves p");
    return rep;
}

struct ForcingExample {
    int lam = 2;
    Theta theta = Theta::Omega;
    SeqTree tree;
    FinPoset P;
    std::vector<int> name; ///< longest forced prefix, a tree node per condition
};

inline ClauseReport validate_forcing_example(const ForcingExample& m) {
    ClauseReport rep;
    rep.subject = "forcing example";
    const auto& t = m.tree.poset;
    rep.add("lambda", m.lam >= 2, m.lam >= 2 ? "" : "lambda must be at least 2");
    bool sized = m.name.size() == m.P.size();
    rep.add("name-total", sized, sized ? "" : "name does not cover every condition");
    if (!sized) return rep;
    for (int v : m.name) t.check(v);
    std::string bad;
    for (std::size_t p = 0; p < m.P.size() && bad.empty(); ++p)
        for (std::size_t q = 0; q < m.P.size() && bad.empty(); ++q)
            if (m.P.le(static_cast<int>(p), static_cast<int>(q)) && !t.le(m.name[p], m.name[q]))
                bad = "condition " + m.P.label(static_cast<int>(p)) + " <= " + m.P.label(static_cast<int>(q)) + " but names are not prefix-ordered";
    rep.add("monotone", bad.empty(), bad);
    bad.clear();
    for (std::size_t v = 0; v < t.size() && bad.empty(); ++v) {
        bool forced = std::any_of(m.name.begin(), m.name.end(), [&](int nm) { return t.le(static_cast<int>(v), nm); });
        if (!forced) bad = "node " + t.label(static_cast<int>(v)) + " is forced by no condition";
    }
    rep.add("F", bad.empty(), bad);
    return rep;
}

struct DerivedParam {
    TwinshipParam param;
    bool truncated = false;
};

/// B_m from all (I, f) with I a maximal antichain of P and f(p) a prefix of name(p);
/// D_{I,f} is the upward closure of f[I]. Frontier = the maximal-length nodes.
inline DerivedParam derive_from_forcing(const ForcingExample& m, std::size_t antichain_cap = 10000, std::size_t family_cap = 100000) {
    require(validate_forcing_example(m).holds(), ErrorKind::InvalidInput, "invalid forcing example");
    const auto& t = m.tree.poset;
    DerivedParam out;
    out.param.T = t;
    out.param.theta = m.theta;
    out.param.frontier = t.empty_set();
    for (std::size_t v = 0; v < t.size(); ++v)
        if (m.tree.length(static_cast<int>(v)) == m.tree.depth - 1) out.param.frontier.set(v);

    auto acs = maximal_antichains(m.P, antichain_cap);
    out.truncated = acs.truncated;
    std::set<NodeSet> family;
    for (const auto& ac : acs.antichains) {
        auto conds = members(ac);
        std::vector<std::vector<int>> choices;
        for (int c : conds) choices.push_back(members(t.down(m.name[c])));
        std::vector<std::size_t> pick(conds.size(), 0);
        while (true) {
            NodeSet d(t.size());
            for (std::size_t i = 0; i < conds.size(); ++i) d |= t.up(choices[i][pick[i]]);
            family.insert(d);
            if (family.size() >= family_cap) {
                out.truncated = true;
                break;
            }
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
        if (family.size() >= family_cap) break;
    }
    // Close under pairwise intersection.
    bool grew = true;
    while (grew && !out.truncated) {
        grew = false;
        std::vector<NodeSet> cur(family.begin(), family.end());
        for (std::size_t i = 0; i < cur.size() && !out.truncated; ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                if (family.insert(cur[i] & cur[j]).second) {
                    grew = true;
                    if (family.size() >= family_cap) {
                        out.truncated = true;
                        break;
                    }
                }
    }
    out.param.B.assign(family.begin(), family.end());
    return out;
}

struct TransformResult {
    TwinshipParam param;
    std::vector<std::vector<int>> seqs; ///< node i of the new order is seqs[i]
};

inline std::string format_seq(const FinPoset& t, const std::vector<int>& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        auto l = t.label(s[i]);
        out += l.empty() ? "()" : l;
    }
    return out + ">";
}

/// T_r: nonempty strictly increasing sequences starting at or above r, ordered by initial segment.
/// D_[r] holds the sequences that meet D. Frontier: sequences ending in a frontier element.
inline TransformResult wellfound_transform(const TwinshipParam& p, int r, std::size_t cap = 4096) {
    const FinPoset& t = p.T;
    t.check(r);
    require(t.is_partial_order(), ErrorKind::NotPartialOrder, "wellfound_transform needs a partial order");
    TransformResult out;
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
        out.seqs.push_back(cur);
        require(out.seqs.size() <= cap, ErrorKind::BudgetExceeded, "T_r exceeds " + std::to_string(cap) + " sequences");
        for (std::size_t v = 0; v < t.size(); ++v)
            if (t.lt(cur.back(), static_cast<int>(v))) {
                cur.push_back(static_cast<int>(v));
                self(self);
                cur.pop_back();
            }
    };
    for (int v : members(t.up(r))) {
        cur = {v};
        rec(rec);
    }
    std::sort(out.seqs.begin(), out.seqs.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    const std::size_t n = out.seqs.size();
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(format_seq(t, out.seqs[i]));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = out.seqs[i];
            const auto& b = out.seqs[j];
            if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    out.param.T = FinPoset::from_relation(n, rel, std::move(labels), std::max(cap, FinPoset::default_cap));
    out.param.theta = p.theta;
    out.param.frontier = NodeSet(n);
    for (std::size_t i = 0; i < n; ++i)
        if (p.frontier.test(out.seqs[i].back())) out.param.frontier.set(i);
    std::set<NodeSet> seen;
    for (const auto& d : p.B) {
        NodeSet dr(n);
        for (std::size_t i = 0; i < n; ++i)
            if (std::any_of(out.seqs[i].begin(), out.seqs[i].end(), [&](int v) { return d.test(v); })) dr.set(i);
        if (seen.insert(dr).second) out.param.B.push_back(dr);
    }
    return out;
}

} // namespace twinforge
