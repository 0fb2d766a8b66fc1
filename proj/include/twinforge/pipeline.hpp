#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "entangle.hpp"
#include "error.hpp"
#include "gem.hpp"
#include "logic.hpp"
#include "org.hpp"
#include "relational.hpp"
#include "report.hpp"
#include "twinship.hpp"

namespace twinforge {

/// lambda blocks laid side by side; block alpha is a truncated free-group ball for D_alpha.
struct TwinAssembly {
    TwinshipParam p;
    int lambda = 0;
    std::vector<std::size_t> dseq; ///< indices into p.B
    Coloring c;
    int L = 0;
    BlockOptions options;
    Blueprint blueprint;
    OrgStructure J;
    std::vector<int> block_of;       ///< element -> alpha
    std::vector<std::size_t> offset; ///< first id of each block
    std::vector<std::size_t> block_size;
    NodeSet X, X1, X2;
    GemFragment M1, M2;

    int seed(int alpha) const { return static_cast<int>(offset[alpha]); }
};

/// Elements F_o(x) for x in X and formally reduced o in Omega_x with lg(o) of the given parity.
inline NodeSet parity_translates(const OrgStructure& j, const NodeSet& x, int parity) {
    NodeSet out(j.size());
    std::set<std::tuple<int, int, int>> seen;
    std::vector<std::tuple<int, int, int>> q;
    for (int s : members(x))
        if (seen.insert({s, -1, 0}).second) q.push_back({s, -1, 0});
    auto letters = all_letters(j.nodes());
    for (std::size_t head = 0; head < q.size(); ++head) {
        auto [a, first, par] = q[head];
        if (par == parity) out.set(static_cast<std::size_t>(a));
        for (const auto& l : letters) {
            if (!may_prepend(first, l)) continue;
            auto b = j.maps.map(l)(a);
            if (!b) continue;
            std::tuple<int, int, int> st{*b, letter_code(l), 1 - par};
            if (seen.insert(st).second) q.push_back(st);
        }
    }
    return out;
}

/// Pairs (F_o(s), F_o(t)) for every o defined at both, by BFS over letters defined at both ends.
inline std::set<std::pair<int, int>> common_translates(const OrgStructure& j, int s, int t) {
    std::set<std::pair<int, int>> seen{{s, t}};
    std::vector<std::pair<int, int>> q{{s, t}};
    auto letters = all_letters(j.nodes());
    for (std::size_t head = 0; head < q.size(); ++head) {
        auto [a, b] = q[head];
        for (const auto& l : letters) {
            auto fa = j.maps.map(l)(a);
            auto fb = j.maps.map(l)(b);
            if (fa && fb && seen.insert({*fa, *fb}).second) q.push_back({*fa, *fb});
        }
    }
    return seen;
}

inline void realize_twins(TwinAssembly& a) {
    auto g = ordered_graph(a.J);
    a.M1 = gem_realize(g.induced(members(a.X1)), a.blueprint);
    a.M2 = gem_realize(g.induced(members(a.X2)), a.blueprint);
}

inline TwinAssembly assemble(const TwinshipParam& p, int lambda, const std::vector<std::size_t>& dseq, const Coloring& c, int L,
                             std::optional<Blueprint> blueprint = std::nullopt, const BlockOptions& opt = {}) {
    require(validate_param(p).holds(), ErrorKind::InvalidInput, "parameter does not validate");
    require(lambda >= 1, ErrorKind::InvalidInput, "lambda must be positive");
    require(c.lambda == lambda && c.total(), ErrorKind::InvalidInput, "coloring is not total on pairs of lambda");
    require(dseq.size() == static_cast<std::size_t>(lambda), ErrorKind::InvalidDSequence, "D-sequence length differs from lambda");
    std::vector<char> hit(p.B.size(), 0);
    for (auto d : dseq) {
        require(d < p.B.size(), ErrorKind::InvalidDSequence, "D-sequence entry outside B");
        hit[d] = 1;
    }
    for (std::size_t d = 0; d < p.B.size(); ++d)
        require(hit[d], ErrorKind::InvalidDSequence, "D-sequence never hits " + format_set(p.T, p.B[d]));

    TwinAssembly a;
    a.p = p;
    a.lambda = lambda;
    a.dseq = dseq;
    a.c = c;
    a.L = L;
    a.options = opt;
    a.blueprint = blueprint ? *blueprint : identity_blueprint({"<", "R"});

    std::map<std::size_t, Block> cache;
    std::size_t total = 0;
    for (auto d : dseq) {
        if (!cache.count(d)) cache.emplace(d, build_block(p, d, L, opt));
        a.offset.push_back(total);
        a.block_size.push_back(cache.at(d).J.size());
        total += cache.at(d).J.size();
    }
    a.J = OrgStructure(total, p.T.size());
    a.J.names.resize(total);
    std::vector<int> ord;
    for (int alpha = 0; alpha < lambda; ++alpha) {
        const Block& b = cache.at(dseq[alpha]);
        const int off = static_cast<int>(a.offset[alpha]);
        for (int x : b.J.order) ord.push_back(off + x);
        for (std::size_t x = 0; x < b.J.size(); ++x) {
            a.block_of.push_back(alpha);
            a.J.names[off + x] = std::to_string(alpha) + ":" + b.J.names[x];
            if (b.J.frontier.test(x)) a.J.frontier.set(off + x);
        }
        for (std::size_t e = 0; e < p.T.size(); ++e)
            for (auto [x, y] : b.J.maps.pos[e].pairs()) a.J.maps.set(static_cast<int>(e), off + x, off + y);
    }
    a.J.set_order(ord);

    a.X = NodeSet(total);
    for (int alpha = 0; alpha < lambda; ++alpha) a.X.set(a.offset[alpha]);
    for (int al = 0; al < lambda; ++al)
        for (int be = al + 1; be < lambda; ++be)
            if (c(al, be) == 1)
                for (auto [x, y] : common_translates(a.J, a.seed(al), a.seed(be))) a.J.add_edge(x, y);

    a.X1 = parity_translates(a.J, a.X, 1);
    a.X2 = parity_translates(a.J, a.X, 0);
    realize_twins(a);
    return a;
}

/// Index of the first D with Omega_s = Omega_D, if any.
inline std::optional<std::size_t> omega_class(const TwinAssembly& a, int s) {
    auto o = omega_s(a.J, s);
    for (std::size_t d = 0; d < a.p.B.size(); ++d)
        if (o.equals_omega_of(a.p.B[d])) return d;
    return std::nullopt;
}

inline ClauseReport verify_hypotheses(const TwinAssembly& a) {
    ClauseReport rep;
    rep.subject = "assembly hypotheses (lambda = " + std::to_string(a.lambda) + ", |J| = " + std::to_string(a.J.size()) + ")";
    const OrgStructure& j = a.J;
    rep.append(check_K2(j, a.p), "(a) ");
    auto xs = members(a.X);

    {
        auto ec = e_closure(j);
        std::vector<int> hits(ec.classes.size(), 0);
        for (int x : xs) ++hits[ec.class_of[x]];
        std::string bad;
        for (std::size_t k = 0; k < hits.size() && bad.empty(); ++k)
            if (hits[k] != 1) bad = "X meets the class of " + j.name(ec.classes[k].front()) + " " + std::to_string(hits[k]) + " times";
        rep.add("(c)", bad.empty(), bad);
    }
    {
        std::string bad;
        for (std::size_t u = 0; u < xs.size() && bad.empty(); ++u)
            for (std::size_t v = u + 1; v < xs.size() && bad.empty(); ++v) {
                int x = xs[u], y = xs[v];
                if (j.adj[x][y] != j.adj[y][x]) bad = "edge between " + j.name(x) + " and " + j.name(y) + " is not symmetric";
                int al = a.block_of[x], be = a.block_of[y];
                if (al == be || !bad.empty()) continue;
                if (j.edge(x, y) != (a.c(al, be) == 1)) bad = "edge between " + j.name(x) + " and " + j.name(y) + " disagrees with the coloring";
            }
        rep.add("(d)", bad.empty(), bad);
        if (xs.size() >= 2) {
            std::vector<int> by_order(xs);
            std::sort(by_order.begin(), by_order.end(), [&](int x, int y) { return j.less(x, y); });
            TupleFamily fam;
            for (int x : by_order) fam.push_back({x});
            auto ent = graph_entangled(ordered_graph(j), fam);
            rep.info("(d) entangled", ent.holds ? "eps = 1 patterns all realized" : "eps = 1 pattern missing (expected at finite lambda)");
        }
    }
    {
        std::string bad;
        std::vector<int> count(a.p.B.size(), 0);
        for (int x : xs) {
            auto d = omega_class(a, x);
            if (!d) {
                if (bad.empty()) bad = "Omega_" + j.name(x) + " matches no Omega_D";
                continue;
            }
            ++count[*d];
        }
        for (std::size_t d = 0; d < count.size() && bad.empty(); ++d)
            if (!count[d]) bad = "Y_D^0 is empty for D = " + format_set(a.p.T, a.p.B[d]);
        rep.add("(f)", bad.empty(), bad);
        if (a.lambda == 1) rep.info("(f) degenerate", "lambda = 1, every Y_D^0 has size at most 1");
    }
    {
        std::set<std::pair<int, int>> want;
        const std::size_t bound = a.options.letters == LetterMode::EachNode ? static_cast<std::size_t>(a.L) : static_cast<std::size_t>(2 * a.L);
        auto letters = all_letters(j.nodes());
        for (int s : xs)
            for (int t : xs) {
                if (s == t || !j.edge(s, t)) continue;
                for_each_word(letters, bound, true, [&](const Word& o) {
                    auto fs = eval_word(j.maps, o, s);
                    auto ft = eval_word(j.maps, o, t);
                    if (fs && ft) want.insert({*fs, *ft});
                });
            }
        std::string bad;
        for (std::size_t x = 0; x < j.size() && bad.empty(); ++x)
            for (std::size_t y = 0; y < j.size() && bad.empty(); ++y) {
                bool have = j.adj[x][y] != 0;
                bool expect = want.count({static_cast<int>(x), static_cast<int>(y)}) > 0;
                if (have != expect)
                    bad = (have ? "extra edge " : "missing edge ") + j.name(static_cast<int>(x)) + " - " + j.name(static_cast<int>(y));
            }
        rep.add("(h)", bad.empty(), bad);
    }
    {
        std::string bad;
        std::vector<NodeSet> reach;
        for (int s : xs) reach.push_back(reachable_from(j, s));
        for (std::size_t u = 0; u < xs.size() && bad.empty(); ++u)
            for (std::size_t v = 0; v < xs.size() && bad.empty(); ++v) {
                if (u == v) continue;
                bool lt = j.less(xs[u], xs[v]);
                for (int x : members(reach[u])) {
                    for (int y : members(reach[v]))
                        if (x != y && j.less(x, y) != lt) {
                            bad = j.name(x) + " and " + j.name(y) + " are ordered against their seeds";
                            break;
                        }
                    if (!bad.empty()) break;
                }
            }
        rep.add("(i)", bad.empty(), bad);
    }
    {
        std::string bad;
        std::vector<std::optional<std::size_t>> cls;
        for (int x : xs) cls.push_back(omega_class(a, x));
        for (std::size_t u = 0; u < xs.size() && bad.empty(); ++u)
            for (std::size_t v = u + 1; v < xs.size() && bad.empty(); ++v) {
                if (!cls[u] || cls[u] != cls[v]) continue;
                auto pairs = common_translates(j, xs[u], xs[v]);
                std::map<int, int> fwd;
                for (auto [x, y] : pairs) {
                    auto [it, fresh] = fwd.emplace(x, y);
                    if (!fresh && it->second != y) bad = "two words agree at " + j.name(xs[u]) + " but not at " + j.name(xs[v]);
                }
                for (auto [x1, y1] : pairs) {
                    for (auto [x2, y2] : pairs)
                        if (x1 != x2 && j.less(x1, x2) != j.less(y1, y2)) {
                            bad = "translates of " + j.name(xs[u]) + " and " + j.name(xs[v]) + " are ordered differently (" + j.name(x1) + ", " + j.name(x2) + ")";
                            break;
                        }
                    if (!bad.empty()) break;
                }
            }
        rep.add("(j)", bad.empty(), bad);
    }
    return rep;
}

/// F_G carries X1 into X2 and is a (<, R)-isomorphism there off the frontier.
inline ClauseReport verify_solution_isomorphism(const TwinAssembly& a, const NodeSet& g) {
    require(g.size() == a.p.T.size(), ErrorKind::InvalidInput, "G is not a subset of T");
    require(solves(a.p, g), ErrorKind::NotASolution, format_set(a.p.T, g) + " does not solve the parameter");
    const OrgStructure& j = a.J;
    auto gm = generic_map(j, a.p, g);
    ClauseReport rep;
    rep.subject = "solution isomorphism for G = " + format_set(a.p.T, g);
    rep.append(gm.report, "F_G ");
    if (!gm.map) {
        rep.skip("(i)", "F_G inconsistent");
        rep.skip("(ii)", "F_G inconsistent");
        rep.skip("(iii)", "F_G inconsistent");
        return rep;
    }
    const PartialMap& f = *gm.map;
    {
        std::string bad;
        auto pairs = f.pairs();
        for (auto [x, fx] : pairs) {
            for (auto [y, fy] : pairs) {
                if (x == y) continue;
                if (j.less(x, y) != j.less(fx, fy)) bad = "order of " + j.name(x) + ", " + j.name(y) + " not preserved";
                else if (j.edge(x, y) != j.edge(fx, fy)) bad = "edge relation of " + j.name(x) + ", " + j.name(y) + " not preserved";
                if (!bad.empty()) break;
            }
            if (!bad.empty()) break;
        }
        rep.add("(i)", bad.empty(), bad);
    }
    std::vector<int> core;
    for (int x : members(a.X1))
        if (!j.frontier.test(static_cast<std::size_t>(x))) core.push_back(x);
    {
        std::string bad;
        std::map<int, int> seen;
        for (int x : core) {
            auto fx = f(x);
            if (!fx) bad = "F_G undefined at " + j.name(x);
            else if (!a.X2.test(static_cast<std::size_t>(*fx))) bad = "F_G(" + j.name(x) + ") = " + j.name(*fx) + " is outside X2";
            else if (auto [it, fresh] = seen.emplace(*fx, x); !fresh) bad = "F_G identifies " + j.name(it->second) + " and " + j.name(x);
            if (!bad.empty()) break;
        }
        rep.add("(ii)", bad.empty(), bad);
    }
    {
        std::string bad;
        for (int x : core) {
            for (int y : core) {
                auto fx = f(x), fy = f(y);
                if (x == y || !fx || !fy) continue;
                if (j.less(x, y) != j.less(*fx, *fy) || j.edge(x, y) != j.edge(*fx, *fy)) {
                    bad = "F_G restricted to X1 is not an isomorphism at " + j.name(x) + ", " + j.name(y);
                    break;
                }
            }
            if (!bad.empty()) break;
        }
        rep.add("(iii)", bad.empty(), bad);
    }
    return rep;
}

/// Isomorphism M1 -> M2 of relational structures over the same vocabulary, by backtracking.
inline std::optional<std::vector<int>> search_isomorphism(const RelStructure& m1, const RelStructure& m2, Budget budget = Budget()) {
    if (m1.n != m2.n || m1.names != m2.names) return std::nullopt;
    NodeSet all1(m1.n), all2(m2.n);
    all1.set();
    all2.set();
    std::optional<std::vector<int>> out;
    for_each_iso_extension(m1, m2, all1, all2, std::vector<int>(m1.n, -1), budget, [&](const std::vector<int>& f) {
        out = f;
        return true;
    });
    return out;
}

enum class Mutation {
    DropSeedEdge,
    AddInClassEdge,
    SwapInBlock,
    ReverseBlock,
    InterleaveBlocks,
    DeleteMapPair,
    AddCycle,
    RemoveSeed,
    DuplicateSeed,
    AsymmetricEdge,
};

inline const std::vector<Mutation>& all_mutations() {
    static const std::vector<Mutation> all{Mutation::DropSeedEdge, Mutation::AddInClassEdge, Mutation::SwapInBlock, Mutation::ReverseBlock,
                                           Mutation::InterleaveBlocks, Mutation::DeleteMapPair, Mutation::AddCycle, Mutation::RemoveSeed,
                                           Mutation::DuplicateSeed, Mutation::AsymmetricEdge};
    return all;
}

inline const char* to_string(Mutation m) {
    switch (m) {
    case Mutation::DropSeedEdge: return "drop-seed-edge";
    case Mutation::AddInClassEdge: return "add-in-class-edge";
    case Mutation::SwapInBlock: return "swap-in-block";
    case Mutation::ReverseBlock: return "reverse-block";
    case Mutation::InterleaveBlocks: return "interleave-blocks";
    case Mutation::DeleteMapPair: return "delete-map-pair";
    case Mutation::AddCycle: return "add-cycle";
    case Mutation::RemoveSeed: return "remove-seed";
    case Mutation::DuplicateSeed: return "duplicate-seed";
    case Mutation::AsymmetricEdge: return "asymmetric-edge";
    }
    return "?";
}

/// Applies one structural corruption; nullopt when the assembly offers nothing to corrupt.
/// Deterministic targets are used where a specific clause must be hit; `seed` picks among the rest.
inline std::optional<TwinAssembly> mutate(const TwinAssembly& a, Mutation m, std::uint64_t seed = 1) {
    TwinAssembly b = a;
    OrgStructure& j = b.J;
    std::mt19937_64 rng(seed);
    auto pick = [&](const std::vector<int>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    auto block_members = [&](int alpha) {
        std::vector<int> out;
        for (int x : j.order)
            if (b.block_of[x] == alpha) out.push_back(x);
        return out;
    };
    switch (m) {
    case Mutation::DropSeedEdge: {
        for (int al = 0; al < b.lambda; ++al)
            for (int be = al + 1; be < b.lambda; ++be)
                if (j.edge(b.seed(al), b.seed(be))) {
                    j.remove_edge(b.seed(al), b.seed(be));
                    return b;
                }
        return std::nullopt;
    }
    case Mutation::AddInClassEdge: {
        std::vector<int> cand;
        for (int x : block_members(0))
            if (x != b.seed(0) && !j.edge(b.seed(0), x)) cand.push_back(x);
        if (cand.empty()) return std::nullopt;
        j.add_edge(b.seed(0), pick(cand));
        return b;
    }
    case Mutation::SwapInBlock: {
        std::vector<int> odd;
        for (int x : block_members(0))
            if (b.X1.test(static_cast<std::size_t>(x))) odd.push_back(x);
        if (odd.size() < 2) return std::nullopt;
        auto ord = j.order;
        std::swap(ord[j.rank[odd[0]]], ord[j.rank[odd[1]]]);
        j.set_order(ord);
        return b;
    }
    case Mutation::ReverseBlock: {
        if (b.lambda < 2) return std::nullopt;
        int alpha = b.lambda - 1;
        auto ord = j.order;
        std::reverse(ord.begin() + static_cast<long>(b.offset[alpha]), ord.begin() + static_cast<long>(b.offset[alpha] + b.block_size[alpha]));
        j.set_order(ord);
        return b;
    }
    case Mutation::InterleaveBlocks: {
        if (b.lambda < 2) return std::nullopt;
        auto ord = j.order;
        std::size_t edge = b.offset[1];
        std::swap(ord[edge - 1], ord[edge]);
        j.set_order(ord);
        return b;
    }
    case Mutation::DeleteMapPair: {
        for (int x : block_members(0)) {
            if (!b.X1.test(static_cast<std::size_t>(x)) || j.frontier.test(static_cast<std::size_t>(x))) continue;
            for (std::size_t e = 0; e < j.nodes(); ++e)
                if (j.maps.pos[e].defined(x)) {
                    j.maps.erase(static_cast<int>(e), x);
                    return b;
                }
        }
        return std::nullopt;
    }
    case Mutation::AddCycle: {
        for (std::size_t e = 0; e < j.nodes(); ++e) {
            const PartialMap& f = j.maps.pos[e];
            if (f.empty()) continue;
            for (int start : block_members(0)) {
                if (f.in_range(start) || !f.defined(start)) continue;
                int end = start;
                while (auto nx = f(end)) end = *nx;
                j.maps.set(static_cast<int>(e), end, start);
                return b;
            }
        }
        return std::nullopt;
    }
    case Mutation::RemoveSeed:
        b.X.reset(b.offset[0]);
        return b;
    case Mutation::DuplicateSeed: {
        std::vector<int> cand;
        for (int x : block_members(0))
            if (x != b.seed(0)) cand.push_back(x);
        if (cand.empty()) return std::nullopt;
        b.X.set(static_cast<std::size_t>(pick(cand)));
        return b;
    }
    case Mutation::AsymmetricEdge: {
        if (b.lambda < 2) return std::nullopt;
        std::vector<int> cand;
        for (int x : block_members(1))
            if (!j.edge(b.seed(0), x)) cand.push_back(x);
        if (cand.empty()) return std::nullopt;
        j.adj[b.seed(0)][pick(cand)] = 1;
        return b;
    }
    }
    return std::nullopt;
}

} // namespace twinforge
