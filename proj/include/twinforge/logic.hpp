#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "poset.hpp"
#include "relational.hpp"

namespace twinforge {

struct IndiscernResult {
    bool holds = true;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> witness; ///< two index sequences with different types
};

/// Increasing index sequences of equal length (up to max_arity) give concatenations of equal qf-type.
inline IndiscernResult is_qf_indiscernible(const RelStructure& s, const std::vector<std::vector<int>>& tuples, std::size_t max_arity = 3) {
    IndiscernResult res;
    for (std::size_t m = 1; m <= max_arity && m <= tuples.size(); ++m) {
        std::optional<std::string> first_key;
        std::vector<int> first_idx;
        for_each_increasing(tuples.size(), m, [&](const std::vector<int>& idx) {
            if (!res.holds) return;
            std::vector<int> cat;
            for (int i : idx) cat.insert(cat.end(), tuples[i].begin(), tuples[i].end());
            auto key = qf_type(s, cat).key();
            if (!first_key) {
                first_key = key;
                first_idx = idx;
            } else if (key != *first_key) {
                res.holds = false;
                res.witness = std::make_pair(first_idx, idx);
            }
        });
        if (!res.holds) break;
    }
    return res;
}

/// Increasing chain of substructures M_0 <= M_1 <= ... of a finite structure.
struct Filtration {
    RelStructure M;
    std::vector<NodeSet> stages;

    void validate() const {
        for (std::size_t i = 0; i < stages.size(); ++i) {
            require(stages[i].size() == M.n, ErrorKind::InvalidInput, "stage is not a subset of the structure");
            if (i) require(stages[i - 1].is_subset_of(stages[i]), ErrorKind::InvalidInput, "stages are not increasing");
        }
    }
};

/// Vertex-count filtration: stage k holds the first k+1 elements.
inline Filtration prefix_filtration(const RelStructure& m) {
    Filtration f{m, {}};
    NodeSet s(m.n);
    for (std::size_t k = 0; k < m.n; ++k) {
        s.set(k);
        f.stages.push_back(s);
    }
    return f;
}

/// Calls fn(g) for each isomorphism M|ms -> N|ns extending f (images, -1 = undefined) until fn returns true.
template <class Fn>
bool for_each_iso_extension(const RelStructure& m, const RelStructure& n, const NodeSet& ms, const NodeSet& ns, std::vector<int> f, Budget& budget, Fn&& fn) {
    if (ms.count() != ns.count() || m.names != n.names) return false;
    std::vector<int> todo;
    std::vector<char> used(n.n, 0);
    for (int x : members(ms)) {
        if (f[x] < 0)
            todo.push_back(x);
        else
            used[f[x]] = 1;
    }
    auto consistent = [&](int x, int y) {
        if (!ns.test(static_cast<std::size_t>(y)) || used[y]) return false;
        for (std::size_t r = 0; r < m.names.size(); ++r) {
            if (m.rel[r][x][x] != n.rel[r][y][y]) return false;
            for (int z : members(ms)) {
                if (f[z] < 0) continue;
                if (m.rel[r][x][z] != n.rel[r][y][f[z]] || m.rel[r][z][x] != n.rel[r][f[z]][y]) return false;
            }
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == todo.size()) return fn(static_cast<const std::vector<int>&>(f));
        int x = todo[i];
        for (int y : members(ns)) {
            budget.tick();
            if (!consistent(x, y)) continue;
            f[x] = y;
            used[y] = 1;
            if (self(self, i + 1)) return true;
            f[x] = -1;
            used[y] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

enum class Player { Iso, Anti };

inline const char* to_string(Player p) { return p == Player::Iso ? "ISO" : "ANTI"; }

struct GameResult {
    Player winner = Player::Iso;
    std::optional<int> anti_first_move;                ///< a winning first stage when ANTI wins
    std::map<int, std::vector<int>> iso_first_replies; ///< winning reply to each first stage when ISO wins
    std::size_t states = 0;
};

/// ANTI picks a stage above all earlier ones, ISO answers with an isomorphism of that stage extending
/// the earlier ones. ISO wins after zeta moves or when ANTI runs out of stages.
inline GameResult solve_iso_game(const Filtration& mf, const Filtration& nf, std::size_t zeta, Budget budget = Budget()) {
    mf.validate();
    nf.validate();
    require(mf.stages.size() == nf.stages.size(), ErrorKind::InvalidInput, "filtrations have different lengths");
    const int len = static_cast<int>(mf.stages.size());
    std::map<std::tuple<std::size_t, int, std::vector<int>>, bool> memo;
    GameResult res;

    auto iso_wins = [&](auto&& self, std::size_t eps, int last, const std::vector<int>& f) -> bool {
        if (eps == zeta) return true;
        auto key = std::make_tuple(eps, last, f);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool win = true;
        for (int a = last + 1; a < len && win; ++a) {
            bool answered = for_each_iso_extension(mf.M, nf.M, mf.stages[a], nf.stages[a], f, budget,
                                                   [&](const std::vector<int>& g) { return self(self, eps + 1, a, g); });
            if (!answered) win = false;
        }
        memo[key] = win;
        return win;
    };

    std::vector<int> empty(mf.M.n, -1);
    bool iso = iso_wins(iso_wins, 0, -1, empty);
    res.winner = iso ? Player::Iso : Player::Anti;
    if (zeta > 0) {
        for (int a = 0; a < len; ++a) {
            std::optional<std::vector<int>> reply;
            for_each_iso_extension(mf.M, nf.M, mf.stages[a], nf.stages[a], empty, budget, [&](const std::vector<int>& g) {
                if (iso_wins(iso_wins, 1, a, g)) {
                    reply = g;
                    return true;
                }
                return false;
            });
            if (!reply && !iso && !res.anti_first_move) res.anti_first_move = a;
            if (reply && iso) res.iso_first_replies[a] = *reply;
        }
    }
    res.states = memo.size();
    return res;
}

/// Clocked variant: before each stage ANTI also advances the clock to a node of the next level above
/// the previous one. A player without a legal move loses.
inline GameResult solve_tree_clock_game(const Filtration& mf, const Filtration& nf, const FinPoset& clock, Budget budget = Budget()) {
    mf.validate();
    nf.validate();
    require(mf.stages.size() == nf.stages.size(), ErrorKind::InvalidInput, "filtrations have different lengths");
    require(clock.is_tree_like(), ErrorKind::InvalidInput, "clock must be a tree");
    const int len = static_cast<int>(mf.stages.size());
    std::map<std::tuple<int, int, std::vector<int>>, bool> memo;

    auto next_nodes = [&](int t) {
        std::vector<int> out;
        for (std::size_t v = 0; v < clock.size(); ++v) {
            int u = static_cast<int>(v);
            if (t < 0 ? clock.level(u) == 0 : (clock.lt(t, u) && clock.level(u) == clock.level(t) + 1)) out.push_back(u);
        }
        return out;
    };

    auto iso_wins = [&](auto&& self, int t, int last, const std::vector<int>& f) -> bool {
        auto key = std::make_tuple(t, last, f);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool win = true;
        for (int u : next_nodes(t)) {
            for (int a = last + 1; a < len && win; ++a) {
                bool answered = for_each_iso_extension(mf.M, nf.M, mf.stages[a], nf.stages[a], f, budget,
                                                       [&](const std::vector<int>& g) { return self(self, u, a, g); });
                if (!answered) win = false;
            }
            if (!win) break;
        }
        memo[key] = win;
        return win;
    };
    GameResult res;
    res.winner = iso_wins(iso_wins, -1, -1, std::vector<int>(mf.M.n, -1)) ? Player::Iso : Player::Anti;
    res.states = memo.size();
    return res;
}

struct FarResult {
    bool far = true;
    std::vector<int> subset;             ///< U on which the assignment preserves phi
    std::vector<std::vector<int>> image; ///< b_alpha for alpha in U
};

/// M1 is far from M2 via the witness: every U with |U| >= u_min and every b: U -> M2^k flip phi
/// on some increasing n-sequence from U. Preservation is inherited by subsets, so |U| = u_min suffices.
inline FarResult is_far(const RelStructure& m1, const RelStructure& m2, const Formula& phi, std::size_t n,
                        const std::vector<std::vector<int>>& witness, std::optional<std::size_t> u_min = std::nullopt, Budget budget = Budget()) {
    const std::size_t lam = witness.size();
    const std::size_t k = lam ? witness.front().size() : 1;
    const std::size_t u = u_min.value_or(lam);
    require(phi.max_var() < static_cast<int>(n * k), ErrorKind::InvalidInput, "formula uses variables beyond n k-tuples");
    FarResult res;
    if (u > lam) return res; // no admissible U
    std::vector<std::vector<int>> cands;
    for_each_tuple(m2.n, k, [&](const std::vector<int>& t) { cands.push_back(t); });

    for_each_increasing(lam, u, [&](const std::vector<int>& subset) {
        if (!res.far) return;
        std::vector<std::size_t> pick;
        auto preserved = [&]() {
            // every increasing n-sequence ending at the newest index
            const std::size_t last = pick.size() - 1;
            if (n == 0) return true;
            bool ok = true;
            for_each_increasing(last, n - 1, [&](const std::vector<int>& head) {
                if (!ok) return;
                std::vector<int> va, vb;
                for (int h : head) {
                    va.insert(va.end(), witness[subset[h]].begin(), witness[subset[h]].end());
                    vb.insert(vb.end(), cands[pick[h]].begin(), cands[pick[h]].end());
                }
                va.insert(va.end(), witness[subset[last]].begin(), witness[subset[last]].end());
                vb.insert(vb.end(), cands[pick[last]].begin(), cands[pick[last]].end());
                if (phi.eval(m1, va) != phi.eval(m2, vb)) ok = false;
            });
            return ok;
        };
        auto rec = [&](auto&& self) -> bool {
            if (pick.size() == subset.size()) return true;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                budget.tick();
                pick.push_back(c);
                if (preserved() && self(self)) return true;
                pick.pop_back();
            }
            return false;
        };
        if (rec(rec)) {
            res.far = false;
            res.subset = subset;
            for (auto c : pick) res.image.push_back(cands[c]);
        }
    });
    return res;
}

struct SigmaFarResult {
    bool far = true;
    std::vector<std::vector<int>> subsets;                 ///< U_i per family
    std::map<std::vector<int>, std::vector<int>> function; ///< preserving map on selected tuples
};

/// No choice of U_i (|U_i| >= u_min) admits f from the selected entries into M2^k preserving phi on
/// every n-sequence of selected entries.
inline SigmaFarResult is_sigma_far(const RelStructure& m1, const RelStructure& m2, const Formula& phi, std::size_t n,
                                   const std::vector<std::vector<std::vector<int>>>& families, std::optional<std::size_t> u_min = std::nullopt,
                                   Budget budget = Budget()) {
    SigmaFarResult res;
    const std::size_t lam = families.empty() ? 0 : families.front().size();
    for (const auto& fam : families) require(fam.size() == lam, ErrorKind::InvalidInput, "witness families differ in length");
    const std::size_t u = u_min.value_or(lam);
    std::size_t k = 1;
    if (!families.empty() && !families.front().empty()) k = families.front().front().size();
    require(phi.max_var() < static_cast<int>(n * k), ErrorKind::InvalidInput, "formula uses variables beyond n k-tuples");
    if (!families.empty() && u > lam) return res;
    std::vector<std::vector<int>> cands;
    for_each_tuple(m2.n, k, [&](const std::vector<int>& t) { cands.push_back(t); });

    std::vector<std::vector<int>> choice(families.size());
    auto try_choice = [&]() -> bool {
        std::set<std::vector<int>> sel;
        for (std::size_t i = 0; i < families.size(); ++i)
            for (int a : choice[i]) sel.insert(families[i][a]);
        std::vector<std::vector<int>> elems(sel.begin(), sel.end());
        std::vector<std::size_t> pick;
        auto preserved = [&]() {
            const std::size_t last = pick.size() - 1;
            bool ok = true;
            // all n-sequences over the assigned prefix that use the newest entry
            for_each_tuple(pick.size(), n, [&](const std::vector<int>& seq) {
                if (!ok) return;
                if (std::find(seq.begin(), seq.end(), static_cast<int>(last)) == seq.end()) return;
                std::vector<int> va, vb;
                for (int h : seq) {
                    va.insert(va.end(), elems[h].begin(), elems[h].end());
                    vb.insert(vb.end(), cands[pick[h]].begin(), cands[pick[h]].end());
                }
                if (phi.eval(m1, va) != phi.eval(m2, vb)) ok = false;
            });
            return ok;
        };
        auto rec = [&](auto&& self) -> bool {
            if (pick.size() == elems.size()) return true;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                budget.tick();
                pick.push_back(c);
                if (preserved() && self(self)) return true;
                pick.pop_back();
            }
            return false;
        };
        if (!rec(rec)) return false;
        res.far = false;
        res.subsets = choice;
        for (std::size_t i = 0; i < elems.size(); ++i) res.function[elems[i]] = cands[pick[i]];
        return true;
    };
    std::vector<std::vector<std::vector<int>>> options(families.size());
    for (auto& o : options) for_each_increasing(lam, u, [&](const std::vector<int>& s) { o.push_back(s); });
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == families.size()) return try_choice();
        for (const auto& s : options[i]) {
            choice[i] = s;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    rec(rec, 0);
    return res;
}

} // namespace twinforge
