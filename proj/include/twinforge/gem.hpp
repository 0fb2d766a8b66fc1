#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "relational.hpp"

namespace twinforge {

struct FunctionSymbol {
    std::string name;
    std::size_t arity = 1;
};

/// Generators plus function symbols, terms up to a depth bound.
struct FreeTermAlgebra {
    std::vector<std::string> generators;
    std::vector<FunctionSymbol> symbols;
    std::size_t depth = 1;
};

struct Term {
    int symbol = -1;        ///< -1 for a generator
    int generator = 0;
    std::vector<int> args;  ///< indices into the enumerated term list
    std::size_t depth = 0;
};

inline std::string term_string(const FreeTermAlgebra& alg, const std::vector<Term>& terms, int i) {
    const Term& t = terms[i];
    if (t.symbol < 0) return alg.generators[t.generator];
    std::string out = alg.symbols[t.symbol].name + "(";
    for (std::size_t k = 0; k < t.args.size(); ++k) out += (k ? "," : "") + term_string(alg, terms, t.args[k]);
    return out + ")";
}

/// Terms listed by depth; within a depth by symbol, then argument indices lexicographically.
inline std::vector<Term> enumerate_terms(const FreeTermAlgebra& alg, std::size_t cap = 100000) {
    std::vector<Term> terms;
    for (std::size_t g = 0; g < alg.generators.size(); ++g) terms.push_back({-1, static_cast<int>(g), {}, 0});
    for (std::size_t d = 1; d <= alg.depth; ++d) {
        const std::size_t known = terms.size();
        for (std::size_t f = 0; f < alg.symbols.size(); ++f) {
            const std::size_t ar = alg.symbols[f].arity;
            for_each_tuple(known, ar, [&](const std::vector<int>& args) {
                std::size_t deepest = 0;
                for (int a : args) deepest = std::max(deepest, terms[a].depth);
                if (ar > 0 && deepest + 1 != d) return;
                if (ar == 0 && d != 1) return;
                require(terms.size() < cap, ErrorKind::BudgetExceeded, "term enumeration exceeds cap");
                terms.push_back({static_cast<int>(f), 0, args, d});
            });
        }
    }
    return terms;
}

/// Finite table from index pair types to output pair types; k_Phi = 1.
struct Blueprint {
    std::map<std::string, std::string> table;

    std::optional<QfType> lookup(const QfType& t) const {
        auto it = table.find(t.key());
        if (it == table.end()) return std::nullopt;
        return QfType::parse(it->second);
    }
};

/// Every pair type over the given relation names mapped to itself.
inline Blueprint identity_blueprint(const std::vector<std::string>& names) {
    Blueprint bp;
    const std::size_t bits = 4 * names.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
        QfType t;
        t.arity = 2;
        t.names = names;
        t.eq = {0};
        for (std::size_t r = 0; r < names.size(); ++r) {
            std::vector<char> v;
            for (std::size_t b = 0; b < 4; ++b) v.push_back((mask >> (4 * r + b)) & 1);
            t.rel.push_back(v);
        }
        bp.table[t.key()] = t.key();
    }
    return bp;
}

struct GemFragment {
    RelStructure index;
    RelStructure model; ///< skeleton a_s = s
};

/// Atomic facts on skeleton pairs read off Phi(tp(s,t)). Conflicting or missing demands raise
/// BlueprintInconsistent.
inline GemFragment gem_realize(const RelStructure& index, const Blueprint& bp) {
    GemFragment g;
    g.index = index;
    std::vector<std::string> out_names;
    bool have_names = false;
    std::vector<std::vector<std::vector<int>>> demand; // -1 unknown
    for (std::size_t s = 0; s < index.n; ++s)
        for (std::size_t t = 0; t < index.n; ++t) {
            if (s == t) continue;
            QfType in = qf_type(index, {static_cast<int>(s), static_cast<int>(t)});
            auto out = bp.lookup(in);
            require(out.has_value(), ErrorKind::BlueprintInconsistent, "blueprint undefined on index type " + in.key());
            require(out->arity == 2, ErrorKind::BlueprintInconsistent, "output type must have arity 2");
            require(!out->equal(0, 1), ErrorKind::BlueprintInconsistent, "output type identifies distinct skeleton points");
            if (!have_names) {
                out_names = out->names;
                have_names = true;
                demand.assign(out_names.size(), std::vector<std::vector<int>>(index.n, std::vector<int>(index.n, -1)));
            }
            require(out->names == out_names, ErrorKind::BlueprintInconsistent, "output types use different vocabularies");
            const int pos[2] = {static_cast<int>(s), static_cast<int>(t)};
            for (std::size_t r = 0; r < out_names.size(); ++r)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        int& cell = demand[r][pos[i]][pos[j]];
                        int want = out->holds(r, i, j) ? 1 : 0;
                        if (cell >= 0 && cell != want)
                            throw Error(ErrorKind::BlueprintInconsistent,
                                        "conflicting demands on " + out_names[r] + "(" + std::to_string(pos[i]) + "," + std::to_string(pos[j]) + ")");
                        cell = want;
                    }
        }
    g.model = RelStructure(index.n, out_names);
    for (std::size_t r = 0; r < out_names.size(); ++r)
        for (std::size_t a = 0; a < index.n; ++a)
            for (std::size_t b = 0; b < index.n; ++b) g.model.rel[r][a][b] = demand.empty() ? 0 : demand[r][a][b] == 1;
    return g;
}

struct RepresentResult {
    bool holds = true;
    bool vacuous = false;
    std::optional<std::pair<std::size_t, std::vector<int>>> counterexample; ///< sample index, tuple
};

/// M |= phi[a_t0, a_t1] iff (t0, t1) in R^I on every sample.
inline RepresentResult check_represents(const Blueprint& bp, const Formula& phi, const std::string& index_rel, const std::vector<RelStructure>& samples) {
    RepresentResult res;
    res.vacuous = samples.empty();
    require(phi.max_var() <= 1, ErrorKind::InvalidInput, "formula must use x0 and x1 only");
    for (std::size_t k = 0; k < samples.size() && res.holds; ++k) {
        auto g = gem_realize(samples[k], bp);
        for (std::size_t a = 0; a < samples[k].n && res.holds; ++a)
            for (std::size_t b = 0; b < samples[k].n; ++b) {
                std::vector<int> tup{static_cast<int>(a), static_cast<int>(b)};
                if (phi.eval(g.model, tup) != samples[k].holds(index_rel, tup[0], tup[1])) {
                    res.holds = false;
                    res.counterexample = std::make_pair(k, tup);
                    break;
                }
            }
    }
    return res;
}

/// Pairwise distinct k-tuples a_0..a_{mu-1} with M |= phi[a_alpha, a_beta] iff alpha R beta, alpha < beta.
inline std::optional<std::vector<std::vector<int>>> independence_witness(const RelStructure& m, const Formula& phi, std::size_t k,
                                                                         const std::vector<std::vector<char>>& target, Budget budget = Budget()) {
    const std::size_t mu = target.size();
    require(phi.max_var() < static_cast<int>(2 * k), ErrorKind::InvalidInput, "formula uses variables beyond two k-tuples");
    std::vector<std::vector<int>> cands;
    for_each_tuple(m.n, k, [&](const std::vector<int>& t) { cands.push_back(t); });
    std::vector<std::size_t> pick;
    auto ok = [&](std::size_t a, std::size_t b) {
        std::vector<int> v = cands[pick[a]];
        v.insert(v.end(), cands[pick[b]].begin(), cands[pick[b]].end());
        return phi.eval(m, v) == (target[a][b] != 0);
    };
    auto rec = [&](auto&& self) -> bool {
        if (pick.size() == mu) return true;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            budget.tick();
            if (std::find(pick.begin(), pick.end(), c) != pick.end()) continue;
            pick.push_back(c);
            bool good = true;
            for (std::size_t a = 0; a + 1 < pick.size() && good; ++a) good = ok(a, pick.size() - 1);
            if (good && self(self)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(rec)) return std::nullopt;
    std::vector<std::vector<int>> out;
    for (auto c : pick) out.push_back(cands[c]);
    return out;
}

/// Pairwise distinct k-tuples a_0..a_{n-1} with M |= phi[a_alpha, a_beta] iff alpha < beta, for alpha != beta.
inline std::optional<std::vector<std::vector<int>>> order_witness(const RelStructure& m, const Formula& phi, std::size_t k, std::size_t n,
                                                                  Budget budget = Budget()) {
    require(phi.max_var() < static_cast<int>(2 * k), ErrorKind::InvalidInput, "formula uses variables beyond two k-tuples");
    std::vector<std::vector<int>> cands;
    for_each_tuple(m.n, k, [&](const std::vector<int>& t) { cands.push_back(t); });
    std::vector<std::size_t> pick;
    auto sat = [&](std::size_t a, std::size_t b) {
        std::vector<int> v = cands[pick[a]];
        v.insert(v.end(), cands[pick[b]].begin(), cands[pick[b]].end());
        return phi.eval(m, v);
    };
    auto rec = [&](auto&& self) -> bool {
        if (pick.size() == n) return true;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            budget.tick();
            if (std::find(pick.begin(), pick.end(), c) != pick.end()) continue;
            pick.push_back(c);
            std::size_t last = pick.size() - 1;
            bool good = true;
            for (std::size_t a = 0; a < last && good; ++a) good = sat(a, last) && !sat(last, a);
            if (good && self(self)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(rec)) return std::nullopt;
    std::vector<std::vector<int>> out;
    for (auto c : pick) out.push_back(cands[c]);
    return out;
}

} // namespace twinforge
