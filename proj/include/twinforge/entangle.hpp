#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "org.hpp"
#include "relational.hpp"
#include "twinship.hpp"
#include "word.hpp"

namespace twinforge {

/// lambda' tuples of equal length eps; each without repetition, supports pairwise disjoint.
using TupleFamily = std::vector<std::vector<int>>;

inline void validate_family(std::size_t universe, const TupleFamily& fam) {
    std::set<int> seen;
    for (std::size_t a = 0; a < fam.size(); ++a) {
        require(fam[a].size() == fam.front().size(), ErrorKind::FamilyInvalid, "tuples differ in length");
        std::set<int> own;
        for (int x : fam[a]) {
            require(x >= 0 && static_cast<std::size_t>(x) < universe, ErrorKind::FamilyInvalid, "tuple entry out of range");
            require(own.insert(x).second, ErrorKind::FamilyInvalid, "tuple " + std::to_string(a) + " repeats an element");
            require(seen.insert(x).second, ErrorKind::FamilyInvalid, "tuple " + std::to_string(a) + " meets an earlier tuple");
        }
    }
}

/// Pattern X as a bitmask over eps x eps, bit zeta*eps + xi.
using Pattern = std::uint32_t;

inline std::vector<std::pair<int, int>> pattern_pairs(Pattern x, std::size_t eps) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t b = 0; b < eps * eps; ++b)
        if ((x >> b) & 1U) out.emplace_back(static_cast<int>(b / eps), static_cast<int>(b % eps));
    return out;
}

struct EntangleResult {
    bool holds = true;
    std::optional<Pattern> failing;
    std::size_t admissible = 0; ///< patterns that had to be realized
};

inline std::set<Pattern> realized_patterns(const RelStructure& g, std::size_t rel, const TupleFamily& fam) {
    std::set<Pattern> out;
    const std::size_t eps = fam.empty() ? 0 : fam.front().size();
    for (std::size_t a = 0; a < fam.size(); ++a)
        for (std::size_t b = a + 1; b < fam.size(); ++b) {
            Pattern x = 0;
            for (std::size_t z = 0; z < eps; ++z)
                for (std::size_t xi = 0; xi < eps; ++xi)
                    if (g.holds(rel, fam[a][z], fam[b][xi])) x |= Pattern{1} << (z * eps + xi);
            out.insert(x);
        }
    return out;
}

/// Every X over eps x eps is realized by some alpha < beta.
inline EntangleResult graph_entangled(const RelStructure& g, const TupleFamily& fam, const std::string& rel = "R") {
    validate_family(g.n, fam);
    const std::size_t eps = fam.empty() ? 0 : fam.front().size();
    require(eps <= 5, ErrorKind::InvalidInput, "tuple length above 5 is out of scope");
    auto r = g.index(rel);
    require(r.has_value(), ErrorKind::InvalidInput, "structure has no relation " + rel);
    auto seen = realized_patterns(g, *r, fam);
    EntangleResult res;
    for (Pattern x = 0; x < (Pattern{1} << (eps * eps)); ++x) {
        ++res.admissible;
        if (!seen.count(x)) {
            res.holds = false;
            res.failing = x;
            break;
        }
    }
    return res;
}

/// Organized variant: the family must be F_o-uniform and order-uniform; only X closed under the
/// proviso (links from compatible words) must be realized. Words range over all of Omega up to word_bound.
inline EntangleResult org_entangled(const OrgStructure& j, const TupleFamily& fam, const TwinshipParam& p, std::size_t word_bound = 3) {
    validate_family(j.size(), fam);
    require(j.nodes() == p.T.size(), ErrorKind::InvalidInput, "maps are not indexed by the nodes of T");
    const std::size_t eps = fam.empty() ? 0 : fam.front().size();
    require(eps <= 5, ErrorKind::InvalidInput, "tuple length above 5 is out of scope");

    // (A)(e): order pattern between alpha < beta is the same for all pairs.
    std::optional<Pattern> order_pat;
    for (std::size_t a = 0; a < fam.size(); ++a)
        for (std::size_t b = a + 1; b < fam.size(); ++b) {
            Pattern x = 0;
            for (std::size_t z = 0; z < eps; ++z)
                for (std::size_t xi = 0; xi < eps; ++xi)
                    if (j.less(fam[a][z], fam[b][xi])) x |= Pattern{1} << (z * eps + xi);
            if (!order_pat) order_pat = x;
            require(*order_pat == x, ErrorKind::FamilyViolatesUniformity, "(A)(e) order uniformity fails between tuples " + std::to_string(a) + " and " + std::to_string(b));
        }

    // (A)(d): F_o-pattern inside each tuple is independent of the tuple.
    std::vector<std::pair<Word, Pattern>> pats;
    for_each_word(all_letters(j.nodes()), word_bound, false, [&](const Word& o) {
        std::optional<Pattern> common;
        for (std::size_t g = 0; g < fam.size(); ++g) {
            Pattern x = 0;
            for (std::size_t z = 0; z < eps; ++z)
                for (std::size_t xi = 0; xi < eps; ++xi)
                    if (eval_word(j.maps, o, fam[g][z]) == fam[g][xi]) x |= Pattern{1} << (z * eps + xi);
            if (!common) common = x;
            require(*common == x, ErrorKind::FamilyViolatesUniformity, "(A)(d) F_o uniformity fails for o = " + format_word(o, &p.T));
        }
        if (common && *common) pats.emplace_back(o, *common);
    });

    // Proviso links: (zeta1, zeta2) ~ (xi1, xi2) whenever o1, o2 are compatible.
    std::set<std::pair<int, int>> links;
    for (const auto& [o1, x1] : pats)
        for (const auto& [o2, x2] : pats) {
            if (!word_compatible(p.T, o1, o2)) continue;
            for (auto [z1, xi1] : pattern_pairs(x1, eps))
                for (auto [z2, xi2] : pattern_pairs(x2, eps)) {
                    int from = z1 * static_cast<int>(eps) + z2;
                    int to = xi1 * static_cast<int>(eps) + xi2;
                    if (from != to) links.emplace(from, to);
                }
        }

    auto r = ordered_graph(j);
    auto seen = realized_patterns(r, 1, fam);
    EntangleResult res;
    for (Pattern x = 0; x < (Pattern{1} << (eps * eps)); ++x) {
        bool admissible = std::all_of(links.begin(), links.end(), [&](const auto& l) { return ((x >> l.first) & 1U) == ((x >> l.second) & 1U); });
        if (!admissible) continue;
        ++res.admissible;
        if (!seen.count(x)) {
            res.holds = false;
            res.failing = x;
            break;
        }
    }
    return res;
}

/// Symmetric coloring of pairs of [lambda].
struct Coloring {
    int lambda = 0;
    std::vector<std::vector<int>> color;

    explicit Coloring(int lam = 0) : lambda(lam), color(static_cast<std::size_t>(lam), std::vector<int>(static_cast<std::size_t>(lam), -1)) {}

    void set(int a, int b, int c) {
        require(a != b && a >= 0 && b >= 0 && a < lambda && b < lambda, ErrorKind::InvalidInput, "coloring pair out of range");
        color[a][b] = color[b][a] = c;
    }
    int operator()(int a, int b) const { return color[a][b]; }
    bool total() const {
        for (int a = 0; a < lambda; ++a)
            for (int b = a + 1; b < lambda; ++b)
                if (color[a][b] < 0) return false;
        return true;
    }
    static Coloring constant(int lam, int c) {
        Coloring col(lam);
        for (int a = 0; a < lam; ++a)
            for (int b = a + 1; b < lam; ++b) col.set(a, b, c);
        return col;
    }
};

struct Pr0Result {
    bool holds = true;
    std::optional<std::vector<std::vector<int>>> family; ///< separated family with a missing pattern
    std::optional<std::vector<std::vector<int>>> missing; ///< h : n x n -> mu not realized
    std::size_t families = 0;
};

/// Every separated family of m increasing n-tuples realizes every h : n x n -> mu on some alpha < beta.
/// Separated: all of tuple alpha lies below all of tuple beta, so a family is an (m*n)-subset cut in blocks.
inline Pr0Result pr0_check(const Coloring& c, std::size_t n, std::size_t m, std::size_t mu, unsigned jobs = 1) {
    require(c.total(), ErrorKind::InvalidInput, "coloring is not total");
    require(n >= 1 && mu >= 1, ErrorKind::InvalidInput, "pr0 needs n >= 1 and mu >= 1");
    std::uint64_t patterns = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
        patterns *= mu;
        require(patterns <= (1ULL << 24), ErrorKind::InvalidInput, "mu^(n*n) too large");
    }
    const std::size_t lam = static_cast<std::size_t>(c.lambda);
    jobs = std::max(1U, jobs);

    auto worker = [&](unsigned part) {
        Pr0Result local;
        std::size_t idx = 0;
        std::vector<char> hit(patterns);
        for_each_increasing(lam, m * n, [&](const std::vector<int>& pts) {
            if (!local.holds) return;
            if (idx++ % jobs != part) return;
            ++local.families;
            std::fill(hit.begin(), hit.end(), 0);
            std::uint64_t count = 0;
            for (std::size_t a = 0; a < m && count < patterns; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    std::uint64_t code = 0;
                    bool valid = true;
                    for (std::size_t k = 0; k < n && valid; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            int col = c(pts[a * n + k], pts[b * n + l]);
                            if (col < 0 || static_cast<std::size_t>(col) >= mu) {
                                valid = false;
                                break;
                            }
                            code = code * mu + static_cast<std::uint64_t>(col);
                        }
                    if (valid && !hit[code]) {
                        hit[code] = 1;
                        ++count;
                    }
                }
            if (count == patterns) return;
            local.holds = false;
            std::vector<std::vector<int>> fam(m);
            for (std::size_t a = 0; a < m; ++a) fam[a].assign(pts.begin() + static_cast<long>(a * n), pts.begin() + static_cast<long>((a + 1) * n));
            local.family = fam;
            std::uint64_t code = 0;
            while (hit[code]) ++code;
            std::vector<std::vector<int>> h(n, std::vector<int>(n));
            for (std::size_t cell = n * n; cell-- > 0;) {
                h[cell / n][cell % n] = static_cast<int>(code % mu);
                code /= mu;
            }
            local.missing = h;
        });
        return local;
    };

    Pr0Result res;
    if (jobs == 1) return worker(0);
    std::vector<std::future<Pr0Result>> parts;
    for (unsigned t = 0; t < jobs; ++t) parts.push_back(std::async(std::launch::async, worker, t));
    for (auto& f : parts) {
        auto r = f.get();
        res.families += r.families;
        if (!r.holds && res.holds) {
            res.holds = false;
            res.family = r.family;
            res.missing = r.missing;
        }
    }
    return res;
}

struct TermShape {
    std::string name;   ///< "x" for the identity term
    std::size_t arity = 1;
    std::size_t depth = 0;
};

inline TermShape identity_shape() { return {"x", 1, 0}; }

struct TypePair {
    Formula p1, p2;
    std::size_t arity = 2;
};

/// (x0 < x1 and x0 R x1, x0 < x1 and not x0 R x1).
inline std::vector<TypePair> gamma_org() {
    return {{Formula::parse("(and (< x0 x1) (R x0 x1))"), Formula::parse("(and (< x0 x1) (not (R x0 x1)))"), 2}};
}

struct UnembedResult {
    bool holds = true;
    std::size_t maps_checked = 0;
    /// an F for which clause (B) fails: per s, (shape index, increasing tuple over J)
    std::optional<std::vector<std::pair<std::size_t, std::vector<int>>>> embedding;
};

/// For every F : I -> terms sigma_s(t_s) over J (sigma_s in Sigma, t_s increasing), some (p1, p2) in Gamma
/// has s1 |= p1, s2 |= p2 with equal sigma-sequences and equal qf-types of the concatenated t's in J.
inline UnembedResult unembeddable_oracle(const RelStructure& i, const RelStructure& j, const std::vector<TermShape>& sigma,
                                         const std::vector<TypePair>& gamma, std::size_t depth = 1, Budget budget = Budget()) {
    for (const auto& s : sigma) require(s.depth <= depth, ErrorKind::InvalidInput, "term shape " + s.name + " exceeds depth bound");
    for (const auto& g : gamma)
        require(g.p1.max_var() < static_cast<int>(g.arity) && g.p2.max_var() < static_cast<int>(g.arity), ErrorKind::InvalidInput, "type pair uses variables beyond its arity");
    std::vector<std::pair<std::size_t, std::vector<int>>> choices;
    for (std::size_t k = 0; k < sigma.size(); ++k)
        for_each_increasing(j.n, sigma[k].arity, [&](const std::vector<int>& t) { choices.emplace_back(k, t); });

    UnembedResult res;
    std::vector<std::size_t> f(i.n, 0);
    auto clause_b = [&]() {
        for (const auto& g : gamma) {
            std::set<std::pair<std::vector<std::size_t>, std::string>> left;
            std::vector<std::pair<std::vector<std::size_t>, std::string>> right;
            for_each_tuple(i.n, g.arity, [&](const std::vector<int>& s) {
                bool in1 = g.p1.eval(i, s), in2 = g.p2.eval(i, s);
                if (!in1 && !in2) return;
                std::vector<std::size_t> shapes;
                std::vector<int> cat;
                for (int x : s) {
                    shapes.push_back(choices[f[x]].first);
                    cat.insert(cat.end(), choices[f[x]].second.begin(), choices[f[x]].second.end());
                }
                auto sig = std::make_pair(shapes, qf_type(j, cat).key());
                if (in1) left.insert(sig);
                if (in2) right.push_back(sig);
            });
            for (const auto& sig : right)
                if (left.count(sig)) return true;
        }
        return false;
    };
    if (choices.empty()) return res; // no map F exists
    while (true) {
        budget.tick();
        ++res.maps_checked;
        if (!clause_b()) {
            res.holds = false;
            std::vector<std::pair<std::size_t, std::vector<int>>> emb;
            for (auto c : f) emb.push_back(choices[c]);
            res.embedding = emb;
            return res;
        }
        std::size_t k = 0;
        while (k < f.size() && ++f[k] == choices.size()) f[k++] = 0;
        if (k == f.size()) break;
    }
    return res;
}

} // namespace twinforge
