#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "word.hpp"

namespace twinforge {

/// Degree first, then lexicographic on generator indices.
struct MonomialLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
};

/// Magnus expansion x -> 1 + X, x^-1 -> 1 - X + X^2 - ..., truncated at `degree`,
/// with the constant term dropped. Nonzero terms only.
using MagnusKey = std::vector<std::pair<std::vector<int>, long long>>;

inline MagnusKey magnus_key(const Word& w, std::size_t degree) {
    std::map<std::vector<int>, long long, MonomialLess> acc{{{}, 1}};
    for (const auto& l : w) {
        std::map<std::vector<int>, long long, MonomialLess> next;
        for (const auto& [mono, c] : acc) {
            next[mono] += c;
            std::vector<int> m = mono;
            long long coef = c;
            for (std::size_t k = 1; mono.size() + k <= degree; ++k) {
                m.push_back(l.node);
                coef = l.sign > 0 ? c : (k % 2 ? -c : c);
                next[m] += coef;
                if (l.sign > 0) break;
            }
        }
        acc.clear();
        for (auto& [m, c] : next)
            if (c != 0) acc.emplace(m, c);
    }
    MagnusKey key;
    for (auto& [m, c] : acc)
        if (!m.empty()) key.emplace_back(m, c);
    return key;
}

/// Bi-invariant order of the free group read off the Magnus expansions; -1, 0, +1.
/// Keys must be truncated at a degree at least the length of u^-1 v.
inline int magnus_compare(const MagnusKey& a, const MagnusKey& b) {
    MonomialLess less;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && less(a[i].first, b[j].first))) return a[i].second < 0 ? -1 : 1;
        if (i == a.size() || less(b[j].first, a[i].first)) return b[j].second > 0 ? -1 : 1;
        if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

/// Free reduction.
inline Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().node == l.node && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

} // namespace twinforge
