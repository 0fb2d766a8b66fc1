#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace twinforge {

/// Disjoint sets over [0, n) with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n = 0) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }
    std::size_t size() const { return parent_.size(); }

    /// Classes listed by least member, members ascending.
    std::vector<std::vector<int>> classes() {
        std::vector<int> slot(parent_.size(), -1);
        std::vector<std::vector<int>> out;
        for (std::size_t a = 0; a < parent_.size(); ++a) {
            int r = find(static_cast<int>(a));
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(out.size());
                out.emplace_back();
            }
            out[slot[r]].push_back(static_cast<int>(a));
        }
        return out;
    }

private:
    std::vector<int> parent_;
    std::vector<std::size_t> size_;
};

} // namespace twinforge
