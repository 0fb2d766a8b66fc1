#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poset.hpp"

namespace twinforge {

struct Letter {
    int node = 0;
    int sign = 1; ///< +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Index 0 is the leftmost letter. Evaluation is right to left: the last letter applies first.
using Word = std::vector<Letter>;

inline Word inverse_word(const Word& o) {
    Word out(o.rbegin(), o.rend());
    for (auto& l : out) l.sign = -l.sign;
    return out;
}

inline std::string format_word(const Word& o, const FinPoset* t = nullptr) {
    std::string out = "<";
    for (std::size_t i = 0; i < o.size(); ++i) {
        if (i) out += ",";
        out += "(" + (t ? t->label(o[i].node) : std::to_string(o[i].node)) + (o[i].sign > 0 ? ",+1)" : ",-1)");
    }
    return out + ">";
}

/// Injective partial function on [0, n); -1 marks undefined.
class PartialMap {
public:
    PartialMap() = default;
    explicit PartialMap(std::size_t n) : img_(n, -1), pre_(n, -1) {}

    static PartialMap from_pairs(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
        PartialMap m(n);
        for (auto [a, b] : pairs) m.set(a, b);
        return m;
    }

    std::size_t universe() const { return img_.size(); }

    std::optional<int> operator()(int a) const {
        if (a < 0 || static_cast<std::size_t>(a) >= img_.size() || img_[a] < 0) return std::nullopt;
        return img_[a];
    }
    bool defined(int a) const { return a >= 0 && static_cast<std::size_t>(a) < img_.size() && img_[a] >= 0; }
    bool in_range(int b) const { return b >= 0 && static_cast<std::size_t>(b) < pre_.size() && pre_[b] >= 0; }
    std::optional<int> preimage(int b) const {
        if (!in_range(b)) return std::nullopt;
        return pre_[b];
    }

    /// Adds a -> b; rejects anything that breaks functionality or injectivity.
    void set(int a, int b) {
        require(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < img_.size() && static_cast<std::size_t>(b) < img_.size(),
                ErrorKind::InvalidElement, "map pair out of universe");
        if (img_[a] == b) return;
        require(img_[a] < 0, ErrorKind::InvalidInput, "map is not a function at " + std::to_string(a));
        require(pre_[b] < 0, ErrorKind::InvalidInput, "map is not injective at image " + std::to_string(b));
        img_[a] = b;
        pre_[b] = a;
    }

    void erase(int a) {
        if (!defined(a)) return;
        pre_[img_[a]] = -1;
        img_[a] = -1;
    }

    PartialMap inverse() const {
        PartialMap m;
        m.img_ = pre_;
        m.pre_ = img_;
        return m;
    }

    /// (g o f)(a) = g(f(a)).
    static PartialMap compose(const PartialMap& g, const PartialMap& f) {
        PartialMap m(f.universe());
        for (std::size_t a = 0; a < f.universe(); ++a)
            if (f.img_[a] >= 0 && g.defined(f.img_[a])) m.set(static_cast<int>(a), g.img_[f.img_[a]]);
        return m;
    }

    bool subset_of(const PartialMap& other) const {
        for (std::size_t a = 0; a < img_.size(); ++a)
            if (img_[a] >= 0 && other(static_cast<int>(a)) != img_[a]) return false;
        return true;
    }

    std::size_t domain_size() const {
        std::size_t c = 0;
        for (int v : img_) c += v >= 0;
        return c;
    }
    bool empty() const { return domain_size() == 0; }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t a = 0; a < img_.size(); ++a)
            if (img_[a] >= 0) out.emplace_back(static_cast<int>(a), img_[a]);
        return out;
    }

    const std::vector<int>& images() const { return img_; }

    friend bool operator==(const PartialMap& a, const PartialMap& b) { return a.img_ == b.img_; }
    friend bool operator<(const PartialMap& a, const PartialMap& b) { return a.img_ < b.img_; }

private:
    std::vector<int> img_;
    std::vector<int> pre_;
};

/// F_{eta,+1} per node; F_{eta,-1} is its inverse.
struct MapFamily {
    std::vector<PartialMap> pos;
    std::vector<PartialMap> neg;

    MapFamily() = default;
    MapFamily(std::size_t nodes, std::size_t universe) : pos(nodes, PartialMap(universe)), neg(nodes, PartialMap(universe)) {}

    static MapFamily from_positive(std::vector<PartialMap> pos) {
        MapFamily f;
        f.neg.reserve(pos.size());
        for (const auto& m : pos) f.neg.push_back(m.inverse());
        f.pos = std::move(pos);
        return f;
    }

    /// Explicit negative maps must be the inverses of the positive ones.
    static MapFamily from_signed(std::vector<PartialMap> pos, std::vector<PartialMap> neg) {
        require(pos.size() == neg.size(), ErrorKind::InverseMismatch, "positive and negative families differ in size");
        for (std::size_t i = 0; i < pos.size(); ++i)
            require(neg[i] == pos[i].inverse(), ErrorKind::InverseMismatch, "F_{eta,-1} is not the inverse of F_{eta,1} for node " + std::to_string(i));
        MapFamily f;
        f.pos = std::move(pos);
        f.neg = std::move(neg);
        return f;
    }

    std::size_t nodes() const { return pos.size(); }
    std::size_t universe() const { return pos.empty() ? 0 : pos.front().universe(); }

    const PartialMap& map(const Letter& l) const {
        require(l.node >= 0 && static_cast<std::size_t>(l.node) < pos.size(), ErrorKind::InvalidElement, "letter node out of range");
        require(l.sign == 1 || l.sign == -1, ErrorKind::InvalidInput, "letter sign must be +1 or -1");
        return l.sign > 0 ? pos[l.node] : neg[l.node];
    }

    void set(int node, int a, int b) {
        pos[node].set(a, b);
        neg[node].set(b, a);
    }
    void erase(int node, int a) {
        if (auto b = pos[node](a)) {
            pos[node].erase(a);
            neg[node].erase(*b);
        }
    }
};

/// F_o(a); nullopt when some step is undefined.
inline std::optional<int> eval_word(const MapFamily& f, const Word& o, int a) {
    std::optional<int> cur = a;
    for (auto it = o.rbegin(); it != o.rend() && cur; ++it) cur = f.map(*it)(*cur);
    return cur;
}

inline PartialMap eval_map(const MapFamily& f, const Word& o) {
    PartialMap m(f.universe());
    for (std::size_t a = 0; a < f.universe(); ++a)
        if (auto b = eval_word(f, o, static_cast<int>(a))) m.set(static_cast<int>(a), *b);
    return m;
}

/// <a_0, ..., a_k> with a_k = a and a_l = F_{o[l]}(a_{l+1}).
inline std::optional<std::vector<int>> orbit(const MapFamily& f, const Word& o, int a) {
    std::vector<int> out(o.size() + 1);
    out[o.size()] = a;
    for (std::size_t l = o.size(); l-- > 0;) {
        auto next = f.map(o[l])(out[l + 1]);
        if (!next) return std::nullopt;
        out[l] = *next;
    }
    return out;
}

inline bool is_reduced_orbit(const std::vector<int>& orb) {
    for (std::size_t i = 0; i < orb.size(); ++i)
        for (std::size_t j = i + 1; j < orb.size(); ++j)
            if (orb[i] == orb[j]) return false;
    return true;
}

/// Adjacent letters on the same node carry the same sign.
inline bool is_formally_reduced(const Word& o) {
    for (std::size_t l = 0; l + 1 < o.size(); ++l)
        if (o[l].node == o[l + 1].node && o[l].sign != o[l + 1].sign) return false;
    return true;
}

inline bool same_shape(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].sign != b[i].sign) return false;
    return true;
}

inline bool word_le(const FinPoset& t, const Word& o1, const Word& o2) {
    if (!same_shape(o1, o2)) return false;
    for (std::size_t i = 0; i < o1.size(); ++i)
        if (!t.le(o1[i].node, o2[i].node)) return false;
    return true;
}

/// Componentwise T-compatibility; equals having a common <=_Omega upper bound.
inline bool word_compatible(const FinPoset& t, const Word& o1, const Word& o2) {
    if (!same_shape(o1, o2)) return false;
    for (std::size_t i = 0; i < o1.size(); ++i)
        if (!t.compatible(o1[i].node, o2[i].node)) return false;
    return true;
}

inline Word word_meet(const FinPoset& t, const Word& o1, const Word& o2) {
    require(t.is_tree_like(), ErrorKind::InvalidInput, "word_meet needs a tree-like order");
    require(same_shape(o1, o2), ErrorKind::Incomparable, "words differ in length or signs");
    Word out = o1;
    for (std::size_t i = 0; i < o1.size(); ++i) {
        auto m = meet(t, o1[i].node, o2[i].node);
        require(m.has_value(), ErrorKind::Incomparable, "nodes " + t.label(o1[i].node) + " and " + t.label(o2[i].node) + " have no common lower bound");
        out[i].node = *m;
    }
    return out;
}

/// All words of length <= max_len over letters[], optionally only formally reduced ones.
template <class Fn>
void for_each_word(const std::vector<Letter>& letters, std::size_t max_len, bool formally_reduced_only, Fn&& fn) {
    Word cur;
    auto rec = [&](auto&& self) -> void {
        fn(static_cast<const Word&>(cur));
        if (cur.size() == max_len) return;
        for (const auto& l : letters) {
            if (formally_reduced_only && !cur.empty() && cur.back().node == l.node && cur.back().sign != l.sign) continue;
            cur.push_back(l);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
}

inline std::vector<Letter> all_letters(std::size_t nodes) {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < nodes; ++i) {
        out.push_back({static_cast<int>(i), 1});
        out.push_back({static_cast<int>(i), -1});
    }
    return out;
}

} // namespace twinforge
