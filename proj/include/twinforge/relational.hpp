#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "org.hpp"

namespace twinforge {

/// Finite structure with named binary relations.
struct RelStructure {
    std::size_t n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<char>>> rel;

    RelStructure() = default;
    RelStructure(std::size_t size, std::vector<std::string> relation_names) : n(size), names(std::move(relation_names)) {
        rel.assign(names.size(), std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
    }

    std::optional<std::size_t> index(const std::string& r) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == r) return i;
        return std::nullopt;
    }
    bool holds(std::size_t r, int a, int b) const { return rel[r][a][b] != 0; }
    bool holds(const std::string& r, int a, int b) const {
        auto i = index(r);
        require(i.has_value(), ErrorKind::InvalidInput, "unknown relation " + r);
        return holds(*i, a, b);
    }
    void set(std::size_t r, int a, int b, bool v = true) { rel[r][a][b] = v ? 1 : 0; }

    RelStructure induced(const std::vector<int>& ids) const {
        RelStructure s(ids.size(), names);
        for (std::size_t r = 0; r < names.size(); ++r)
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = 0; j < ids.size(); ++j) s.rel[r][i][j] = rel[r][ids[i]][ids[j]];
        return s;
    }
};

/// (<, R) reduct of an org structure.
inline RelStructure ordered_graph(const OrgStructure& j) {
    RelStructure s(j.size(), {"<", "R"});
    for (std::size_t a = 0; a < j.size(); ++a)
        for (std::size_t b = 0; b < j.size(); ++b) {
            s.rel[0][a][b] = a != b && j.less(static_cast<int>(a), static_cast<int>(b));
            s.rel[1][a][b] = j.edge(static_cast<int>(a), static_cast<int>(b));
        }
    return s;
}

/// Ordered graph on [0, n) with the natural order.
inline RelStructure ordered_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    RelStructure s(n, {"<", "R"});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) s.rel[0][a][b] = 1;
    for (auto [a, b] : edges) {
        require(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < n && static_cast<std::size_t>(b) < n && a != b, ErrorKind::InvalidInput, "bad edge");
        s.rel[1][a][b] = s.rel[1][b][a] = 1;
    }
    return s;
}

/// Complete quantifier-free type of a tuple: equality pattern plus every relation on every ordered
/// pair of positions (diagonal included).
struct QfType {
    std::size_t arity = 0;
    std::vector<std::string> names;
    std::vector<char> eq;                ///< upper triangle i < j, row-major
    std::vector<std::vector<char>> rel;  ///< per relation, arity x arity row-major

    /// "<arity>|<eq bits>|<name>:<bits>|..."
    std::string key() const {
        std::string out = std::to_string(arity) + "|";
        for (char c : eq) out += c ? '1' : '0';
        for (std::size_t r = 0; r < names.size(); ++r) {
            out += "|" + names[r] + ":";
            for (char c : rel[r]) out += c ? '1' : '0';
        }
        return out;
    }

    static QfType parse(const std::string& key) {
        QfType t;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            auto bar = key.find('|', start);
            parts.push_back(key.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        require(parts.size() >= 2, ErrorKind::InvalidInput, "malformed type descriptor " + key);
        try {
            t.arity = std::stoul(parts[0]);
        } catch (...) {
            throw Error(ErrorKind::InvalidInput, "malformed type arity in " + key);
        }
        auto bits = [&](const std::string& s, std::size_t want) {
            require(s.size() == want, ErrorKind::InvalidInput, "wrong bit count in " + key);
            std::vector<char> v;
            for (char c : s) {
                require(c == '0' || c == '1', ErrorKind::InvalidInput, "non-bit in " + key);
                v.push_back(c == '1');
            }
            return v;
        };
        t.eq = bits(parts[1], t.arity * (t.arity - (t.arity ? 1 : 0)) / 2);
        for (std::size_t i = 2; i < parts.size(); ++i) {
            auto colon = parts[i].rfind(':');
            require(colon != std::string::npos, ErrorKind::InvalidInput, "malformed relation block in " + key);
            t.names.push_back(parts[i].substr(0, colon));
            t.rel.push_back(bits(parts[i].substr(colon + 1), t.arity * t.arity));
        }
        return t;
    }

    bool equal(std::size_t i, std::size_t j) const {
        if (i == j) return true;
        if (i > j) std::swap(i, j);
        return eq[i * arity - i * (i + 1) / 2 + (j - i - 1)] != 0;
    }
    bool holds(std::size_t r, std::size_t i, std::size_t j) const { return rel[r][i * arity + j] != 0; }

    std::string describe() const {
        std::string out;
        auto add = [&](const std::string& lit) { out += (out.empty() ? "" : ", ") + lit; };
        for (std::size_t i = 0; i < arity; ++i)
            for (std::size_t j = i + 1; j < arity; ++j)
                add("x" + std::to_string(i) + (equal(i, j) ? "=" : "!=") + "x" + std::to_string(j));
        for (std::size_t r = 0; r < names.size(); ++r)
            for (std::size_t i = 0; i < arity; ++i)
                for (std::size_t j = 0; j < arity; ++j)
                    add(std::string(holds(r, i, j) ? "" : "!") + names[r] + "(x" + std::to_string(i) + ",x" + std::to_string(j) + ")");
        return out;
    }

    friend bool operator==(const QfType& a, const QfType& b) { return a.key() == b.key(); }
};

inline QfType qf_type(const RelStructure& s, const std::vector<int>& tuple) {
    QfType t;
    t.arity = tuple.size();
    t.names = s.names;
    for (int a : tuple) require(a >= 0 && static_cast<std::size_t>(a) < s.n, ErrorKind::InvalidElement, "tuple element out of range");
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) t.eq.push_back(tuple[i] == tuple[j]);
    for (std::size_t r = 0; r < s.names.size(); ++r) {
        std::vector<char> bits;
        for (int a : tuple)
            for (int b : tuple) bits.push_back(s.rel[r][a][b]);
        t.rel.push_back(std::move(bits));
    }
    return t;
}

/// Quantifier-free formula over binary relation symbols and equality, variables x0, x1, ...
/// Serialized as prefix terms: true, false, (= x0 x1), (R x0 x1), (not f), (and f ...), (or f ...).
struct Formula {
    enum class Kind { True, False, Eq, Atom, Not, And, Or } kind = Kind::True;
    std::string rel;
    int a = 0, b = 0;
    std::vector<Formula> args;

    static Formula atom(std::string r, int x, int y) {
        Formula f;
        f.kind = r == "=" ? Kind::Eq : Kind::Atom;
        f.rel = std::move(r);
        f.a = x;
        f.b = y;
        return f;
    }
    static Formula negate(Formula g) {
        Formula f;
        f.kind = Kind::Not;
        f.args.push_back(std::move(g));
        return f;
    }
    static Formula conj(std::vector<Formula> gs) {
        Formula f;
        f.kind = Kind::And;
        f.args = std::move(gs);
        return f;
    }

    int max_var() const {
        int m = -1;
        if (kind == Kind::Eq || kind == Kind::Atom) m = std::max(a, b);
        for (const auto& g : args) m = std::max(m, g.max_var());
        return m;
    }

    bool eval(const RelStructure& s, const std::vector<int>& v) const {
        switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Eq: return v.at(a) == v.at(b);
        case Kind::Atom: return s.holds(rel, v.at(a), v.at(b));
        case Kind::Not: return !args[0].eval(s, v);
        case Kind::And:
            for (const auto& g : args)
                if (!g.eval(s, v)) return false;
            return true;
        case Kind::Or:
            for (const auto& g : args)
                if (g.eval(s, v)) return true;
            return false;
        }
        return false;
    }

    /// Truth under a complete type (variables index the type's positions).
    bool eval(const QfType& t) const {
        switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Eq: return t.equal(a, b);
        case Kind::Atom: {
            auto it = std::find(t.names.begin(), t.names.end(), rel);
            require(it != t.names.end(), ErrorKind::InvalidInput, "type has no relation " + rel);
            return t.holds(static_cast<std::size_t>(it - t.names.begin()), a, b);
        }
        case Kind::Not: return !args[0].eval(t);
        case Kind::And:
            for (const auto& g : args)
                if (!g.eval(t)) return false;
            return true;
        case Kind::Or:
            for (const auto& g : args)
                if (g.eval(t)) return true;
            return false;
        }
        return false;
    }

    std::string str() const {
        auto var = [](int i) { return "x" + std::to_string(i); };
        switch (kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Eq:
        case Kind::Atom: return "(" + rel + " " + var(a) + " " + var(b) + ")";
        case Kind::Not: return "(not " + args[0].str() + ")";
        case Kind::And:
        case Kind::Or: {
            std::string out = kind == Kind::And ? "(and" : "(or";
            for (const auto& g : args) out += " " + g.str();
            return out + ")";
        }
        }
        return {};
    }

    static Formula parse(const std::string& text) {
        std::vector<std::string> tok;
        for (std::size_t i = 0; i < text.size();) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == '(' || c == ')') {
                tok.emplace_back(1, c);
                ++i;
            } else {
                std::size_t j = i;
                while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' && text[j] != ')') ++j;
                tok.push_back(text.substr(i, j - i));
                i = j;
            }
        }
        std::size_t pos = 0;
        auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvalidInput, "formula: " + why + " in \"" + text + "\""); };
        auto var = [&](const std::string& s) {
            if (s.size() < 2 || s[0] != 'x' || !std::all_of(s.begin() + 1, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                fail("expected variable, got " + s);
            return std::stoi(s.substr(1));
        };
        auto rec = [&](auto&& self) -> Formula {
            if (pos >= tok.size()) fail("unexpected end");
            const std::string t = tok[pos++];
            if (t == "true" || t == "false") {
                Formula f;
                f.kind = t == "true" ? Kind::True : Kind::False;
                return f;
            }
            if (t != "(") fail("unexpected token " + t);
            if (pos >= tok.size()) fail("unexpected end");
            const std::string head = tok[pos++];
            Formula f;
            if (head == "not" || head == "and" || head == "or") {
                f.kind = head == "not" ? Kind::Not : head == "and" ? Kind::And : Kind::Or;
                while (pos < tok.size() && tok[pos] != ")") f.args.push_back(self(self));
                if (f.kind == Kind::Not && f.args.size() != 1) fail("not takes one argument");
            } else {
                if (pos + 1 >= tok.size()) fail("unexpected end");
                int x = var(tok[pos++]);
                int y = var(tok[pos++]);
                f = atom(head, x, y);
            }
            if (pos >= tok.size() || tok[pos] != ")") fail("missing )");
            ++pos;
            return f;
        };
        Formula f = rec(rec);
        if (pos != tok.size()) fail("trailing tokens");
        return f;
    }
};

/// Every k-tuple over [0, n) in lexicographic order.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<int> t(k, 0);
    if (k == 0) {
        fn(t);
        return;
    }
    if (n == 0) return;
    while (true) {
        fn(static_cast<const std::vector<int>&>(t));
        std::size_t i = k;
        while (i > 0 && static_cast<std::size_t>(++t[i - 1]) == n) t[--i] = 0;
        if (i == 0) return;
    }
}

/// Every strictly increasing k-sequence over [0, n).
template <class Fn>
void for_each_increasing(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<int>(i);
    while (true) {
        fn(static_cast<const std::vector<int>&>(t));
        std::size_t i = k;
        while (i > 0 && static_cast<std::size_t>(t[i - 1]) == n - k + i - 1) --i;
        if (i == 0) return;
        ++t[i - 1];
        for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
    }
}

} // namespace twinforge
