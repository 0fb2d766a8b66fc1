#pragma once

// JSON file formats. Elements are referenced by integer id or by label string.
// Every to_json emits the canonical form that the matching from_json reads back.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entangle.hpp"
#include "error.hpp"
#include "gem.hpp"
#include "logic.hpp"
#include "org.hpp"
#include "pipeline.hpp"
#include "poset.hpp"
#include "relational.hpp"
#include "twinship.hpp"
#include "word.hpp"

namespace twinforge::io {

using nlohmann::json;

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

template <class T>
T get(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("field \"") + key + "\": " + e.what());
    }
}

/// Integer id, or a label looked up in `t` (when given).
inline int element(const json& v, std::size_t n, const FinPoset* t = nullptr) {
    int id = -1;
    if (v.is_number_integer()) {
        id = v.get<int>();
    } else if (v.is_string() && t) {
        auto f = t->find(v.get<std::string>());
        require(f.has_value(), ErrorKind::InvalidElement, "unknown label \"" + v.get<std::string>() + "\"");
        id = *f;
    } else {
        throw Error(ErrorKind::InvalidInput, "element reference must be an id" + std::string(t ? " or a label" : ""));
    }
    require(id >= 0 && static_cast<std::size_t>(id) < n, ErrorKind::InvalidElement, "element " + std::to_string(id) + " out of range");
    return id;
}

inline NodeSet element_set(const json& v, std::size_t n, const FinPoset* t = nullptr) {
    require(v.is_array(), ErrorKind::InvalidInput, "expected an array of elements");
    NodeSet s(n);
    for (const auto& e : v) s.set(static_cast<std::size_t>(element(e, n, t)));
    return s;
}

inline json set_json(const NodeSet& s) { return members(s); }

// ---- posets ----

inline json to_json(const FinPoset& p) {
    json j;
    std::vector<int> ids(p.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    j["elements"] = ids;
    if (!p.labels().empty()) j["labels"] = p.labels();
    json le = json::array();
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            if (a != b && p.le(static_cast<int>(a), static_cast<int>(b))) le.push_back({a, b});
    j["le"] = le;
    return j;
}

/// {"elements": [0..n-1] (or "n"), "labels"?, "le": [[a, b], ...]}; pairs may use labels and are
/// closed reflexively and transitively.
inline FinPoset poset_from_json(const json& j) {
    std::size_t n = 0;
    if (j.is_object() && j.contains("elements")) {
        auto ids = get<std::vector<int>>(j, "elements");
        n = ids.size();
        for (std::size_t i = 0; i < n; ++i)
            require(ids[i] == static_cast<int>(i), ErrorKind::InvalidElement, "element ids must be 0..n-1 in order");
    } else {
        n = get<std::size_t>(j, "n");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
    FinPoset plain(n, std::max(n, FinPoset::default_cap));
    if (!labels.empty()) plain.set_labels(labels);
    std::vector<std::pair<int, int>> pairs;
    if (j.contains("le"))
        for (const auto& pr : j.at("le")) {
            require(pr.is_array() && pr.size() == 2, ErrorKind::InvalidInput, "order pairs must have two entries");
            pairs.emplace_back(element(pr[0], n, &plain), element(pr[1], n, &plain));
        }
    return FinPoset::from_relation(n, pairs, labels, std::max(n, FinPoset::default_cap));
}

// ---- twinship parameters ----

inline json to_json(const TwinshipParam& p) {
    json j;
    j["poset"] = to_json(p.T);
    j["B"] = json::array();
    for (const auto& d : p.B) j["B"].push_back(set_json(d));
    j["theta"] = to_string(p.theta);
    j["frontier"] = set_json(p.frontier);
    return j;
}

inline Theta theta_from_string(const std::string& s) {
    if (s == "omega") return Theta::Omega;
    if (s == "uncountable") return Theta::Uncountable;
    throw Error(ErrorKind::InvalidInput, "theta must be \"omega\" or \"uncountable\"");
}

inline TwinshipParam param_from_json(const json& j) {
    TwinshipParam p;
    require(j.is_object() && (j.contains("poset") || j.contains("T")), ErrorKind::InvalidInput, "missing field \"poset\"");
    p.T = poset_from_json(j.contains("poset") ? j.at("poset") : j.at("T"));
    const std::size_t n = p.T.size();
    require(j.contains("B") && j.at("B").is_array(), ErrorKind::InvalidInput, "missing array \"B\"");
    for (const auto& d : j.at("B")) p.B.push_back(element_set(d, n, &p.T));
    p.theta = j.contains("theta") ? theta_from_string(get<std::string>(j, "theta")) : Theta::Omega;
    p.frontier = j.contains("frontier") ? element_set(j.at("frontier"), n, &p.T) : NodeSet(n);
    return p;
}

// ---- forcing examples ----

inline json to_json(const ForcingExample& m) {
    json j;
    j["lambda"] = m.lam;
    j["depth"] = m.tree.depth;
    j["theta"] = to_string(m.theta);
    j["P"] = to_json(m.P);
    j["name"] = m.name;
    return j;
}

/// {"lambda", "depth", "theta"?, "P": poset, "name": [tree node per condition]}.
inline ForcingExample forcing_from_json(const json& j) {
    ForcingExample m;
    m.lam = get<int>(j, "lambda");
    require(m.lam >= 1, ErrorKind::InvalidInput, "lambda must be positive");
    m.tree = make_seq_tree(m.lam, get<int>(j, "depth"), 1 << 12);
    m.theta = j.contains("theta") ? theta_from_string(get<std::string>(j, "theta")) : Theta::Omega;
    require(j.contains("P"), ErrorKind::InvalidInput, "missing field \"P\"");
    m.P = poset_from_json(j.at("P"));
    require(j.contains("name") && j.at("name").is_array(), ErrorKind::InvalidInput, "missing array \"name\"");
    for (const auto& v : j.at("name")) m.name.push_back(element(v, m.tree.poset.size(), &m.tree.poset));
    return m;
}

// ---- org structures ----

/// Maps are keyed by node label when `t` is given, else by node id.
inline json to_json(const OrgStructure& s, const FinPoset* t = nullptr) {
    json j;
    j["n"] = s.size();
    j["nodes"] = s.nodes();
    j["order"] = s.order;
    json edges = json::array();
    for (auto [a, b] : s.edge_list()) edges.push_back({a, b});
    j["edges"] = edges;
    json maps = json::object();
    for (std::size_t e = 0; e < s.nodes(); ++e) {
        json m = json::array();
        for (auto [a, b] : s.maps.pos[e].pairs()) m.push_back({a, b});
        maps[t ? t->label(static_cast<int>(e)) : std::to_string(e)] = m;
    }
    j["maps"] = maps;
    j["frontier"] = set_json(s.frontier);
    if (!s.names.empty()) j["names"] = s.names;
    return j;
}

/// {"n", "nodes"?, "order"?, "edges", "maps": {node: [[a, b], ...]}, "frontier"?, "names"?}.
/// Map keys are labels of `t` or node ids; "maps" may also be an array indexed by node.
inline OrgStructure org_from_json(const json& j, const FinPoset* t = nullptr) {
    const auto n = get<std::size_t>(j, "n");
    require(t || j.contains("nodes"), ErrorKind::InvalidInput, "structure needs \"nodes\" when no parameter is given");
    const std::size_t nodes = j.contains("nodes") ? get<std::size_t>(j, "nodes") : t->size();
    require(!t || nodes == t->size(), ErrorKind::InvalidInput, "structure node count differs from |T|");
    OrgStructure s(n, nodes);
    if (j.contains("order")) s.set_order(get<std::vector<int>>(j, "order"));
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            require(e.is_array() && e.size() == 2, ErrorKind::InvalidInput, "edges must be pairs");
            s.add_edge(element(e[0], n), element(e[1], n));
        }
    auto add_pairs = [&](int e, const json& pairs) {
        require(pairs.is_array(), ErrorKind::InvalidInput, "a map is a list of pairs");
        for (const auto& pr : pairs) {
            require(pr.is_array() && pr.size() == 2, ErrorKind::InvalidInput, "map entries must be pairs");
            s.maps.set(e, element(pr[0], n), element(pr[1], n));
        }
    };
    if (j.contains("maps")) {
        const auto& maps = j.at("maps");
        if (maps.is_array()) {
            require(maps.size() == nodes, ErrorKind::InvalidInput, "need one map per node");
            for (std::size_t e = 0; e < nodes; ++e) add_pairs(static_cast<int>(e), maps[e]);
        } else {
            require(maps.is_object(), ErrorKind::InvalidInput, "\"maps\" must be an object or an array");
            for (auto it = maps.begin(); it != maps.end(); ++it) {
                int e = -1;
                if (t && t->find(it.key())) {
                    e = *t->find(it.key());
                } else {
                    try {
                        std::size_t used = 0;
                        e = std::stoi(it.key(), &used);
                        require(used == it.key().size(), ErrorKind::InvalidElement, "unknown node " + it.key());
                    } catch (const std::logic_error&) {
                        throw Error(ErrorKind::InvalidElement, "unknown node \"" + it.key() + "\"");
                    }
                }
                require(e >= 0 && static_cast<std::size_t>(e) < nodes, ErrorKind::InvalidElement, "map node out of range");
                add_pairs(e, it.value());
            }
        }
    }
    if (j.contains("frontier")) s.frontier = element_set(j.at("frontier"), n);
    if (j.contains("names")) {
        s.names = get<std::vector<std::string>>(j, "names");
        require(s.names.size() == n, ErrorKind::InvalidInput, "name count does not match size");
    }
    return s;
}

// ---- relational structures ----

inline json to_json(const RelStructure& s) {
    json j;
    j["n"] = s.n;
    json rels = json::object();
    for (std::size_t r = 0; r < s.names.size(); ++r) {
        json pairs = json::array();
        for (std::size_t a = 0; a < s.n; ++a)
            for (std::size_t b = 0; b < s.n; ++b)
                if (s.rel[r][a][b]) pairs.push_back({a, b});
        rels[s.names[r]] = pairs;
    }
    j["relations"] = rels;
    return j;
}

/// {"n", "relations": {"name": [[a, b], ...]}}, or the ordered-graph shorthand {"n", "edges"}.
inline RelStructure structure_from_json(const json& j) {
    const auto n = get<std::size_t>(j, "n");
    if (j.contains("edges")) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            require(e.is_array() && e.size() == 2, ErrorKind::InvalidInput, "edges must be pairs");
            edges.emplace_back(element(e[0], n), element(e[1], n));
        }
        return ordered_graph(n, edges);
    }
    require(j.contains("relations") && j.at("relations").is_object(), ErrorKind::InvalidInput, "missing object \"relations\"");
    std::vector<std::string> names;
    for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) names.push_back(it.key());
    RelStructure s(n, names);
    for (std::size_t r = 0; r < names.size(); ++r)
        for (const auto& pr : j.at("relations").at(names[r])) {
            require(pr.is_array() && pr.size() == 2, ErrorKind::InvalidInput, "relation entries must be pairs");
            s.set(r, element(pr[0], n), element(pr[1], n));
        }
    return s;
}

// ---- words ----

inline json to_json(const Word& o) {
    json j = json::array();
    for (const auto& l : o) j.push_back({l.node, l.sign});
    return j;
}

/// [[node, sign], ...]; node by id or label.
inline Word word_from_json(const json& j, const FinPoset& t) {
    require(j.is_array(), ErrorKind::InvalidInput, "word must be an array");
    Word o;
    for (const auto& l : j) {
        require(l.is_array() && l.size() == 2 && l[1].is_number_integer(), ErrorKind::InvalidInput, "letters are [node, sign] pairs");
        int sign = l[1].get<int>();
        require(sign == 1 || sign == -1, ErrorKind::InvalidInput, "letter sign must be 1 or -1");
        o.push_back({element(l[0], t.size(), &t), sign});
    }
    return o;
}

/// Compact text form: letters separated by spaces or commas, each a label (or id) followed by + or -.
inline Word parse_word(const std::string& text, const FinPoset& t) {
    Word o;
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) return;
        char s = tok.back();
        require(s == '+' || s == '-', ErrorKind::InvalidInput, "letter \"" + tok + "\" must end in + or -");
        std::string body = tok.substr(0, tok.size() - 1);
        if (body == "<>") body.clear();
        int node = -1;
        if (auto f = t.find(body)) {
            node = *f;
        } else {
            try {
                std::size_t used = 0;
                node = std::stoi(body, &used);
                require(used == body.size(), ErrorKind::InvalidInput, "bad node " + body);
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::InvalidElement, "unknown node \"" + body + "\"");
            }
        }
        t.check(node);
        o.push_back({node, s == '+' ? 1 : -1});
        tok.clear();
    };
    for (char ch : text) {
        if (ch == ' ' || ch == ',') flush();
        else tok += ch;
    }
    flush();
    return o;
}

// ---- colorings ----

inline json to_json(const Coloring& c) {
    json j;
    j["lambda"] = c.lambda;
    json pairs = json::object();
    for (int a = 0; a < c.lambda; ++a)
        for (int b = a + 1; b < c.lambda; ++b)
            if (c(a, b) >= 0) pairs[std::to_string(a) + "," + std::to_string(b)] = c(a, b);
    j["pairs"] = pairs;
    return j;
}

/// {"lambda", "pairs": {"a,b": color}} or {"lambda", "constant": color}.
inline Coloring coloring_from_json(const json& j) {
    const int lam = get<int>(j, "lambda");
    require(lam >= 0, ErrorKind::InvalidInput, "lambda must be nonnegative");
    if (j.contains("constant")) return Coloring::constant(lam, get<int>(j, "constant"));
    Coloring c(lam);
    require(j.contains("pairs") && j.at("pairs").is_object(), ErrorKind::InvalidInput, "missing object \"pairs\"");
    for (auto it = j.at("pairs").begin(); it != j.at("pairs").end(); ++it) {
        const std::string& k = it.key();
        auto comma = k.find(',');
        require(comma != std::string::npos, ErrorKind::InvalidInput, "pair key \"" + k + "\" is not \"a,b\"");
        int a = 0, b = 0;
        try {
            a = std::stoi(k.substr(0, comma));
            b = std::stoi(k.substr(comma + 1));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidInput, "pair key \"" + k + "\" is not \"a,b\"");
        }
        require(it.value().is_number_integer() && it.value().get<int>() >= 0, ErrorKind::InvalidInput, "colors are nonnegative integers");
        c.set(a, b, it.value().get<int>());
    }
    return c;
}

// ---- blueprints ----

/// List of [index type, output type] descriptor pairs.
inline json to_json(const Blueprint& bp) {
    json j = json::array();
    for (const auto& [k, v] : bp.table) j.push_back({k, v});
    return j;
}

/// The pair list above, {"table": {index: output}}, or {"identity": [relation names]}.
inline Blueprint blueprint_from_json(const json& j) {
    Blueprint bp;
    if (j.is_array()) {
        for (const auto& pr : j) {
            require(pr.is_array() && pr.size() == 2 && pr[0].is_string() && pr[1].is_string(), ErrorKind::InvalidInput, "blueprint entries are [index, output] pairs");
            auto [it, fresh] = bp.table.emplace(pr[0].get<std::string>(), pr[1].get<std::string>());
            require(fresh || it->second == pr[1].get<std::string>(), ErrorKind::BlueprintInconsistent, "index type " + it->first + " listed twice");
        }
    } else if (j.contains("identity")) {
        return identity_blueprint(get<std::vector<std::string>>(j, "identity"));
    } else {
        bp.table = get<std::map<std::string, std::string>>(j, "table");
    }
    for (const auto& [k, v] : bp.table) {
        QfType::parse(k);
        QfType::parse(v);
    }
    return bp;
}

// ---- filtrations ----

inline json to_json(const Filtration& f) {
    json j;
    j["structure"] = to_json(f.M);
    j["stages"] = json::array();
    for (const auto& s : f.stages) j["stages"].push_back(set_json(s));
    return j;
}

/// {"structure", "stages": [[...], ...]}; a bare structure gets the vertex-count filtration.
inline Filtration filtration_from_json(const json& j) {
    if (!j.contains("structure")) return prefix_filtration(structure_from_json(j));
    Filtration f;
    f.M = structure_from_json(j.at("structure"));
    if (!j.contains("stages")) return prefix_filtration(f.M);
    for (const auto& s : j.at("stages")) f.stages.push_back(element_set(s, f.M.n));
    f.validate();
    return f;
}

// ---- assemblies ----

inline json to_json(const TwinAssembly& a) {
    json j;
    j["param"] = to_json(a.p);
    j["lambda"] = a.lambda;
    j["dseq"] = a.dseq;
    j["coloring"] = to_json(a.c);
    j["L"] = a.L;
    j["order"] = a.options.order == OrderRule::Magnus ? "magnus" : "shortlex";
    j["letters"] = a.options.letters == LetterMode::EachNode ? "each" : "monotone";
    j["J"] = to_json(a.J, &a.p.T);
    j["X"] = set_json(a.X);
    j["X1"] = set_json(a.X1);
    j["X2"] = set_json(a.X2);
    return j;
}

/// Rebuilds from the inputs; constructed fields in the file (J, X, X1, X2) are ignored.
inline TwinAssembly assembly_from_json(const json& j) {
    require(j.contains("param") && j.contains("coloring"), ErrorKind::InvalidInput, "assembly needs \"param\" and \"coloring\"");
    auto p = param_from_json(j.at("param"));
    auto c = coloring_from_json(j.at("coloring"));
    const int lambda = get<int>(j, "lambda");
    std::vector<std::size_t> dseq = get<std::vector<std::size_t>>(j, "dseq");
    BlockOptions opt;
    if (j.contains("order")) {
        auto o = get<std::string>(j, "order");
        require(o == "magnus" || o == "shortlex", ErrorKind::InvalidInput, "order must be magnus or shortlex");
        opt.order = o == "magnus" ? OrderRule::Magnus : OrderRule::Shortlex;
    }
    if (j.contains("letters")) {
        auto l = get<std::string>(j, "letters");
        require(l == "each" || l == "monotone", ErrorKind::InvalidInput, "letters must be each or monotone");
        opt.letters = l == "each" ? LetterMode::EachNode : LetterMode::Monotone;
    }
    std::optional<Blueprint> bp;
    if (j.contains("blueprint")) bp = blueprint_from_json(j.at("blueprint"));
    return assemble(p, lambda, dseq, c, get<int>(j, "L"), bp, opt);
}

/// Round-trip canonical text: parse then re-emit with sorted keys.
inline std::string canonical(const json& j) { return j.dump(2); }

} // namespace twinforge::io
