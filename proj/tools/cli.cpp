#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <twinforge.hpp>

namespace twinforge::cli {

namespace {

using nlohmann::json;

struct Globals {
    std::string format = "text";
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

int to_int(const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        require(used == s.size(), ErrorKind::InvalidInput, "not an integer: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidInput, "not an integer: " + s);
    }
}

/// Comma-separated ids or labels of `t`; "<>" names the empty label.
NodeSet parse_ids(const std::string& text, const FinPoset& t) {
    NodeSet s(t.size());
    if (trim(text).empty()) return s;
    for (auto tok : split(text, ',')) {
        tok = trim(tok);
        std::string label = tok == "<>" ? std::string() : tok;
        if (auto f = t.find(label)) {
            s.set(static_cast<std::size_t>(*f));
            continue;
        }
        int id = to_int(tok);
        t.check(id);
        s.set(static_cast<std::size_t>(id));
    }
    return s;
}

/// "0,1;2,3" -> {{0,1},{2,3}}.
std::vector<std::vector<int>> parse_tuples(const std::string& text) {
    std::vector<std::vector<int>> out;
    if (trim(text).empty()) return out;
    for (const auto& part : split(text, ';')) {
        std::vector<int> tup;
        for (const auto& tok : split(part, ','))
            if (!trim(tok).empty()) tup.push_back(to_int(trim(tok)));
        out.push_back(tup);
    }
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& tok : split(text, ',')) {
        int v = to_int(trim(tok));
        require(v >= 0, ErrorKind::InvalidInput, "indices must be nonnegative");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

json tuples_json(const std::vector<std::vector<int>>& v) { return v; }

class Runner {
public:
    Runner(std::ostream& out, const Globals& g) : out_(out), g_(g) {}

    int report(const std::string& command, const ClauseReport& rep, json extra = json::object()) {
        if (g_.format == "json") {
            json j = extra;
            j["command"] = command;
            j["holds"] = rep.holds();
            j["report"] = rep.json();
            j["seed"] = g_.seed;
            out_ << j.dump(2) << "\n";
        } else {
            out_ << rep.text();
            for (auto it = extra.begin(); it != extra.end(); ++it) out_ << it.key() << ": " << it.value().dump() << "\n";
        }
        return rep.holds() ? Holds : Fails;
    }

    /// Verdict plus free-form fields; `text` lines are printed in text mode.
    int verdict(const std::string& command, bool holds, const json& fields, const std::string& text) {
        if (g_.format == "json") {
            json j = fields;
            j["command"] = command;
            j["holds"] = holds;
            j["seed"] = g_.seed;
            out_ << j.dump(2) << "\n";
        } else {
            out_ << text;
            if (!text.empty() && text.back() != '\n') out_ << "\n";
            out_ << (holds ? "result: holds\n" : "result: fails\n");
        }
        return holds ? Holds : Fails;
    }

    /// Document output (a constructed object), optionally also written to a file.
    int document(const json& doc, const std::string& path) {
        const std::string text = io::canonical(doc) + "\n";
        if (!path.empty()) {
            std::ofstream f(path);
            require(f.good(), ErrorKind::InvalidInput, "cannot write " + path);
            f << text;
        } else {
            out_ << text;
        }
        return Holds;
    }

    std::ostream& out() { return out_; }
    const Globals& globals() const { return g_; }

private:
    std::ostream& out_;
    const Globals& g_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-scale workbench for twinship parameters, organized structures and twin assemblies", "twinforge"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", g.seed, "Seed recorded in reports and used by randomized commands");
    app.add_option("--jobs", g.jobs, "Worker threads for parallel sweeps")->check(CLI::Range(1U, 256U));

    std::function<int()> action;
    Runner runner(out, g);

    // ---- twinship parameters ----
    std::string param_path, struct_path, second_path, out_path, g_text, down_text;
    bool verbatim = false, levels = false;
    {
        auto* c = app.add_subcommand("validate-param", "Clause report for a twinship parameter");
        c->add_option("param", param_path)->required();
        c->add_flag("--verbatim", verbatim, "Ignore the frontier");
        c->add_flag("--levels", levels, "Also demand clause (D)");
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                return runner.report("validate-param", validate_param(p, {verbatim, levels}));
            };
        });
    }
    std::size_t antichain_cap = 10000;
    {
        auto* c = app.add_subcommand("derive-forcing", "Parameter derived from a forcing example");
        c->add_option("example", param_path)->required();
        c->add_option("--antichain-cap", antichain_cap);
        c->add_option("--out", out_path);
        c->callback([&]() {
            action = [&]() {
                auto m = io::forcing_from_json(io::read_file(param_path));
                auto rep = validate_forcing_example(m);
                if (!rep.holds()) return runner.report("derive-forcing", rep);
                auto d = derive_from_forcing(m, antichain_cap);
                require(!d.truncated, ErrorKind::BudgetExceeded, "antichain or family cap reached");
                return runner.document(io::to_json(d.param), out_path);
            };
        });
    }
    auto pick_g = [&](const TwinshipParam& p) {
        require(g_text.empty() != down_text.empty(), ErrorKind::InvalidInput, "give exactly one of --G and --down");
        if (!g_text.empty()) return parse_ids(g_text, p.T);
        NodeSet top = parse_ids(down_text, p.T);
        require(top.count() == 1, ErrorKind::InvalidInput, "--down takes one element");
        return p.T.down(static_cast<int>(top.find_first()));
    };
    {
        auto* c = app.add_subcommand("solve-check", "Does G solve the parameter");
        c->add_option("param", param_path)->required();
        c->add_option("--G", g_text, "Comma-separated ids or labels");
        c->add_option("--down", down_text, "Use G = down(m)");
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                NodeSet gs = pick_g(p);
                bool directed = is_directed(p.T, gs);
                std::vector<int> missed;
                for (std::size_t d = 0; d < p.B.size(); ++d)
                    if (!gs.intersects(p.B[d])) missed.push_back(static_cast<int>(d));
                bool ok = directed && missed.empty();
                std::string text = "G = " + format_set(p.T, gs) + "\ndirected: " + (directed ? "yes" : "no") + "\n";
                for (int d : missed) text += "misses member " + std::to_string(d) + " " + format_set(p.T, p.B[d]) + "\n";
                return runner.verdict("solve-check", ok, {{"G", members(gs)}, {"directed", directed}, {"missed", missed}}, text);
            };
        });
    }
    {
        auto* c = app.add_subcommand("strong-check", "Is the parameter strong (no directed solution)");
        c->add_option("param", param_path)->required();
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                auto s = is_strong(p);
                json f{{"strong", s.strong}};
                std::string text = s.strong ? "no down-set solves the parameter\n" : "";
                if (!s.strong) {
                    f["witness"] = members(s.witness);
                    if (s.top) f["top"] = *s.top;
                    text = "witness G = " + format_set(p.T, s.witness) + (s.top ? " = down(" + p.T.label(*s.top) + ")" : "") + " solves p\n";
                }
                return runner.verdict("strong-check", s.strong, f, text);
            };
        });
    }
    std::string r_text;
    {
        auto* c = app.add_subcommand("wellfound-transform", "Sequence tree T_r with the transported family");
        c->add_option("param", param_path)->required();
        c->add_option("--r", r_text, "Start element (id or label)")->required();
        c->add_option("--out", out_path);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                NodeSet r = parse_ids(r_text, p.T);
                require(r.count() == 1, ErrorKind::InvalidInput, "--r takes one element");
                auto t = wellfound_transform(p, static_cast<int>(r.find_first()));
                runner.document(io::to_json(t.param), out_path);
                return validate_param(t.param).holds() ? Holds : Fails;
            };
        });
    }

    // ---- organized structures ----
    std::size_t word_bound = 2, atlas_cap = 1'000'000;
    auto load_org = [&](const TwinshipParam& p) { return io::org_from_json(io::read_file(struct_path), &p.T); };
    {
        auto* c = app.add_subcommand("check-k0", "K0 membership report");
        c->add_option("param", param_path)->required();
        c->add_option("structure", struct_path)->required();
        c->add_option("--word-bound", word_bound);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                return runner.report("check-k0", check_K0(load_org(p), p, {word_bound}));
            };
        });
    }
    {
        auto* c = app.add_subcommand("check-k1", "No formally reduced word has a fixed point");
        c->add_option("param", param_path)->required();
        c->add_option("structure", struct_path)->required();
        c->add_option("--atlas-cap", atlas_cap);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                auto j = load_org(p);
                auto r = check_K1(j, atlas_cap);
                if (r.holds && r.cap_exceeded) throw Error(ErrorKind::BudgetExceeded, "atlas cap exceeded after " + std::to_string(r.atlas_size) + " states");
                json f{{"atlas_size", r.atlas_size}};
                std::string text = "atlas states: " + std::to_string(r.atlas_size) + "\n";
                if (!r.holds) {
                    f["word"] = io::to_json(*r.word);
                    f["point"] = *r.point;
                    text += "F_" + format_word(*r.word, &p.T) + " fixes " + j.name(*r.point) + "\n";
                }
                return runner.verdict("check-k1", r.holds, f, text);
            };
        });
    }
    {
        auto* c = app.add_subcommand("check-k2", "K2 membership report");
        c->add_option("param", param_path)->required();
        c->add_option("structure", struct_path)->required();
        c->add_option("--atlas-cap", atlas_cap);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                return runner.report("check-k2", check_K2(load_org(p), p, atlas_cap));
            };
        });
    }
    std::size_t d_index = 0;
    int block_L = 2;
    std::string order_rule = "magnus", letter_mode = "each";
    auto block_options = [&]() {
        BlockOptions o;
        o.order = order_rule == "magnus" ? OrderRule::Magnus : OrderRule::Shortlex;
        o.letters = letter_mode == "each" ? LetterMode::EachNode : LetterMode::Monotone;
        return o;
    };
    {
        auto* c = app.add_subcommand("build-block", "Truncated free-group block for a member of B");
        c->add_option("param", param_path)->required();
        c->add_option("--d", d_index, "Index into B")->required();
        c->add_option("--L", block_L, "Word length bound")->required();
        c->add_option("--order", order_rule)->check(CLI::IsMember({"magnus", "shortlex"}));
        c->add_option("--letters", letter_mode)->check(CLI::IsMember({"each", "monotone"}));
        c->add_option("--out", out_path);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                auto b = build_block(p, d_index, block_L, block_options());
                return runner.document(io::to_json(b.J, &p.T), out_path);
            };
        });
    }
    {
        auto* c = app.add_subcommand("generic-map", "F_G for a solution G with its four obligations");
        c->add_option("param", param_path)->required();
        c->add_option("structure", struct_path)->required();
        c->add_option("--G", g_text);
        c->add_option("--down", down_text);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                auto gm = generic_map(load_org(p), p, pick_g(p));
                json extra = json::object();
                if (gm.map) extra["map"] = gm.map->pairs();
                return runner.report("generic-map", gm.report, extra);
            };
        });
    }
    std::string word_text;
    int point = 0;
    {
        auto* c = app.add_subcommand("orbit", "Orbit of a point under a word");
        c->add_option("param", param_path)->required();
        c->add_option("structure", struct_path)->required();
        c->add_option("--word", word_text, "Letters such as \"x+ y-\"; the last letter applies first")->required();
        c->add_option("--a", point, "Start point")->required();
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                auto j = load_org(p);
                require(point >= 0 && static_cast<std::size_t>(point) < j.size(), ErrorKind::InvalidElement, "start point out of range");
                Word o = io::parse_word(word_text, p.T);
                auto orb = orbit(j.maps, o, point);
                json f{{"word", io::to_json(o)}, {"formally_reduced", is_formally_reduced(o)}};
                std::string text = "word " + format_word(o, &p.T) + (is_formally_reduced(o) ? " (formally reduced)" : " (not formally reduced)") + "\n";
                if (orb) {
                    f["orbit"] = *orb;
                    f["reduced_orbit"] = is_reduced_orbit(*orb);
                    text += "orbit:";
                    for (int x : *orb) text += " " + j.name(x);
                    text += std::string("\nreduced orbit: ") + (is_reduced_orbit(*orb) ? "yes" : "no") + "\n";
                } else {
                    text += "undefined at " + j.name(point) + "\n";
                }
                return runner.verdict("orbit", orb.has_value(), f, text);
            };
        });
    }

    // ---- entanglement and colorings ----
    std::string family_text, rel_name = "R", org_param;
    {
        auto* c = app.add_subcommand("entangled", "Every edge pattern is realized by the family");
        c->add_option("structure", struct_path)->required();
        c->add_option("--family", family_text, "Tuples as \"0,1;2,3\"")->required();
        c->add_option("--rel", rel_name);
        c->add_option("--org", org_param, "Parameter file; treats the structure as organized");
        c->callback([&]() {
            action = [&]() {
                auto fam = parse_tuples(family_text);
                EntangleResult r;
                const std::size_t eps = fam.empty() ? 0 : fam.front().size();
                if (org_param.empty()) {
                    r = graph_entangled(io::structure_from_json(io::read_file(struct_path)), fam, rel_name);
                } else {
                    auto p = io::param_from_json(io::read_file(org_param));
                    r = org_entangled(load_org(p), fam, p);
                }
                json f{{"admissible_patterns", r.admissible}};
                std::string text = "patterns checked: " + std::to_string(r.admissible) + "\n";
                if (r.failing) {
                    f["failing"] = pattern_pairs(*r.failing, eps);
                    text += "missing pattern X = {";
                    bool first = true;
                    for (auto [z, x] : pattern_pairs(*r.failing, eps)) {
                        text += (first ? "(" : ", (") + std::to_string(z) + "," + std::to_string(x) + ")";
                        first = false;
                    }
                    text += "}\n";
                }
                return runner.verdict("entangled", r.holds, f, text);
            };
        });
    }
    std::size_t pr_n = 1, pr_m = 3, pr_mu = 2;
    {
        auto* c = app.add_subcommand("pr0", "Separated families realize every color matrix");
        c->add_option("coloring", struct_path)->required();
        c->add_option("--n", pr_n);
        c->add_option("--m", pr_m);
        c->add_option("--mu", pr_mu);
        c->callback([&]() {
            action = [&]() {
                auto col = io::coloring_from_json(io::read_file(struct_path));
                auto r = pr0_check(col, pr_n, pr_m, pr_mu, g.jobs);
                json f{{"families", r.families}, {"scope", "separated families"}};
                std::string text = "scope: separated families (each tuple lies below the next)\nfamilies checked: " + std::to_string(r.families) + "\n";
                if (!r.holds) {
                    f["family"] = *r.family;
                    f["missing"] = *r.missing;
                    text += "family " + json(*r.family).dump() + " misses h = " + json(*r.missing).dump() + "\n";
                }
                return runner.verdict("pr0", r.holds, f, text);
            };
        });
    }
    std::vector<std::string> sigma_text{"x"};
    std::size_t term_depth = 1;
    {
        auto* c = app.add_subcommand("unembed", "Every term embedding of I into J collapses some type pair");
        c->add_option("I", struct_path)->required();
        c->add_option("J", second_path)->required();
        c->add_option("--sigma", sigma_text, "Term shapes name:arity:depth; \"x\" is the identity");
        c->add_option("--depth", term_depth);
        c->callback([&]() {
            action = [&]() {
                std::vector<TermShape> sigma;
                for (const auto& s : sigma_text) {
                    if (s == "x") {
                        sigma.push_back(identity_shape());
                        continue;
                    }
                    auto parts = split(s, ':');
                    require(parts.size() == 3, ErrorKind::InvalidInput, "term shape must be name:arity:depth");
                    sigma.push_back({parts[0], static_cast<std::size_t>(to_int(parts[1])), static_cast<std::size_t>(to_int(parts[2]))});
                }
                auto i = io::structure_from_json(io::read_file(struct_path));
                auto j = io::structure_from_json(io::read_file(second_path));
                auto r = unembeddable_oracle(i, j, sigma, gamma_org(), term_depth);
                json f{{"maps_checked", r.maps_checked}};
                std::string text = "maps checked: " + std::to_string(r.maps_checked) + "\n";
                if (r.embedding) {
                    json e = json::array();
                    text += "embedding:";
                    for (const auto& [shape, tup] : *r.embedding) {
                        e.push_back({{"shape", sigma[shape].name}, {"tuple", tup}});
                        text += " " + sigma[shape].name + json(tup).dump();
                    }
                    f["embedding"] = e;
                    text += "\n";
                }
                return runner.verdict("unembed", r.holds, f, text);
            };
        });
    }

    // ---- logic tools ----
    std::size_t zeta = 1;
    std::string clock_path;
    {
        auto* c = app.add_subcommand("ef-game", "Solve the isomorphism game on two filtrations");
        c->add_option("M", struct_path)->required();
        c->add_option("N", second_path)->required();
        c->add_option("--zeta", zeta, "Number of moves");
        c->add_option("--clock", clock_path, "Tree poset used as the clock");
        c->callback([&]() {
            action = [&]() {
                auto mf = io::filtration_from_json(io::read_file(struct_path));
                auto nf = io::filtration_from_json(io::read_file(second_path));
                GameResult r = clock_path.empty() ? solve_iso_game(mf, nf, zeta)
                                                  : solve_tree_clock_game(mf, nf, io::poset_from_json(io::read_file(clock_path)));
                json f{{"winner", to_string(r.winner)}, {"states", r.states}};
                std::string text = std::string("winner: ") + to_string(r.winner) + "\n";
                if (r.anti_first_move) {
                    f["anti_first_move"] = *r.anti_first_move;
                    text += "ANTI opens with stage " + std::to_string(*r.anti_first_move) + "\n";
                }
                return runner.verdict("ef-game", r.winner == Player::Iso, f, text);
            };
        });
    }
    std::string phi_text, witness_text;
    std::vector<std::string> families_text;
    std::size_t far_n = 2;
    std::optional<std::size_t> u_min;
    {
        auto* c = app.add_subcommand("far", "Is M1 far from M2 via a witness sequence");
        c->add_option("M1", struct_path)->required();
        c->add_option("M2", second_path)->required();
        c->add_option("--phi", phi_text, "Prefix formula such as \"(R x0 x1)\"")->required();
        c->add_option("--n", far_n, "Number of tuples phi speaks about");
        c->add_option("--witness", witness_text, "Tuples as \"0;1;2\"");
        c->add_option("--family", families_text, "Witness family (repeatable) for the sigma variant");
        c->add_option("--u-min", u_min);
        c->callback([&]() {
            action = [&]() {
                auto m1 = io::structure_from_json(io::read_file(struct_path));
                auto m2 = io::structure_from_json(io::read_file(second_path));
                auto phi = Formula::parse(phi_text);
                if (!families_text.empty()) {
                    std::vector<std::vector<std::vector<int>>> fams;
                    for (const auto& t : families_text) fams.push_back(parse_tuples(t));
                    auto r = is_sigma_far(m1, m2, phi, far_n, fams, u_min);
                    json f{{"far", r.far}};
                    std::string text;
                    if (!r.far) {
                        f["subsets"] = r.subsets;
                        json fn = json::array();
                        for (const auto& [k, v] : r.function) fn.push_back({k, v});
                        f["function"] = fn;
                        text = "preserving map found on subsets " + json(r.subsets).dump() + "\n";
                    }
                    return runner.verdict("far", r.far, f, text);
                }
                auto witness = parse_tuples(witness_text);
                require(!witness.empty(), ErrorKind::InvalidInput, "give --witness or --family");
                auto r = is_far(m1, m2, phi, far_n, witness, u_min);
                json f{{"far", r.far}};
                std::string text;
                if (!r.far) {
                    f["subset"] = r.subset;
                    f["image"] = tuples_json(r.image);
                    text = "U = " + json(r.subset).dump() + " maps to " + json(r.image).dump() + " preserving phi\n";
                }
                return runner.verdict("far", r.far, f, text);
            };
        });
    }

    // ---- pipeline ----
    int lambda = 2;
    std::string dseq_text, coloring_path, blueprint_path;
    std::optional<int> constant_color;
    {
        auto* c = app.add_subcommand("assemble", "Build a twin assembly");
        c->add_option("param", param_path)->required();
        c->add_option("--lambda", lambda)->required();
        c->add_option("--dseq", dseq_text, "Indices into B, one per block")->required();
        c->add_option("--coloring", coloring_path, "Coloring file");
        c->add_option("--constant", constant_color, "Constant coloring instead of a file");
        c->add_option("--L", block_L, "Block word length")->required();
        c->add_option("--blueprint", blueprint_path);
        c->add_option("--order", order_rule)->check(CLI::IsMember({"magnus", "shortlex"}));
        c->add_option("--letters", letter_mode)->check(CLI::IsMember({"each", "monotone"}));
        c->add_option("--out", out_path);
        c->callback([&]() {
            action = [&]() {
                auto p = io::param_from_json(io::read_file(param_path));
                require(coloring_path.empty() != !constant_color.has_value(), ErrorKind::InvalidInput, "give exactly one of --coloring and --constant");
                Coloring col = constant_color ? Coloring::constant(lambda, *constant_color) : io::coloring_from_json(io::read_file(coloring_path));
                std::optional<Blueprint> bp;
                if (!blueprint_path.empty()) bp = io::blueprint_from_json(io::read_file(blueprint_path));
                auto a = assemble(p, lambda, parse_indices(dseq_text), col, block_L, bp, block_options());
                json doc = io::to_json(a);
                if (bp) doc["blueprint"] = io::to_json(*bp);
                return runner.document(doc, out_path);
            };
        });
    }
    {
        auto* c = app.add_subcommand("verify-twin", "Hypothesis clauses and solution isomorphisms of an assembly");
        c->add_option("assembly", struct_path)->required();
        c->add_option("--G", g_text);
        c->add_option("--down", down_text);
        c->callback([&]() {
            action = [&]() {
                auto a = io::assembly_from_json(io::read_file(struct_path));
                ClauseReport rep = verify_hypotheses(a);
                rep.subject = "twin assembly";
                std::vector<NodeSet> gs;
                if (!g_text.empty() || !down_text.empty()) {
                    gs.push_back(pick_g(a.p));
                } else {
                    for (std::size_t m = 0; m < a.p.T.size(); ++m)
                        if (solves(a.p, a.p.T.down(static_cast<int>(m)))) gs.push_back(a.p.T.down(static_cast<int>(m)));
                }
                for (const auto& s : gs) rep.append(verify_solution_isomorphism(a, s), "G = " + format_set(a.p.T, s) + " ");
                return runner.report("verify-twin", rep, {{"size", a.J.size()}, {"solutions_checked", gs.size()}});
            };
        });
    }
    {
        auto* c = app.add_subcommand("iso-search", "Search for an isomorphism between two structures");
        c->add_option("M1", struct_path)->required();
        c->add_option("M2", second_path)->required();
        c->callback([&]() {
            action = [&]() {
                auto m1 = io::structure_from_json(io::read_file(struct_path));
                auto m2 = io::structure_from_json(io::read_file(second_path));
                auto f = search_isomorphism(m1, m2);
                json fields = json::object();
                std::string text;
                if (f) {
                    fields["isomorphism"] = *f;
                    text = "isomorphism: " + json(*f).dump() + "\n";
                } else {
                    fields["result"] = "NotFound";
                    text = "NotFound\n";
                }
                return runner.verdict("iso-search", f.has_value(), fields, text);
            };
        });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Holds : UsageError;
    }
    try {
        return action();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::BudgetExceeded ? BudgetHit : UsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
}

} // namespace twinforge::cli
