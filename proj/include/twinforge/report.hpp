#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twinforge {

enum class Verdict { Pass, Fail, Info, Skip };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Info: return "info";
    case Verdict::Skip: return "skip";
    }
    return "?";
}

struct ClauseResult {
    std::string clause;
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

/// Ordered list of clause verdicts; holds() ignores Info and Skip lines.
struct ClauseReport {
    std::string subject;
    std::vector<ClauseResult> clauses;

    ClauseReport& add(std::string clause, bool ok, std::string detail = {}) {
        clauses.push_back({std::move(clause), ok ? Verdict::Pass : Verdict::Fail, std::move(detail)});
        return *this;
    }
    ClauseReport& info(std::string clause, std::string detail) {
        clauses.push_back({std::move(clause), Verdict::Info, std::move(detail)});
        return *this;
    }
    ClauseReport& skip(std::string clause, std::string detail) {
        clauses.push_back({std::move(clause), Verdict::Skip, std::move(detail)});
        return *this;
    }

    bool holds() const {
        for (const auto& c : clauses)
            if (c.verdict == Verdict::Fail) return false;
        return true;
    }

    const ClauseResult* find(const std::string& clause) const {
        for (const auto& c : clauses)
            if (c.clause == clause) return &c;
        return nullptr;
    }

    bool passed(const std::string& clause) const {
        const auto* c = find(clause);
        return c != nullptr && c->verdict == Verdict::Pass;
    }
    bool failed(const std::string& clause) const {
        const auto* c = find(clause);
        return c != nullptr && c->verdict == Verdict::Fail;
    }

    void append(const ClauseReport& other, const std::string& prefix = {}) {
        for (auto c : other.clauses) {
            c.clause = prefix + c.clause;
            clauses.push_back(std::move(c));
        }
    }

    std::string text() const {
        std::string out = subject.empty() ? std::string() : subject + "\n";
        for (const auto& c : clauses) {
            out += "  [" + std::string(to_string(c.verdict)) + "] " + c.clause;
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
        out += holds() ? "result: holds\n" : "result: fails\n";
        return out;
    }

    nlohmann::json json() const {
        nlohmann::json j;
        j["subject"] = subject;
        j["holds"] = holds();
        j["clauses"] = nlohmann::json::array();
        for (const auto& c : clauses)
            j["clauses"].push_back({{"clause", c.clause}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
        return j;
    }
};

} // namespace twinforge
