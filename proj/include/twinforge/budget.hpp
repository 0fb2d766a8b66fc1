#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "error.hpp"

namespace twinforge {

/// Step counter shared by the exhaustive searches. Exhaustion throws BudgetExceeded.
class Budget {
public:
    explicit Budget(std::uint64_t limit = default_limit()) : limit_(limit) {}

    static Budget unlimited() { return Budget(std::numeric_limits<std::uint64_t>::max()); }

    /// TWINFORGE_BUDGET overrides the default of 5e8 steps.
    static std::uint64_t default_limit() {
        if (const char* env = std::getenv("TWINFORGE_BUDGET")) {
            try {
                return std::stoull(env);
            } catch (...) {
            }
        }
        return 500'000'000ULL;
    }

    void tick(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_)
            throw Error(ErrorKind::BudgetExceeded, "search budget of " + std::to_string(limit_) + " steps exhausted");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

} // namespace twinforge
