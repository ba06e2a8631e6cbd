#pragma once

#include <cstddef>
#include <vector>

#include "des/ops.hpp"

namespace des {

// Shortest-then-lexicographic order on traces; gives deterministic witnesses.
struct TraceLess {
    bool operator()(const std::vector<EventId>& a, const std::vector<EventId>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Exact closed and marked string sets up to max_len, stored sorted unique.
struct BoundedLanguage {
    int max_len = 0;
    std::vector<std::vector<EventId>> closed;
    std::vector<std::vector<EventId>> marked;

    bool contains_closed(const std::vector<EventId>& s) const;
    bool contains_marked(const std::vector<EventId>& s) const;
};

inline constexpr std::size_t kDefaultOracleBudget = 10'000'000;

// Transition replay, breadth first. Throws ResourceError when the number of
// closed strings would exceed the budget; never silently truncates.
BoundedLanguage enumerate_language(const Generator& g, int max_len,
                                   std::size_t budget = kDefaultOracleBudget);

struct OracleResult {
    bool equal = false;
    std::optional<StringTrace> witness;  // shortest, then lexicographic
};

// Bounded closed- and marked-language equality by enumeration.
OracleResult oracle_equal(const Generator& a, const Generator& b, int max_len,
                          std::size_t budget = kDefaultOracleBudget);

}  // namespace des
