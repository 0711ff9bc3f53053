#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashcover {

// Agent subsets are canonical everywhere: strictly increasing 0-based indices.
using AgentSet = std::vector<int>;

struct invalid_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsatisfiable_family_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct enumeration_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal-consistency violations (coverage accounting, iteration guard).
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline AgentSet canonical(AgentSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool is_canonical(const AgentSet& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

inline bool set_contains(const AgentSet& s, int agent) {
    return std::binary_search(s.begin(), s.end(), agent);
}

inline void check_agent_range(const AgentSet& s, int n, const char* what) {
    for (int a : s) {
        if (a < 0 || a >= n)
            throw invalid_input_error(std::string(what) + ": agent index " +
                                      std::to_string(a) + " outside [0," +
                                      std::to_string(n) + ")");
    }
}

// Lexicographic order on canonical sets; a proper prefix sorts first,
// so {} < {0} < {0,1} < {1}.
inline bool lex_less(const AgentSet& a, const AgentSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace nashcover
