#pragma once

#include <cstdint>

namespace ebc {

// Limits for the exhaustive searches. A search that reaches either limit
// reports "undecided" with the bounds it has proved so far.
struct SearchBudget {
    // Memoized search states (failed product sets) kept at once.
    std::uint64_t max_states = std::uint64_t{1} << 26;
    // Wall-clock limit in seconds; 0 disables it.
    double max_seconds = 0.0;
    // Unit groups of at most this order are searched without the state cap.
    std::uint64_t uncapped_group_order = 24;
};

struct SearchStats {
    std::uint64_t nodes = 0;   // DFS nodes expanded
    std::uint64_t states = 0;  // memo entries at the end
    double seconds = 0.0;
};

}  // namespace ebc
