#pragma once

#include <cstdint>
#include <string>

namespace homexp {

// Work caps shared by the counting and enumeration routines.  All exact
// operations estimate their work up front and throw resource_error naming
// the violated cap instead of starting an over-budget computation.
struct Budget {
    // Maximum number of maps a brute-force homomorphism enumeration may
    // visit (|V(H)|^{|V(F)|}).
    std::uint64_t map_cap = 100'000'000;
    // Maximum number of members a subgraph-family enumeration may emit.
    std::uint64_t enum_cap = 10'000'000;
    // Maximum number of entries in any single dynamic-programming table.
    std::uint64_t table_cap = 4'000'000;
    // Maximum number of states of a transfer operator (|V(H)|^m).
    std::uint64_t transfer_cap = 100'000;
};

// Returns the default budget, with the map cap optionally overridden by the
// HOMEXP_BUDGET environment variable.
Budget default_budget();

// Run-wide configuration threaded through the CLI.
struct RunConfig {
    bool exact = false;          // rational arithmetic instead of double
    std::uint64_t seed = 0;      // master seed for randomized estimators
    int threads = 0;             // 0 = library default
    std::string format = "plain";  // "plain" or "csv"
    Budget budget;
};

}  // namespace homexp
