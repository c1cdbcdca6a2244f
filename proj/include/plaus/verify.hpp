#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plaus::verify {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;  // one per failure, capped

    bool passed() const { return failures == 0; }
    void merge(const SuiteResult& o);
};

// Seeded property suites over the module invariants. `cases` bounds the
// number of generated instances per family.
SuiteResult run_algebra(std::uint64_t seed, int cases);
SuiteResult run_baseline(std::uint64_t seed, int cases);
SuiteResult run_network(std::uint64_t seed, int cases);

}  // namespace plaus::verify
