#pragma once

#include <string>
#include <vector>

namespace rategraph::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Named property suites over seeded random instances. Deterministic.
//   stirling      coefficient-table identities
//   graph         connectivity / matching / tabloidal-set properties
//   forest        closed forms vs. the lattice oracle, telescoping, unit-rate path
//   derandomized  fixed-time identities vs. sweep simulation
//   assignment    numerators vs. brute force, k-assignment expectations, both 2-assignment forms
//   oracles       oracle self-checks (level sums, Monte Carlo agreement)
//   invariance    scaling, monotonicity in k, relabeling invariance
//   all           everything above
std::vector<std::string> suite_names();

// Throws ValidationError for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace rategraph::verify
