#include <doctest.h>

#include "rategraph/verify.hpp"

// The randomized property suites double as library tests; any failure prints
// the check name and its counterexample detail.
TEST_CASE("property suites") {
    for (const auto& suite : rategraph::verify::suite_names()) {
        if (suite == "all") {
            continue;
        }
        for (const auto& result : rategraph::verify::run_suite(suite)) {
            INFO(result.name << ": " << result.detail);
            CHECK(result.passed);
        }
    }
}
