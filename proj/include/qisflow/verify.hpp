#pragma once

// Randomized checks of the geometric identities, as run by `qisflow verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qisflow {

struct CheckResult {
    std::string identity;
    double max_error = 0.0;
    double tolerance = 0.0;
    int cases = 0;

    bool passed() const { return max_error < tolerance; }
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// "metric", "isometry", "gradient", "lift" and "all".
const std::vector<std::string>& suite_names();

/// Runs a suite with `count` random cases drawn from `seed`. Throws
/// ContractError for an unknown suite name or non-positive count.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, int count);

}  // namespace qisflow
