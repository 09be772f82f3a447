#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncsym/json_io.hpp"

namespace ncsym {

/// Outcome of one acceptance criterion. `measured` is the deciding statistic (a worst-case
/// residual, or the witness residual for criterion 1) compared with `threshold` by `comparison`.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string comparison = "<=";
    std::string detail;
    /// Wall time; kept out of the JSON so reports stay byte-stable.
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

/// Short names indexed by id - 1.
const std::vector<std::string>& criterion_names();

/// Runs criterion `id` (1..11) from the root seed. Criterion 12 needs the whole battery, see run_suite.
CriterionResult run_criterion(int id, std::uint64_t seed);

struct SuiteConfig {
    std::uint64_t seed = 1;
    /// Criteria to run, ascending; empty selection is rejected.
    std::vector<int> only{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
};

/// Runs the selected criteria. Criterion 12 reruns the other selected criteria and compares
/// the serialized reports byte for byte.
std::vector<CriterionResult> run_suite(const SuiteConfig& config);

Json suite_to_json(std::uint64_t seed, const std::vector<CriterionResult>& results);

}  // namespace ncsym
