#pragma once

#include <string>
#include <vector>

namespace ddopt {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;
};

struct CriterionInfo {
    int id;
    std::string name;
    double time_limit;  // seconds
};

const std::vector<CriterionInfo>& acceptance_criteria();

// Runs one criterion end-to-end; pass includes the runtime limit. Never throws: failures and
// exceptions are reported in the result.
CriterionResult run_criterion(int id);
// Accepts a criterion name or its number.
CriterionResult run_criterion(const std::string& name_or_id);

// One line: "[PASS] 4 sg-noise-ball (0.41 s): detail".
std::string format_result(const CriterionResult& r);

}  // namespace ddopt
