#include "ddopt/harness/acceptance.hpp"

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    std::vector<ddopt::CriterionResult> results;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) results.push_back(ddopt::run_criterion(std::string(argv[i])));
    } else {
        for (const auto& c : ddopt::acceptance_criteria()) results.push_back(ddopt::run_criterion(c.id));
    }
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s\n", ddopt::format_result(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
