#pragma once

#include <functional>
#include <string>
#include <vector>

namespace aztec {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool fast = true;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    bool fast_only = false;
    std::vector<int> only;  // empty means all
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace aztec
