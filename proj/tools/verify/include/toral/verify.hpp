#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toral::verify {

struct Options {
    std::uint64_t seed = 1;
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    double time_limit = 0;  // 0 when the criterion has no runtime bound
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;
};

const std::vector<Criterion>& criteria();

// Runs one acceptance criterion. A criterion with a runtime bound fails when
// it finishes late even if every numeric check passed.
CheckResult run_criterion(int id, const Options& opt = {});
std::vector<CheckResult> run_all(const Options& opt = {});

}  // namespace toral::verify
