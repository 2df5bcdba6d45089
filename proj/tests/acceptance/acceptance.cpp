#include <iostream>

#include "toral/verify.hpp"

int main() {
    namespace v = toral::verify;
    int failed = 0;
    for (const auto& c : v::criteria()) {
        const v::CheckResult r = v::run_criterion(c.id);
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " (" << r.seconds
                  << " s)";
        if (!r.detail.empty()) std::cout << " - " << r.detail;
        std::cout << std::endl;
        failed += !r.passed;
    }
    std::cout << failed << " of " << v::criteria().size() << " criteria failed\n";
    return failed ? 1 : 0;
}
