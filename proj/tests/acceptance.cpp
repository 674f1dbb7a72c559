// Acceptance suite: runs every verification criterion at its stated budget and
// prints one pass/fail line per criterion. Exit code is the number of failures.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "stabverify/battery.hpp"

using namespace sv;

int main() {
    // wall-clock budgets per criterion, in seconds
    const double budget_s[kCriterionCount] = {60, 300, 30, 300, 120, 300,
                                              600, 600, 60, 1200, 600, 120};
    int failures = 0;
    double total_ms = 0;
    for (int id = 1; id <= kCriterionCount; ++id) {
        CriterionResult res;
        try {
            res = run_criterion(id);
        } catch (const std::exception& e) {
            std::printf("[%2d/%d] FAIL  criterion crashed: %s\n", id, kCriterionCount, e.what());
            ++failures;
            continue;
        }
        total_ms += res.wall_ms;
        const bool in_budget = res.wall_ms <= budget_s[id - 1] * 1000.0;
        const bool ok = res.pass && in_budget;
        std::printf("[%2d/%d] %s  %s  (%.1f s%s)\n", id, kCriterionCount, ok ? "PASS" : "FAIL",
                    res.title.c_str(), res.wall_ms / 1000.0,
                    in_budget ? "" : ", OVER BUDGET");
        if (!res.pass)
            for (const auto& r : res.records)
                if (r.status == "fail")
                    std::printf("        - %s: %s\n", r.name.c_str(), r.witness.c_str());
        if (!ok) ++failures;
    }
    std::printf("RESULT: %d/%d criteria passed (%.1f s total)\n", kCriterionCount - failures,
                kCriterionCount, total_ms / 1000.0);
    return failures;
}
